"""Exact predicate tests: frozen cases plus agreement with the rational
reference on randomized and adversarial inputs."""

import itertools
import random

import pytest

from gridrealizer.predicates import (
    MAX_COORD,
    ConflictKind,
    GeometryError,
    SegSeg,
    collinear,
    general_position,
    orient3d,
    segment_segment,
    segment_triangle,
    triangles_compatible,
)

from reference import (
    ref_general_position_ok,
    ref_orient3d,
    ref_segment_segment,
    ref_segment_triangle_ok,
    ref_triangles_compatible_ok,
)


# --- orient3d -------------------------------------------------------------


def test_orient3d_unit_tetrahedron():
    assert orient3d((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)) == 1


def test_orient3d_coplanar_square():
    assert orient3d((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)) == 0


def test_orient3d_swap_negates():
    pts = [(0, 0, 0), (3, 1, 0), (0, 2, 5), (1, 1, 1)]
    base = orient3d(*pts)
    assert base != 0
    swapped = orient3d(pts[1], pts[0], pts[2], pts[3])
    assert swapped == -base


def _perm_parity(perm):
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return 1 if inv % 2 == 0 else -1


def test_orient3d_permutation_parity():
    rng = random.Random(7)
    for _ in range(30):
        pts = [tuple(rng.randint(-8, 8) for _ in range(3)) for _ in range(4)]
        base = orient3d(*pts)
        for perm in itertools.permutations(range(4)):
            assert orient3d(*(pts[i] for i in perm)) == _perm_parity(perm) * base


def test_orient3d_rejects_out_of_bounds():
    big = MAX_COORD + 1
    with pytest.raises(GeometryError):
        orient3d((big, 0, 0), (0, 0, 0), (0, 1, 0), (0, 0, 1))


def test_orient3d_accepts_bound_exactly():
    m = MAX_COORD
    assert orient3d((0, 0, 0), (m, 0, 0), (0, m, 0), (0, 0, m)) == 1


# --- collinear ------------------------------------------------------------


def test_collinear_cases():
    assert collinear((0, 0, 0), (1, 1, 1), (2, 2, 2))
    assert not collinear((0, 0, 0), (1, 0, 0), (0, 1, 0))
    assert collinear((0, 0, 0), (2, 4, 6), (3, 6, 9))


# --- segment / segment ----------------------------------------------------


def test_segment_segment_frozen_cases():
    assert (
        segment_segment(((0, 0, 0), (1, 0, 0)), ((0, 1, 0), (1, 1, 0)))
        == SegSeg.DISJOINT
    )
    assert (
        segment_segment(((0, 0, 0), (2, 2, 0)), ((0, 2, 0), (2, 0, 0)))
        == SegSeg.CROSSING_POINT
    )
    assert (
        segment_segment(((0, 0, 0), (2, 0, 0)), ((1, 0, 0), (3, 0, 0)))
        == SegSeg.COLLINEAR_OVERLAP
    )
    assert (
        segment_segment(((0, 0, 0), (1, 2, 3)), ((1, 2, 3), (4, 0, 0)))
        == SegSeg.SHARED_ENDPOINT_ONLY
    )
    # T-contact: endpoint of one interior to the other is a crossing.
    assert (
        segment_segment(((0, 0, 0), (4, 0, 0)), ((2, 0, 0), (2, 3, 0)))
        == SegSeg.CROSSING_POINT
    )
    # Skew lines.
    assert (
        segment_segment(((0, 0, 0), (1, 0, 0)), ((0, 0, 1), (0, 1, 1)))
        == SegSeg.DISJOINT
    )


def test_segment_segment_rejects_degenerate():
    with pytest.raises(GeometryError):
        segment_segment(((0, 0, 0), (0, 0, 0)), ((0, 1, 0), (1, 1, 0)))


# --- segment / triangle ---------------------------------------------------

TRI = ((2, 0, 0), (0, 2, 0), (0, 0, 2))


def test_segment_triangle_pierces_interior():
    assert (
        segment_triangle(((0, 0, 0), (2, 2, 2)), TRI)
        == ConflictKind.TRANSVERSAL_CROSSING
    )


def test_segment_triangle_above_plane():
    assert segment_triangle(((0, 0, 3), (1, 1, 3)), TRI) is None


def test_segment_triangle_shared_corner_pointing_away():
    assert segment_triangle(((2, 0, 0), (3, 0, 0)), TRI, shared=[(2, 0, 0)]) is None
    assert ref_segment_triangle_ok(((2, 0, 0), (3, 0, 0)), TRI, [(2, 0, 0)])


def test_segment_triangle_shared_corner_penetrating():
    # From the corner straight into the triangle's interior.
    seg = ((2, 0, 0), (0, 1, 1))
    kind = segment_triangle(seg, TRI, shared=[(2, 0, 0)])
    assert kind is not None
    assert not ref_segment_triangle_ok(seg, TRI, [(2, 0, 0)])


def test_segment_triangle_touch_at_nonshared_point():
    # Endpoint lands in the triangle's interior (2+1+1 = 4 is on the plane).
    seg = ((2, 1, 1), (5, 5, 5))
    tri = ((4, 0, 0), (0, 4, 0), (0, 0, 4))
    assert segment_triangle(seg, tri) == ConflictKind.TOUCH_AT_NONSHARED_POINT


def test_segment_triangle_coplanar_cases():
    tri = ((0, 0, 0), (4, 0, 0), (0, 4, 0))
    # Entirely inside the triangle's plane and interior: penetration.
    assert (
        segment_triangle(((1, 1, 0), (2, 1, 0)), tri)
        == ConflictKind.COPLANAR_PENETRATION
    )
    # Coplanar but fully outside.
    assert segment_triangle(((5, 5, 0), (6, 5, 0)), tri) is None
    # Along an edge without sharing endpoints: penetration.
    assert (
        segment_triangle(((1, 0, 0), (3, 0, 0)), tri)
        == ConflictKind.COPLANAR_PENETRATION
    )
    # Coplanar single-point touch at a corner that is not an endpoint.
    assert (
        segment_triangle(((-1, 1, 0), (1, -1, 0)), tri)
        == ConflictKind.TOUCH_AT_NONSHARED_POINT
    )


def test_segment_triangle_shared_validation():
    with pytest.raises(GeometryError):
        segment_triangle(((2, 0, 0), (3, 0, 0)), TRI)  # undeclared shared corner
    with pytest.raises(GeometryError):
        segment_triangle(((9, 9, 9), (8, 8, 9)), TRI, shared=[(2, 0, 0)])
    with pytest.raises(GeometryError):
        segment_triangle(((0, 0, 0), (1, 1, 1)), ((0, 0, 0), (1, 1, 1), (2, 2, 2)))


# --- triangle / triangle --------------------------------------------------


def test_triangles_compatible_shared_edge():
    t1 = ((0, 0, 0), (3, 0, 0), (0, 3, 0))
    t2 = ((0, 0, 0), (3, 0, 0), (0, 0, 3))
    assert triangles_compatible(t1, t2, shared=[(0, 0, 0), (3, 0, 0)]) is None


def test_triangles_compatible_coplanar_overlap():
    t1 = ((0, 0, 0), (2, 0, 0), (0, 2, 0))
    t2 = ((1, 1, 0), (3, 1, 0), (1, 3, 0))
    kind = triangles_compatible(t1, t2)
    assert kind is not None
    assert not ref_triangles_compatible_ok(t1, t2, [])


def test_triangles_compatible_transversal():
    t1 = ((0, 0, 0), (4, 0, 0), (0, 4, 0))
    t2 = ((1, 1, -1), (1, 1, 1), (3, 3, 1))
    assert triangles_compatible(t1, t2) == ConflictKind.TRANSVERSAL_CROSSING
    assert not ref_triangles_compatible_ok(t1, t2, [])


def test_triangles_compatible_disjoint():
    t1 = ((0, 0, 0), (1, 0, 0), (0, 1, 0))
    t2 = ((0, 0, 2), (1, 0, 2), (0, 1, 2))
    assert triangles_compatible(t1, t2) is None


def test_triangles_compatible_shared_corner_folded_flat():
    # Coplanar, sharing one corner, overlapping sectors.
    t1 = ((0, 0, 0), (4, 0, 0), (0, 4, 0))
    t2 = ((0, 0, 0), (4, 1, 0), (1, 4, 0))
    kind = triangles_compatible(t1, t2, shared=[(0, 0, 0)])
    assert kind is not None
    assert not ref_triangles_compatible_ok(t1, t2, [(0, 0, 0)])


def test_triangles_compatible_shared_corner_opposite():
    t1 = ((0, 0, 0), (4, 0, 0), (0, 4, 0))
    t2 = ((0, 0, 0), (-4, 0, 0), (0, -4, 0))
    assert triangles_compatible(t1, t2, shared=[(0, 0, 0)]) is None
    assert ref_triangles_compatible_ok(t1, t2, [(0, 0, 0)])


def test_triangles_compatible_coplanar_shared_edge_same_side():
    t1 = ((0, 0, 0), (4, 0, 0), (0, 4, 0))
    t2 = ((0, 0, 0), (4, 0, 0), (2, 3, 0))
    shared = [(0, 0, 0), (4, 0, 0)]
    assert triangles_compatible(t1, t2, shared=shared) is not None
    assert not ref_triangles_compatible_ok(t1, t2, shared)


def test_triangles_compatible_coplanar_shared_edge_opposite_side():
    t1 = ((0, 0, 0), (4, 0, 0), (0, 4, 0))
    t2 = ((0, 0, 0), (4, 0, 0), (2, -3, 0))
    shared = [(0, 0, 0), (4, 0, 0)]
    assert triangles_compatible(t1, t2, shared=shared) is None
    assert ref_triangles_compatible_ok(t1, t2, shared)


# --- general position -----------------------------------------------------


def test_general_position_cases():
    assert general_position([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]) is None
    v = general_position([(0, 0, 0), (1, 0, 0), (2, 0, 0)])
    assert v is not None and v.kind == "collinear" and v.indices == (0, 1, 2)
    v = general_position([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert v is not None and v.kind == "coplanar" and v.indices == (0, 1, 2, 3)
    with pytest.raises(GeometryError):
        general_position([(0, 0, 0), (0, 0, 0)])


# --- invariance under grid symmetries and translations ---------------------

SIGNED_PERMS = [
    (perm, signs)
    for perm in itertools.permutations(range(3))
    for signs in itertools.product((1, -1), repeat=3)
]


def _apply(g, p):
    perm, signs = g
    return tuple(signs[i] * p[perm[i]] for i in range(3))


def _apply_all(g, shift, pts):
    return [tuple(_apply(g, p)[i] + shift[i] for i in range(3)) for p in pts]


def _perm_det(g):
    perm, signs = g
    d = _perm_parity(perm)
    return d * signs[0] * signs[1] * signs[2]


def test_invariance_under_signed_permutations():
    rng = random.Random(20240)
    for _ in range(200):
        g = SIGNED_PERMS[rng.randrange(48)]
        shift = tuple(rng.randint(-5, 5) for _ in range(3))
        pts = [tuple(rng.randint(-8, 8) for _ in range(3)) for _ in range(6)]
        expect = orient3d(*pts[:4])
        moved = _apply_all(g, shift, pts)
        assert orient3d(*moved[:4]) == _perm_det(g) * expect
        assert collinear(*moved[:3]) == collinear(*pts[:3])
        s1, s2 = (pts[0], pts[1]), (pts[2], pts[3])
        if pts[0] != pts[1] and pts[2] != pts[3]:
            m1, m2 = (moved[0], moved[1]), (moved[2], moved[3])
            assert segment_segment(m1, m2) == segment_segment(s1, s2)
        gp = general_position(pts) if len(set(pts)) == 6 else None
        if len(set(pts)) == 6:
            moved_gp = general_position(moved)
            assert (gp is None) == (moved_gp is None)


# --- randomized agreement with the rational reference ----------------------


def _rand_point(rng, lo=-8, hi=8):
    return (rng.randint(lo, hi), rng.randint(lo, hi), rng.randint(lo, hi))


def _rand_tri(rng):
    while True:
        t = (_rand_point(rng), _rand_point(rng), _rand_point(rng))
        if not collinear(*t):
            return t


def _rand_seg(rng):
    while True:
        s = (_rand_point(rng), _rand_point(rng))
        if s[0] != s[1]:
            return s


def run_segment_segment_agreement(count, seed=1):
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(count):
        s1, s2 = _rand_seg(rng), _rand_seg(rng)
        if segment_segment(s1, s2).value != ref_segment_segment(s1, s2):
            mismatches += 1
    return mismatches


def run_segment_triangle_agreement(count, seed=2):
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(count):
        tri = _rand_tri(rng)
        seg = _rand_seg(rng)
        shared = set(seg) & set(tri)
        ok = segment_triangle(seg, tri, shared=shared) is None
        if ok != ref_segment_triangle_ok(seg, tri, shared):
            mismatches += 1
    return mismatches


def run_triangle_triangle_agreement(count, seed=3):
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(count):
        t1, t2 = _rand_tri(rng), _rand_tri(rng)
        shared = set(t1) & set(t2)
        if len(shared) == 3:
            continue
        ok = triangles_compatible(t1, t2, shared=shared) is None
        if ok != ref_triangles_compatible_ok(t1, t2, shared):
            mismatches += 1
    return mismatches


def run_orient_agreement(count, seed=4):
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(count):
        pts = [_rand_point(rng) for _ in range(4)]
        if orient3d(*pts) != ref_orient3d(*pts):
            mismatches += 1
    return mismatches


def run_gp_agreement(count, seed=5):
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(count):
        pts = []
        while len(pts) < 6:
            p = _rand_point(rng, -4, 4)
            if p not in pts:
                pts.append(p)
        if (general_position(pts) is None) != ref_general_position_ok(pts):
            mismatches += 1
    return mismatches


def test_random_agreement_smoke():
    assert run_orient_agreement(2000) == 0
    assert run_segment_segment_agreement(2000) == 0
    assert run_segment_triangle_agreement(1500) == 0
    assert run_triangle_triangle_agreement(800) == 0
    assert run_gp_agreement(300) == 0


# --- exhaustive corner-case suite ------------------------------------------


def corner_case_segment_triangle_suite():
    """Adversarial seg/tri pairs: shared endpoints, touches, coplanar
    overlaps, and near-degenerate sign patterns on a tiny grid."""
    tri = ((0, 0, 0), (4, 0, 0), (0, 4, 0))
    cases = []
    anchors = [
        (0, 0, 0),
        (4, 0, 0),
        (2, 0, 0),
        (2, 2, 0),
        (1, 1, 0),
        (2, 1, 0),
        (5, 5, 0),
        (0, 0, 2),
        (2, 2, 2),
        (-1, -1, -1),
        (4, 4, -1),
        (1, 1, -1),
        (1, 1, 1),
    ]
    for p in anchors:
        for q in anchors:
            if p != q:
                cases.append(((p, q), tri))
    return cases


def test_segment_triangle_corner_cases_match_reference():
    for seg, tri in corner_case_segment_triangle_suite():
        shared = set(seg) & set(tri)
        got = segment_triangle(seg, tri, shared=shared) is None
        want = ref_segment_triangle_ok(seg, tri, shared)
        assert got == want, (seg, tri, shared)


def corner_case_triangle_pairs():
    base = ((0, 0, 0), (4, 0, 0), (0, 4, 0))
    others = [
        ((0, 0, 0), (4, 0, 0), (0, 0, 4)),        # shared edge, folded up
        ((0, 0, 0), (4, 0, 0), (2, -3, 0)),       # shared edge, coplanar opposite
        ((0, 0, 0), (4, 0, 0), (2, 3, 0)),        # shared edge, coplanar same side
        ((0, 0, 0), (-4, 0, 0), (0, -4, 0)),      # shared corner, coplanar opposite
        ((0, 0, 0), (4, 1, 0), (1, 4, 0)),        # shared corner, coplanar overlap
        ((0, 0, 0), (0, 0, 4), (0, 4, 4)),        # shared corner, transverse plane
        ((1, 1, 0), (3, 1, 0), (1, 3, 0)),        # coplanar inside
        ((5, 5, 0), (9, 5, 0), (5, 9, 0)),        # coplanar far away
        ((1, 1, -1), (1, 1, 1), (3, 3, 1)),       # pierces interior
        ((0, 0, 1), (4, 0, 1), (0, 4, 1)),        # parallel planes
        ((2, 0, 0), (6, 0, 0), (2, -4, 0)),       # corner on edge interior, coplanar
        ((2, 0, 0), (2, 0, 4), (2, -4, 0)),       # shares a boundary point, vertical
        ((4, 0, 0), (0, 4, 0), (4, 4, 4)),        # shared edge is base's hypotenuse
        ((-4, 0, 0), (4, 0, 0), (0, 0, 4)),       # edge overlaps collinearly
    ]
    return [(base, t) for t in others]


def test_triangle_pair_corner_cases_match_reference():
    for t1, t2 in corner_case_triangle_pairs():
        shared = set(t1) & set(t2)
        got = triangles_compatible(t1, t2, shared=shared) is None
        want = ref_triangles_compatible_ok(t1, t2, shared)
        assert got == want, (t1, t2, shared)
