"""Embedding checker: frozen verdicts, mode monotonicity, invariances,
and the exhaustive tetrahedron-in-the-unit-cube oracle comparison."""

import itertools
import random

import pytest

from gridrealizer.checking import (
    CheckReport,
    Embedding,
    RealizationMode,
    check_realization,
    strongest_mode,
)
from gridrealizer.surfaces import (
    NotClosedError,
    Triangulation,
    octahedron,
    seven_vertex_torus,
    tetrahedron,
    triangle_bipyramid,
)

from reference import ref_check_any

GP = RealizationMode.GENERAL_POSITION
PROPER = RealizationMode.PROPER
ANY = RealizationMode.ANY

UNIT_TETRA = {1: (0, 0, 0), 2: (1, 0, 0), 3: (0, 1, 0), 4: (0, 0, 1)}


def test_tetrahedron_unit_simplex_valid_gp():
    report = check_realization(tetrahedron(), UNIT_TETRA, GP)
    assert report.valid
    assert report.strongest_mode_satisfied == GP
    assert report.violations == ()


def test_tetrahedron_coplanar_square_invalid():
    coords = {1: (0, 0, 0), 2: (1, 0, 0), 3: (0, 1, 0), 4: (1, 1, 0)}
    report = check_realization(tetrahedron(), coords, ANY)
    assert not report.valid
    assert report.strongest_mode_satisfied is None
    kinds = {v.kind for v in report.violations}
    assert "DegenerateFace" in kinds or "PairViolation" in kinds


def test_planted_coplanar_hinge():
    # Triangle bipyramid with the two apexes coplanar with hinge edge
    # (1,2): valid at ANY, CoplanarNeighbors at PROPER, quad at GP.
    t = triangle_bipyramid()
    coords = {1: (0, 0, 0), 2: (2, 0, 0), 3: (1, 0, 2), 4: (1, 1, 0), 5: (1, -1, 0)}
    assert check_realization(t, coords, ANY).valid
    rep_proper = check_realization(t, coords, PROPER)
    assert not rep_proper.valid
    assert any(v.kind == "CoplanarNeighbors" for v in rep_proper.violations)
    rep_gp = check_realization(t, coords, GP)
    assert not rep_gp.valid
    assert strongest_mode(t, coords) == ANY
    assert ref_check_any(t.external_facets, coords)


def test_strongest_mode_none_for_self_intersection():
    # Octahedron assignment where the vertex-disjoint facets (1,2,3) and
    # (4,5,6) cross; confirmed invalid by the rational reference.
    t = octahedron()
    coords = {
        1: (3, 0, 3),
        2: (0, 2, 2),
        3: (1, 0, 0),
        4: (1, 2, 0),
        5: (1, 0, 3),
        6: (2, 3, 2),
    }
    assert not ref_check_any(t.external_facets, coords)
    assert strongest_mode(t, coords) is None
    rep = check_realization(t, coords, ANY)
    pair = [v for v in rep.violations if v.kind == "PairViolation"]
    assert any(not set(v.details[0]) & set(v.details[1]) for v in pair)


def test_duplicate_point_detected():
    coords = dict(UNIT_TETRA)
    coords[4] = coords[1]
    rep = check_realization(tetrahedron(), coords, ANY)
    assert not rep.valid
    assert any(v.kind == "DuplicatePoint" for v in rep.violations)


def test_perturbation_sensitivity():
    # Moving any vertex onto another's point must produce DuplicatePoint.
    t = tetrahedron()
    for v in range(1, 5):
        for w in range(1, 5):
            if v == w:
                continue
            coords = dict(UNIT_TETRA)
            coords[v] = coords[w]
            rep = check_realization(t, coords, GP)
            assert any(x.kind == "DuplicatePoint" for x in rep.violations)


def test_partial_embedding_rejected():
    with pytest.raises(ValueError):
        check_realization(tetrahedron(), {1: (0, 0, 0)}, ANY)


def test_non_closed_rejected():
    t = Triangulation.from_facets([[1, 2, 3], [1, 2, 4], [1, 3, 4]])
    with pytest.raises(NotClosedError):
        check_realization(t, UNIT_TETRA, ANY)


def test_mode_monotonicity_random_embeddings():
    rng = random.Random(77)
    t = triangle_bipyramid()
    for _ in range(120):
        coords = {}
        pts = set()
        for v in range(1, 6):
            while True:
                p = (rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3))
                if p not in pts:
                    pts.add(p)
                    coords[v] = p
                    break
        ok_any = check_realization(t, coords, ANY).valid
        ok_proper = check_realization(t, coords, PROPER).valid
        ok_gp = check_realization(t, coords, GP).valid
        assert (not ok_gp or ok_proper) and (not ok_proper or ok_any)
        assert ok_any == ref_check_any(t.external_facets, coords)


def _grid_symmetries_e(e):
    for perm in itertools.permutations(range(3)):
        for flips in itertools.product((0, 1), repeat=3):
            yield perm, flips


def _apply_sym(perm, flips, e, p):
    q = (p[perm[0]], p[perm[1]], p[perm[2]])
    return tuple(e - q[i] if flips[i] else q[i] for i in range(3))


def test_grid_symmetry_invariance():
    t = triangle_bipyramid()
    coords = {1: (0, 0, 0), 2: (2, 0, 0), 3: (1, 0, 2), 4: (1, 1, 0), 5: (1, 2, 1)}
    base = strongest_mode(t, coords)
    for perm, flips in _grid_symmetries_e(2):
        moved = {v: _apply_sym(perm, flips, 2, p) for v, p in coords.items()}
        assert strongest_mode(t, moved) == base


def test_relabeling_invariance():
    rng = random.Random(31)
    t = triangle_bipyramid()
    coords = {1: (0, 0, 0), 2: (2, 0, 0), 3: (1, 0, 2), 4: (1, 1, 0), 5: (1, 2, 1)}
    base = strongest_mode(t, coords)
    for _ in range(10):
        perm = list(range(t.n))
        rng.shuffle(perm)
        t2 = t.relabeled(perm)
        coords2 = {perm[v - 1] + 1: p for v, p in coords.items()}
        assert strongest_mode(t2, coords2) == base


def test_embedding_dataclass_roundtrip():
    emb = Embedding.from_dict(UNIT_TETRA)
    assert emb.as_dict() == UNIT_TETRA
    rep = check_realization(tetrahedron(), emb, GP)
    assert rep.valid


def test_violation_cap():
    # All five vertices on a line: many violations, capped report.
    t = triangle_bipyramid()
    coords = {v: (v, 0, 0) for v in range(1, 6)}
    rep = check_realization(t, coords, GP, violation_cap=3)
    assert not rep.valid
    assert len(rep.violations) <= 3
    assert rep.truncated


def test_tetrahedron_all_unit_cube_placements_match_reference():
    """Exhaustive oracle: all 1680 injective placements of the
    tetrahedron into {0,1}^3 agree with the rational reference at ANY."""
    t = tetrahedron()
    cube = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    facets = t.external_facets
    n_checked = 0
    for placement in itertools.permutations(cube, 4):
        coords = {v + 1: placement[v] for v in range(4)}
        got = check_realization(t, coords, ANY).valid
        want = ref_check_any(facets, coords)
        assert got == want, coords
        n_checked += 1
    assert n_checked == 8 * 7 * 6 * 5
