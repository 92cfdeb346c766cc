"""Exact integer predicates for 3D lattice geometry.

Every classification here is decided by signs of integer determinants;
no floating point and no rounded arithmetic anywhere.  Intersection
points are never materialized (they are generally not lattice points);
callers get classifications only.

Coordinates are validated against ``MAX_COORD`` so the documented
exactness contract stays explicit even though Python integers would be
exact at any magnitude.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

Point = tuple[int, int, int]

#: Largest admissible coordinate magnitude for any predicate input.
MAX_COORD = 1 << 20


class GeometryError(ValueError):
    """Input outside a predicate's domain (degenerate or out of bounds)."""


def _as_point(p: Sequence[int]) -> Point:
    if len(p) != 3:
        raise GeometryError(f"point must have 3 coordinates, got {p!r}")
    x, y, z = p
    for c in (x, y, z):
        if not isinstance(c, int) or isinstance(c, bool):
            raise GeometryError(f"coordinates must be integers, got {p!r}")
        if abs(c) > MAX_COORD:
            raise GeometryError(
                f"coordinate magnitude {c} exceeds exactness bound {MAX_COORD}"
            )
    return (x, y, z)


def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross(u: Point, v: Point) -> Point:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot(u: Point, v: Point) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def orient3d(a: Sequence[int], b: Sequence[int], c: Sequence[int], d: Sequence[int]) -> int:
    """Sign of det[b-a; c-a; d-a]: 0 iff the four points are coplanar."""
    a = _as_point(a)
    b = _as_point(b)
    c = _as_point(c)
    d = _as_point(d)
    return _orient3d_raw(a, b, c, d)


def _orient3d_raw(a: Point, b: Point, c: Point, d: Point) -> int:
    ux, uy, uz = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    vx, vy, vz = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    wx, wy, wz = d[0] - a[0], d[1] - a[1], d[2] - a[2]
    det = (
        ux * (vy * wz - vz * wy)
        - uy * (vx * wz - vz * wx)
        + uz * (vx * wy - vy * wx)
    )
    return (det > 0) - (det < 0)


def collinear(a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> bool:
    """True iff (b-a) x (c-a) vanishes."""
    a = _as_point(a)
    b = _as_point(b)
    c = _as_point(c)
    return _cross(_sub(b, a), _sub(c, a)) == (0, 0, 0)


class SegSeg(enum.Enum):
    """How two closed segments meet."""

    DISJOINT = "disjoint"
    SHARED_ENDPOINT_ONLY = "shared_endpoint_only"
    CROSSING_POINT = "crossing_point"
    COLLINEAR_OVERLAP = "collinear_overlap"


class ConflictKind(enum.Enum):
    """Why a pair of simplices fails to meet exactly in its shared face."""

    TRANSVERSAL_CROSSING = "transversal_crossing"
    COPLANAR_PENETRATION = "coplanar_penetration"
    TOUCH_AT_NONSHARED_POINT = "touch_at_nonshared_point"


Segment = tuple[Point, Point]
Triangle = tuple[Point, Point, Point]


def segment_segment(s1: Segment, s2: Segment) -> SegSeg:
    """Exact classification of the intersection of two closed segments.

    ``SHARED_ENDPOINT_ONLY`` means the intersection is exactly one point
    and that point is an endpoint of both segments.  A T-contact
    (endpoint of one segment interior to the other) classifies as
    ``CROSSING_POINT``.
    """
    p1, q1 = (_as_point(s1[0]), _as_point(s1[1]))
    p2, q2 = (_as_point(s2[0]), _as_point(s2[1]))
    if p1 == q1 or p2 == q2:
        raise GeometryError("degenerate segment")
    d1 = _sub(q1, p1)
    d2 = _sub(q2, p2)
    r = _sub(p2, p1)
    n = _cross(d1, d2)
    if n == (0, 0, 0):
        # Parallel lines.
        if _cross(r, d1) != (0, 0, 0):
            return SegSeg.DISJOINT
        # Collinear: compare parameter intervals along d1.
        length = _dot(d1, d1)
        a = _dot(r, d1)
        b = a + _dot(d2, d1)
        lo2, hi2 = (a, b) if a <= b else (b, a)
        lo = max(0, lo2)
        hi = min(length, hi2)
        if lo > hi:
            return SegSeg.DISJOINT
        if lo < hi:
            return SegSeg.COLLINEAR_OVERLAP
        # Single contact point; on a common line it is an endpoint of both.
        return SegSeg.SHARED_ENDPOINT_ONLY
    if _dot(n, r) != 0:
        return SegSeg.DISJOINT  # skew lines
    # Coplanar, non-parallel: unique line intersection at parameters
    # t = t_num/den on s1 and s = s_num/den on s2, with den > 0.
    den = _dot(n, n)
    t_num = _dot(_cross(r, d2), n)
    s_num = _dot(_cross(r, d1), n)
    if t_num < 0 or t_num > den or s_num < 0 or s_num > den:
        return SegSeg.DISJOINT
    at_end1 = t_num == 0 or t_num == den
    at_end2 = s_num == 0 or s_num == den
    if at_end1 and at_end2:
        return SegSeg.SHARED_ENDPOINT_ONLY
    return SegSeg.CROSSING_POINT


def _dominant_axis(n: Point) -> int:
    ax, ay, az = abs(n[0]), abs(n[1]), abs(n[2])
    if ax >= ay and ax >= az:
        return 0
    if ay >= az:
        return 1
    return 2


def _project2(p: Point, axis: int) -> tuple[int, int]:
    if axis == 0:
        return (p[1], p[2])
    if axis == 1:
        return (p[2], p[0])
    return (p[0], p[1])


def _cross2(u: tuple[int, int], v: tuple[int, int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _tri2_ccw(tri2: tuple) -> tuple:
    a, b, c = tri2
    o = _cross2((b[0] - a[0], b[1] - a[1]), (c[0] - a[0], c[1] - a[1]))
    if o == 0:
        raise GeometryError("degenerate projected triangle")
    return tri2 if o > 0 else (a, c, b)


def _point_in_tri2(pt: tuple[int, int], tri2: tuple) -> bool:
    a, b, c = tri2  # CCW
    for r, s in ((a, b), (b, c), (c, a)):
        if _cross2((s[0] - r[0], s[1] - r[1]), (pt[0] - r[0], pt[1] - r[1])) < 0:
            return False
    return True


def _clip_seg_tri2(p: tuple, q: tuple, tri2: tuple):
    """Clip segment parameter range [0,1] against a CCW 2D triangle.

    Returns None (empty) or ((lo_num, lo_den), (hi_num, hi_den)) with
    positive denominators.  Pure integer arithmetic; parameters are kept
    as fractions and only ever compared by cross-multiplication.
    """
    lo_n, lo_d = 0, 1
    hi_n, hi_d = 1, 1
    a, b, c = tri2
    for r, s in ((a, b), (b, c), (c, a)):
        e = (s[0] - r[0], s[1] - r[1])
        fa = _cross2(e, (p[0] - r[0], p[1] - r[1]))
        fb = _cross2(e, (q[0] - r[0], q[1] - r[1]))
        if fa < 0 and fb < 0:
            return None
        if fa < 0 <= fb:
            # satisfied for t >= (-fa) / (fb - fa)
            n_, d_ = -fa, fb - fa
            if n_ * lo_d > lo_n * d_:
                lo_n, lo_d = n_, d_
        elif fb < 0 <= fa:
            # satisfied for t <= fa / (fa - fb)
            n_, d_ = fa, fa - fb
            if n_ * hi_d < hi_n * d_:
                hi_n, hi_d = n_, d_
    if lo_n * hi_d > hi_n * lo_d:
        return None
    return (lo_n, lo_d), (hi_n, hi_d)


def _validate_shared_seg_tri(seg: Segment, tri: Triangle, shared: Sequence[Point]) -> frozenset:
    shared_set = frozenset(shared)
    endpoints = set(seg)
    corners = set(tri)
    actual = endpoints & corners
    if shared_set != actual:
        raise GeometryError(
            f"declared shared points {sorted(shared_set)} do not match the "
            f"actual common points {sorted(actual)}"
        )
    return shared_set


def segment_triangle(
    seg: Segment,
    tri: Triangle,
    shared: Iterable[Sequence[int]] = (),
) -> Optional[ConflictKind]:
    """Check that a closed segment meets a closed triangle exactly in
    the convex hull of the declared shared points.

    Returns None when the contact is admissible, otherwise the kind of
    violation.  ``shared`` must list exactly the points that are both an
    endpoint of the segment and a corner of the triangle.
    """
    p, q = (_as_point(seg[0]), _as_point(seg[1]))
    a, b, c = (_as_point(tri[0]), _as_point(tri[1]), _as_point(tri[2]))
    if p == q:
        raise GeometryError("degenerate segment")
    normal = _cross(_sub(b, a), _sub(c, a))
    if normal == (0, 0, 0):
        raise GeometryError("degenerate triangle")
    shared_set = _validate_shared_seg_tri((p, q), (a, b, c), [_as_point(s) for s in shared])

    sp = _orient3d_raw(a, b, c, p)
    sq = _orient3d_raw(a, b, c, q)

    if sp != 0 and sq != 0:
        if sp == sq:
            return None  # both endpoints strictly on one side
        # Strict straddle: the open segment crosses the plane once.
        u1 = _orient3d_raw(p, q, a, b)
        u2 = _orient3d_raw(p, q, b, c)
        u3 = _orient3d_raw(p, q, c, a)
        has_pos = u1 > 0 or u2 > 0 or u3 > 0
        has_neg = u1 < 0 or u2 < 0 or u3 < 0
        if has_pos and has_neg:
            return None  # crossing point outside the closed triangle
        if u1 != 0 and u2 != 0 and u3 != 0:
            return ConflictKind.TRANSVERSAL_CROSSING
        # Crossing point on the triangle boundary; interior to the
        # segment, hence never a shared endpoint.
        return ConflictKind.TOUCH_AT_NONSHARED_POINT

    if sp == 0 and sq == 0:
        return _coplanar_seg_tri(p, q, (a, b, c), normal, shared_set)

    # Exactly one endpoint lies in the triangle's plane.
    on_plane = p if sp == 0 else q
    axis = _dominant_axis(normal)
    tri2 = _tri2_ccw(tuple(_project2(v, axis) for v in (a, b, c)))
    if not _point_in_tri2(_project2(on_plane, axis), tri2):
        return None
    if shared_set == {on_plane}:
        return None
    return ConflictKind.TOUCH_AT_NONSHARED_POINT


def _coplanar_seg_tri(
    p: Point,
    q: Point,
    tri: Triangle,
    normal: Point,
    shared_set: frozenset,
) -> Optional[ConflictKind]:
    axis = _dominant_axis(normal)
    p2, q2 = _project2(p, axis), _project2(q, axis)
    tri2 = _tri2_ccw(tuple(_project2(v, axis) for v in tri))
    interval = _clip_seg_tri2(p2, q2, tri2)
    if interval is None:
        if shared_set:
            raise GeometryError("shared point not on the triangle")
        return None
    (lo_n, lo_d), (hi_n, hi_d) = interval
    single = lo_n * hi_d == hi_n * lo_d
    if single:
        if len(shared_set) == 1:
            s = next(iter(shared_set))
            t_is_0 = lo_n == 0
            t_is_1 = lo_n == lo_d
            if (s == p and t_is_0) or (s == q and t_is_1):
                return None
        return ConflictKind.TOUCH_AT_NONSHARED_POINT
    if len(shared_set) == 2:
        # The segment is an edge of the triangle; the full edge is the
        # admissible intersection.
        return None
    return ConflictKind.COPLANAR_PENETRATION


def triangles_compatible(
    t1: Triangle,
    t2: Triangle,
    shared: Iterable[Sequence[int]] = (),
) -> Optional[ConflictKind]:
    """Check that two closed triangles meet exactly in the convex hull
    of their common corners (empty set, one corner, or one edge).

    Returns None when compatible.  Decided by the six edge-against-other-
    triangle tests; the coplanar overlap analysis lives inside
    :func:`segment_triangle`'s coplanar branch.
    """
    t1 = tuple(_as_point(v) for v in t1)
    t2 = tuple(_as_point(v) for v in t2)
    for tri in (t1, t2):
        if _cross(_sub(tri[1], tri[0]), _sub(tri[2], tri[0])) == (0, 0, 0):
            raise GeometryError("degenerate triangle")
    shared_set = frozenset(_as_point(s) for s in shared)
    actual = set(t1) & set(t2)
    if shared_set != actual:
        raise GeometryError(
            f"declared shared corners {sorted(shared_set)} do not match the "
            f"actual common corners {sorted(actual)}"
        )
    if len(shared_set) > 2:
        raise GeometryError("triangles share all three corners")
    # A strict piercing outranks a coplanar overlap outranks a touch, so a
    # violating pair reports the same kind regardless of edge order.
    severity = {
        ConflictKind.TRANSVERSAL_CROSSING: 2,
        ConflictKind.COPLANAR_PENETRATION: 1,
        ConflictKind.TOUCH_AT_NONSHARED_POINT: 0,
    }
    worst: Optional[ConflictKind] = None
    for edge_tri, other in ((t1, t2), (t2, t1)):
        corners = list(edge_tri)
        for i in range(3):
            u, v = corners[i], corners[(i + 1) % 3]
            edge_shared = [s for s in shared_set if s == u or s == v]
            kind = segment_triangle((u, v), other, edge_shared)
            if kind is ConflictKind.TRANSVERSAL_CROSSING:
                return kind
            if kind is not None and (worst is None or severity[kind] > severity[worst]):
                worst = kind
    return worst


@dataclass(frozen=True)
class GpViolation:
    """First failure of general position: a collinear triple or a
    coplanar quadruple, by indices into the input list."""

    kind: str  # "collinear" or "coplanar"
    indices: tuple[int, ...]


def general_position(points: Sequence[Sequence[int]]) -> Optional[GpViolation]:
    """None iff no 3 points are collinear and no 4 are coplanar.

    Reports the lexicographically first offending index tuple, scanning
    all triples before any quadruple.
    """
    pts = [_as_point(p) for p in points]
    seen: dict[Point, int] = {}
    for i, p in enumerate(pts):
        if p in seen:
            raise GeometryError(f"duplicate point {p} at indices {seen[p]} and {i}")
        seen[p] = i
    m = len(pts)
    for i in range(m):
        for j in range(i + 1, m):
            d = _sub(pts[j], pts[i])
            for k in range(j + 1, m):
                if _cross(d, _sub(pts[k], pts[i])) == (0, 0, 0):
                    return GpViolation("collinear", (i, j, k))
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                n = _cross(_sub(pts[j], pts[i]), _sub(pts[k], pts[i]))
                for l in range(k + 1, m):
                    if _dot(n, _sub(pts[l], pts[i])) == 0:
                        return GpViolation("coplanar", (i, j, k, l))
    return None
