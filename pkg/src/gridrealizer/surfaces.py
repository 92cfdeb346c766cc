"""Triangulated surfaces as abstract simplicial 2-complexes.

Vertices are labeled 1..n in all public interfaces (matching the usual
published facet lists); internally facets are stored 0-based, each
triple sorted ascending and the facet list sorted lexicographically, so
equal complexes compare and hash equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class TriangulationError(ValueError):
    """A facet list that does not satisfy the basic invariants."""


class NotClosedError(ValueError):
    """An operation that needs a closed surface got something else."""


@dataclass(frozen=True)
class Triangulation:
    """An abstract simplicial 2-complex given by triangular facets.

    ``facets`` holds internal 0-based vertex ids; external ids are
    internal + 1.  Instances are immutable and safe to share.
    """

    n: int
    facets: tuple[tuple[int, int, int], ...]
    name: Optional[str] = None

    @staticmethod
    def from_facets(facets: Iterable[Sequence[int]], name: Optional[str] = None) -> "Triangulation":
        """Build from external 1-based facet triples, validating invariants."""
        canon = []
        for f in facets:
            if len(f) != 3:
                raise TriangulationError(f"facet {f!r} does not have 3 vertices")
            a, b, c = f
            for v in (a, b, c):
                if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                    raise TriangulationError(f"bad vertex id {v!r} in facet {f!r}")
            if a == b or a == c or b == c:
                raise TriangulationError(f"facet {tuple(f)} has a repeated vertex")
            canon.append(tuple(sorted((a - 1, b - 1, c - 1))))
        if not canon:
            raise TriangulationError("empty facet list")
        canon.sort()
        for i in range(1, len(canon)):
            if canon[i] == canon[i - 1]:
                ext = tuple(v + 1 for v in canon[i])
                raise TriangulationError(f"duplicate facet {ext}")
        n = max(v for f in canon for v in f) + 1
        used = {v for f in canon for v in f}
        if len(used) != n:
            missing = sorted(set(range(n)) - used)
            ext = [v + 1 for v in missing]
            raise TriangulationError(f"vertex ids {ext} unused (ids must be 1..n)")
        return Triangulation(n=n, facets=tuple(canon), name=name)

    @staticmethod
    def from_internal(facets: Iterable[Sequence[int]], name: Optional[str] = None) -> "Triangulation":
        """Build from 0-based facet triples (relabel-free fast path)."""
        return Triangulation.from_facets(
            [(a + 1, b + 1, c + 1) for a, b, c in facets], name=name
        )

    @property
    def external_facets(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(tuple(v + 1 for v in f) for f in self.facets)

    def relabeled(self, perm: Sequence[int]) -> "Triangulation":
        """Apply an internal permutation (perm[old] = new)."""
        return Triangulation.from_internal(
            [tuple(perm[v] for v in f) for f in self.facets], name=self.name
        )


def edge_set(t: Triangulation) -> tuple[tuple[int, int], ...]:
    """All edges (internal ids, a < b), sorted."""
    edges = set()
    for a, b, c in t.facets:
        edges.add((a, b))
        edges.add((a, c))
        edges.add((b, c))
    return tuple(sorted(edges))


def edge_facet_degrees(t: Triangulation) -> dict[tuple[int, int], int]:
    deg: dict[tuple[int, int], int] = {}
    for a, b, c in t.facets:
        for e in ((a, b), (a, c), (b, c)):
            deg[e] = deg.get(e, 0) + 1
    return deg


@dataclass(frozen=True)
class LinkResult:
    """The link of a vertex: a single cycle, or a reason why not.

    ``order`` lists the neighbors (external ids) in cyclic order when
    the link is a cycle, starting at the smallest neighbor and heading
    toward its smaller link-neighbor.
    """

    vertex: int
    is_cycle: bool
    order: Optional[tuple[int, ...]] = None
    reason: Optional[str] = None


def vertex_link(t: Triangulation, v: int) -> LinkResult:
    """Link of external vertex v induced by the facets containing it."""
    if not 1 <= v <= t.n:
        raise ValueError(f"vertex {v} not in 1..{t.n}")
    vi = v - 1
    adj: dict[int, list[int]] = {}
    nedges = 0
    for f in t.facets:
        if vi in f:
            a, b = [x for x in f if x != vi]
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
            nedges += 1
    if not adj:
        raise ValueError(f"vertex {v} is unused")
    if any(len(nb) > 2 for nb in adj.values()):
        return LinkResult(v, False, reason="branching: a link vertex on >2 link edges")
    if nedges != len(adj):
        # fewer edges than vertices: open path(s) or isolated pieces
        return LinkResult(v, False, reason="path, not cycle")
    # nedges == #vertices and max degree 2 -> disjoint cycles; connected?
    start = min(adj)
    order = [start]
    prev = None
    cur = start
    while True:
        nbs = adj[cur]
        if prev is None:
            nxt = min(nbs)
        else:
            nxt = nbs[0] if nbs[1] == prev else nbs[1]
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    if len(order) != len(adj):
        return LinkResult(v, False, reason="disconnected link")
    return LinkResult(v, True, order=tuple(x + 1 for x in order))


@dataclass(frozen=True)
class SurfaceInfo:
    """Combinatorial classification of a complex.

    ``orientable`` and ``genus`` are None unless the complex is a
    closed surface.
    """

    V: int
    E: int
    F: int
    chi: int
    closed: bool
    connected: bool
    orientable: Optional[bool] = None
    genus: Optional[int] = None
    reason: Optional[str] = None


def _facet_graph_connected(t: Triangulation) -> bool:
    by_edge: dict[tuple[int, int], list[int]] = {}
    for i, (a, b, c) in enumerate(t.facets):
        for e in ((a, b), (a, c), (b, c)):
            by_edge.setdefault(e, []).append(i)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        a, b, c = t.facets[i]
        for e in ((a, b), (a, c), (b, c)):
            for j in by_edge[e]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(seen) == len(t.facets)


def validate_closed_surface(t: Triangulation) -> SurfaceInfo:
    """Classify: closed iff every edge has exactly 2 facets, every link
    is a single cycle, and the facet-adjacency graph is connected."""
    deg = edge_facet_degrees(t)
    V, E, F = t.n, len(deg), len(t.facets)
    chi = V - E + F
    connected = _facet_graph_connected(t)
    bad_edges = [e for e, d in deg.items() if d != 2]
    reason = None
    closed = True
    if bad_edges:
        closed = False
        e = min(bad_edges)
        reason = (
            f"edge ({e[0] + 1},{e[1] + 1}) lies in {deg[e]} facet(s), not 2"
            + (f" ({len(bad_edges)} such edges)" if len(bad_edges) > 1 else "")
        )
    if closed:
        for v in range(1, t.n + 1):
            link = vertex_link(t, v)
            if not link.is_cycle:
                closed = False
                reason = f"link of vertex {v}: {link.reason}"
                break
    if closed and not connected:
        closed = False
        reason = "facet-adjacency graph is disconnected"
    orientable = genus = None
    if closed:
        orientable, genus = orientability_and_genus(t, _trust_closed=True)
    return SurfaceInfo(
        V=V, E=E, F=F, chi=chi, closed=closed, connected=connected,
        orientable=orientable, genus=genus, reason=reason,
    )


def orientability_and_genus(t: Triangulation, _trust_closed: bool = False) -> tuple[bool, int]:
    """Propagate facet orientations across shared edges.

    Raises NotClosedError when the complex is not a closed surface.
    """
    if not _trust_closed:
        info = validate_closed_surface(t)
        if not info.closed:
            raise NotClosedError(f"not a closed surface: {info.reason}")
        return info.orientable, info.genus
    by_edge: dict[tuple[int, int], list[int]] = {}
    for i, (a, b, c) in enumerate(t.facets):
        for e in ((a, b), (a, c), (b, c)):
            by_edge.setdefault(e, []).append(i)
    # Orientation of facet (a,b,c) as +1 for cyclic order a->b->c->a.
    # Two facets sharing edge (x,y) are consistent when they traverse it
    # in opposite directions.
    sign = {0: 1}
    stack = [0]
    orientable = True
    while stack and orientable:
        i = stack.pop()
        a, b, c = t.facets[i]
        for x, y in ((a, b), (b, c), (a, c)):
            e = (x, y) if x < y else (y, x)
            for j in by_edge[e]:
                if j == i:
                    continue
                rel = -1 if _traverses_same_direction(t.facets[i], t.facets[j], e) else 1
                want = sign[i] * rel
                if j in sign:
                    if sign[j] != want:
                        orientable = False
                        break
                else:
                    sign[j] = want
                    stack.append(j)
            if not orientable:
                break
    chi = t.n - len(by_edge) + len(t.facets)
    genus = (2 - chi) // 2 if orientable else 2 - chi
    return orientable, genus


def _traverses_same_direction(f1, f2, e) -> bool:
    def direction(f, e):
        a, b, c = f
        cyc = ((a, b), (b, c), (c, a))
        if e in cyc:
            return 1
        return -1  # reversed edge appears in the cycle

    return direction(f1, e) == direction(f2, e)


def heawood_bound(chi: int, orientable: bool) -> int:
    """Minimum vertex count for triangulating a closed surface with
    Euler characteristic chi, computed in exact integer arithmetic.

    The three exceptional surfaces (orientable genus 2, Klein bottle,
    non-orientable genus 3) need one extra vertex.
    """
    if chi > 2:
        raise ValueError(f"no closed surface has chi = {chi} > 2")
    if orientable and chi % 2 != 0:
        raise ValueError(f"orientable surfaces have even chi, got {chi}")
    radicand = 49 - 24 * chi
    r = math.isqrt(radicand)
    if r * r < radicand:
        r += 1
    bound = (7 + r + 1) // 2  # smallest integer >= (7 + sqrt(radicand)) / 2
    exceptional = (
        (chi == -2 and orientable)
        or (chi == 0 and not orientable)
        or (chi == -1 and not orientable)
    )
    return bound + 1 if exceptional else bound


@dataclass(frozen=True)
class InducedSubcomplex:
    """Facets and inherited edges of a vertex subset (external ids)."""

    vertices: tuple[int, ...]
    facets: tuple[tuple[int, int, int], ...]
    edges: tuple[tuple[int, int], ...]


def induced_subcomplex(t: Triangulation, subset: Iterable[int]) -> InducedSubcomplex:
    """Facets of t entirely inside ``subset`` plus all inherited edges.

    Inherited edges matter on their own: edge crossings must be checked
    even when neither endpoint completes a facet inside the subset.
    """
    svert = sorted(set(subset))
    for v in svert:
        if not 1 <= v <= t.n:
            raise ValueError(f"vertex {v} not in 1..{t.n}")
    sset = {v - 1 for v in svert}
    facets = tuple(
        tuple(v + 1 for v in f) for f in t.facets if all(v in sset for v in f)
    )
    edges = tuple(
        (a + 1, b + 1)
        for a, b in edge_set(t)
        if a in sset and b in sset
    )
    return InducedSubcomplex(vertices=tuple(svert), facets=facets, edges=edges)


# --- a few standard complexes used across tests, demos and docs ------------


def tetrahedron() -> Triangulation:
    return Triangulation.from_facets([[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])


def octahedron() -> Triangulation:
    return Triangulation.from_facets(
        [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 2],
            [6, 2, 3], [6, 3, 4], [6, 4, 5], [6, 5, 2],
        ]
    )


def seven_vertex_torus() -> Triangulation:
    """The unique 7-vertex torus: orbits {i, i+1, i+3} and {i, i+1, i+5}
    mod 7, shifted to labels 1..7."""
    facets = []
    for i in range(7):
        facets.append([i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1])
        facets.append([i % 7 + 1, (i + 1) % 7 + 1, (i + 5) % 7 + 1])
    return Triangulation.from_facets(facets, name="torus_7")


def projective_plane_six() -> Triangulation:
    """The 6-vertex real projective plane (icosahedron antipodal quotient)."""
    return Triangulation.from_facets(
        [
            [1, 2, 3], [1, 2, 4], [1, 3, 5], [1, 4, 6], [1, 5, 6],
            [2, 3, 6], [2, 4, 5], [2, 5, 6], [3, 4, 5], [3, 4, 6],
        ],
        name="rp2_6",
    )


def triangle_bipyramid() -> Triangulation:
    """5-vertex sphere: equator triangle 1,2,3 with apexes 4 and 5."""
    return Triangulation.from_facets(
        [[1, 2, 4], [1, 3, 4], [2, 3, 4], [1, 2, 5], [1, 3, 5], [2, 3, 5]]
    )
