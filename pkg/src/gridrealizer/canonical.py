"""Canonical labeling of triangulations.

The canonical form of a complex is the lexicographically smallest sorted
facet list over all vertex relabelings; two triangulations are
isomorphic iff their canonical forms are equal.

A full n! sweep is avoided by a branch-and-bound over label assignments
with a sorted lower-bound list, plus a structural shortcut when every
vertex link is a single cycle (the canonical root is then a vertex of
minimum degree and its link carries a fixed minimal "zigzag" labeling).
"""

from __future__ import annotations

from typing import Optional, Sequence

from gridrealizer.surfaces import Triangulation

Facets = tuple[tuple[int, int, int], ...]


def canonical_label(t: Triangulation) -> Facets:
    """Canonical facet list of ``t`` in external 1-based labels."""
    internal = canonical_internal(t.n, t.facets)
    return tuple(tuple(v + 1 for v in f) for f in internal)


def canonicalize(t: Triangulation) -> Triangulation:
    """A relabeled copy of ``t`` whose facet list is canonical."""
    return Triangulation.from_facets(canonical_label(t), name=t.name)


def are_isomorphic(a: Triangulation, b: Triangulation) -> bool:
    if a.n != b.n or len(a.facets) != len(b.facets):
        return False
    return canonical_internal(a.n, a.facets) == canonical_internal(b.n, b.facets)


# ---------------------------------------------------------------------------


def _link_cycles(n: int, facets: Facets) -> Optional[list[list[int]]]:
    """Per-vertex link cycles, or None if some link is not one cycle."""
    adj: list[dict[int, list[int]]] = [dict() for _ in range(n)]
    for a, b, c in facets:
        for v, x, y in ((a, b, c), (b, a, c), (c, a, b)):
            d = adj[v]
            d.setdefault(x, []).append(y)
            d.setdefault(y, []).append(x)
    cycles: list[list[int]] = []
    for v in range(n):
        d = adj[v]
        if not d or any(len(nb) != 2 for nb in d.values()):
            return None
        start = min(d)
        cyc = [start]
        prev, cur = None, start
        while True:
            u1, u2 = d[cur]
            nxt = u1 if u1 != prev else u2
            if nxt == start:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
        if len(cyc) != len(d):
            return None
        cycles.append(cyc)
    return cycles


def _zigzag_pattern(d: int) -> list[int]:
    """Labels 1..d in cycle order producing the minimal sorted edge list."""
    odds = list(range(1, d + 1, 2))
    evens = list(range(2, d + 1, 2))
    return odds + evens[::-1]


def canonical_internal(n: int, facets: Facets) -> Facets:
    """Canonical facet list in internal 0-based labels."""
    cycles = _link_cycles(n, facets)
    facets = tuple(sorted(facets))
    if cycles is None:
        return _bb_canonical(n, facets, roots=list(range(n)), prefixes=None)
    deg = [len(c) for c in cycles]
    dmin = min(deg)
    prefixes = []
    pattern = _zigzag_pattern(dmin)
    for v in range(n):
        if deg[v] != dmin:
            continue
        cyc = cycles[v]
        d = dmin
        for i in range(d):
            for step in (1, -1):
                assign = {v: 0}
                for k in range(d):
                    assign[cyc[(i + step * k) % d]] = pattern[k]
                prefixes.append(assign)
    return _bb_canonical(n, facets, roots=None, prefixes=prefixes)


def _bb_canonical(
    n: int,
    facets: Facets,
    roots: Optional[list[int]],
    prefixes: Optional[list[dict[int, int]]],
) -> Facets:
    nf = len(facets)
    vert_facets: list[list[int]] = [[] for _ in range(n)]
    for idx, f in enumerate(facets):
        for v in f:
            vert_facets[v].append(idx)
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for a, b, c in facets:
        neighbors[a].update((b, c))
        neighbors[b].update((a, c))
        neighbors[c].update((a, b))

    best: list[Optional[Facets]] = [None]

    def relabeled_full(new_of: list[int]) -> Facets:
        return tuple(
            sorted(tuple(sorted((new_of[a], new_of[b], new_of[c]))) for a, b, c in facets)
        )

    def bound_list(new_of: list[int], next_label: int) -> Facets:
        out = []
        for a, b, c in facets:
            labs = [new_of[a], new_of[b], new_of[c]]
            known = sorted(x for x in labs if x >= 0)
            miss = 3 - len(known)
            fill = list(range(next_label, next_label + miss))
            out.append(tuple(sorted(known + fill)))
        out.sort()
        return tuple(out)

    def descend(new_of: list[int], old_of: list[int], next_label: int) -> None:
        if next_label == n:
            full = relabeled_full(new_of)
            if best[0] is None or full < best[0]:
                best[0] = full
            return
        if best[0] is not None and bound_list(new_of, next_label) > best[0]:
            return
        cands = []
        for v in range(n):
            if new_of[v] < 0:
                key = sorted(new_of[u] for u in neighbors[v] if new_of[u] >= 0)
                cands.append((key, v))
        cands.sort()
        for _, v in cands:
            new_of[v] = next_label
            old_of.append(v)
            descend(new_of, old_of, next_label + 1)
            old_of.pop()
            new_of[v] = -1

    if prefixes is not None:
        for assign in prefixes:
            new_of = [-1] * n
            old_of = []
            for old, new in assign.items():
                new_of[old] = new
            descend(new_of, old_of, len(assign))
    else:
        for r in roots:
            new_of = [-1] * n
            new_of[r] = 0
            descend(new_of, [r], 1)
    assert best[0] is not None
    return best[0]
