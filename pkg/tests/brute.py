"""Independent brute-force enumerators used as census oracles.

Completely separate code paths from gridrealizer.census: subset sweeps
for n <= 6 and an unrooted lexicographic facet-list growth for n = 7.
Both deduplicate by canonical label at the end.
"""

from __future__ import annotations

from itertools import combinations

from gridrealizer.canonical import canonical_internal


def _closed_surface(n: int, facets: tuple) -> bool:
    """Direct definition check: all vertices used, every edge in exactly
    two facets, every link one cycle, facet graph connected."""
    used = set()
    edge_deg: dict[tuple, int] = {}
    for f in facets:
        used.update(f)
        for i in range(3):
            for j in range(i + 1, 3):
                e = (f[i], f[j]) if f[i] < f[j] else (f[j], f[i])
                edge_deg[e] = edge_deg.get(e, 0) + 1
    if len(used) != n:
        return False
    if any(d != 2 for d in edge_deg.values()):
        return False
    for v in range(n):
        adj: dict[int, list[int]] = {}
        for f in facets:
            if v in f:
                a, b = [x for x in f if x != v]
                adj.setdefault(a, []).append(b)
                adj.setdefault(b, []).append(a)
        if not adj or any(len(nb) != 2 for nb in adj.values()):
            return False
        start = min(adj)
        seen = {start}
        prev, cur = None, start
        while True:
            u1, u2 = adj[cur]
            nxt = u1 if u1 != prev else u2
            if nxt == start:
                break
            seen.add(nxt)
            prev, cur = cur, nxt
        if len(seen) != len(adj):
            return False
    # connectivity via shared edges
    by_edge: dict[tuple, list[int]] = {}
    for i, f in enumerate(facets):
        for a in range(3):
            for b in range(a + 1, 3):
                e = (f[a], f[b]) if f[a] < f[b] else (f[b], f[a])
                by_edge.setdefault(e, []).append(i)
    seen_f = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        f = facets[i]
        for a in range(3):
            for b in range(a + 1, 3):
                e = (f[a], f[b]) if f[a] < f[b] else (f[b], f[a])
                for j in by_edge[e]:
                    if j not in seen_f:
                        seen_f.add(j)
                        stack.append(j)
    return len(seen_f) == len(facets)


def brute_subset_enumerate(n: int) -> set:
    """Canonical forms of all closed surfaces on exactly n vertices by
    sweeping facet subsets (feasible for n <= 6)."""
    assert n <= 6
    triples = list(combinations(range(n), 3))
    max_edges = n * (n - 1) // 2
    out = set()
    for f_count in range(4, 2 * max_edges // 3 + 1, 2):
        for facets in combinations(triples, f_count):
            if _closed_surface(n, facets):
                out.add(canonical_internal(n, tuple(facets)))
    return out


def lexgrow_enumerate(n: int) -> set:
    """Canonical forms of all closed surfaces on exactly n vertices by
    growing sorted facet lists with closability pruning (ok for n <= 7).

    No symmetry reduction and no root pinning -- an algorithm
    structurally different from the production census.
    """
    triples = [tuple(t) for t in combinations(range(n), 3)]
    tri_edges = [
        ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])) for t in triples
    ]
    by_edge_idx: dict[tuple, list[int]] = {}
    for i, es in enumerate(tri_edges):
        for e in es:
            by_edge_idx.setdefault(e, []).append(i)
    max_f = 2 * (n * (n - 1) // 2) // 3
    out = set()
    edge_deg: dict[tuple, int] = {}
    chosen: list[int] = []

    def closable(last_idx: int) -> bool:
        # every open edge must admit a strictly later closing facet
        for e, d in edge_deg.items():
            if d != 1:
                continue
            ok = False
            for idx in by_edge_idx[e]:
                if idx <= last_idx:
                    continue
                t = triples[idx]
                c = t[0] + t[1] + t[2] - e[0] - e[1]
                e1 = (min(e[0], c), max(e[0], c))
                e2 = (min(e[1], c), max(e[1], c))
                if edge_deg.get(e1, 0) < 2 and edge_deg.get(e2, 0) < 2:
                    ok = True
                    break
            if not ok:
                return False
        return True

    def grow(start: int) -> None:
        if chosen and all(d == 2 for d in edge_deg.values()):
            # Edge-closed: any extension would glue a second closed piece
            # onto shared vertices and break the link condition.
            facets = tuple(triples[i] for i in chosen)
            if _closed_surface(n, facets):
                out.add(canonical_internal(n, facets))
            return
        if len(chosen) >= max_f:
            return
        for idx in range(start, len(triples)):
            es = tri_edges[idx]
            if any(edge_deg.get(e, 0) >= 2 for e in es):
                continue
            for e in es:
                edge_deg[e] = edge_deg.get(e, 0) + 1
            chosen.append(idx)
            if closable(idx):
                grow(idx + 1)
            chosen.pop()
            for e in es:
                edge_deg[e] -= 1
                if edge_deg[e] == 0:
                    del edge_deg[e]

    grow(0)
    return out
