"""Isomorph-free exhaustive enumeration of triangulated closed surfaces.

Strategy: orderly generation.  Vertex 0 is pinned to minimum degree d
with its link fixed to the cycle (1, 2, ..., d); the complex then grows
by repeatedly closing the lexicographically smallest open edge, with new
vertices labeled in first-use order.  Every isomorphism class is reached
once per admissible (root vertex, directed link edge) choice; a finished
complex is accepted only when its own labeling is minimal among the
rooted relabelings of an isomorphism-invariant subset of those choices,
so each class is emitted exactly once.

Pruning: per-vertex link-completion lower bounds against the remaining
facet budget, minimum-degree consistency, and (for orientable-only runs)
incremental orientation propagation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

from gridrealizer.canonical import canonical_internal
from gridrealizer.surfaces import Triangulation


class InadmissibleConstraints(ValueError):
    """Constraints that no closed surface can meet."""


@dataclass(frozen=True)
class EnumerationConstraints:
    """Target vertex count with optional Euler characteristic and
    orientability filters.

    With chi fixed the facet and edge counts are forced:
    F = 2(n - chi), E = 3(n - chi).
    """

    vertex_count: int
    chi: Optional[int] = None
    orientable: Optional[bool] = None

    def facet_count(self) -> Optional[int]:
        if self.chi is None:
            return None
        n = self.vertex_count
        f = 2 * (n - self.chi)
        e = 3 * (n - self.chi)
        if f < 4 or e > n * (n - 1) // 2:
            raise InadmissibleConstraints(
                f"n={n}, chi={self.chi} forces F={f}, E={e}: impossible"
            )
        return f

    def validate(self) -> None:
        if self.vertex_count < 4:
            raise InadmissibleConstraints("closed surfaces need at least 4 vertices")
        if self.vertex_count > 15:
            raise InadmissibleConstraints("enumeration supports up to 15 vertices")
        if self.chi is not None:
            if self.chi > 2:
                raise InadmissibleConstraints(f"chi={self.chi} > 2")
            if self.orientable is True and self.chi % 2 != 0:
                raise InadmissibleConstraints("orientable surfaces have even chi")
            self.facet_count()


def _edge_key(a: int, b: int) -> int:
    return (a << 4) | b if a < b else (b << 4) | a


class _Census:
    """Mutable DFS engine for one root degree d0."""

    def __init__(self, n: int, d0: int, f_target: Optional[int], orientable: Optional[bool]):
        self.n = n
        self.d0 = d0
        self.f_target = f_target
        self.f_max = f_target if f_target is not None else (2 * (n * (n - 1) // 2)) // 3
        self.orientable = orientable
        self.facets: list[tuple[int, int, int]] = []
        self.edge_deg: dict[int, int] = {}
        self.edge_apex: dict[int, list[int]] = {}
        self.edge_first_facet: dict[int, int] = {}
        self.link_adj: list[dict[int, list[int]]] = [dict() for _ in range(n)]
        self.link_m = [0] * n
        self.link_ends = [0] * n
        self.closed_v = [False] * n
        base = max(3, d0)
        self.missing = [base] * n
        self.total_missing = n * base
        self.used = 0
        self.facet_sign: list[int] = []
        self.nonorientable = False
        self.results: list[tuple] = []
        self.nodes = 0
        self.star_size = 0

    # -- link bookkeeping ----------------------------------------------------

    def _recompute_missing(self, v: int) -> None:
        if self.closed_v[v]:
            m = 0
        elif self.link_m[v] == 0:
            m = max(3, self.d0)
        else:
            need = max(self.link_ends[v] // 2, 3 - self.link_m[v], self.d0 - self.link_m[v])
            m = need
        self.total_missing += m - self.missing[v]
        self.missing[v] = m

    def _link_add(self, v: int, p: int, q: int) -> None:
        adj = self.link_adj[v]
        for x in (p, q):
            lst = adj.get(x)
            if lst is None:
                adj[x] = []
                self.link_ends[v] += 1
            elif len(lst) == 1:
                self.link_ends[v] -= 1
        adj[p].append(q)
        adj[q].append(p)
        self.link_m[v] += 1
        if self.link_ends[v] == 0:
            self.closed_v[v] = True
        self._recompute_missing(v)

    def _link_remove(self, v: int, p: int, q: int) -> None:
        adj = self.link_adj[v]
        adj[p].pop()  # LIFO undo: the last entries are q and p
        adj[q].pop()
        self.link_m[v] -= 1
        self.closed_v[v] = False
        for x in (p, q):
            lst = adj[x]
            if not lst:
                del adj[x]
                self.link_ends[v] -= 1
            elif len(lst) == 1:
                self.link_ends[v] += 1
        self._recompute_missing(v)

    def _path_reaches(self, v: int, start: int, goal: int) -> bool:
        """Follow the link path of v from endpoint ``start``; True iff
        ``goal`` lies on it."""
        adj = self.link_adj[v]
        prev = None
        cur = start
        while True:
            nxt = None
            for u in adj[cur]:
                if u != prev:
                    nxt = u
                    break
            if nxt is None:
                return False
            if nxt == goal:
                return True
            prev, cur = cur, nxt

    # -- candidate test and application ---------------------------------------

    def _facet_present(self, a: int, b: int, c: int) -> bool:
        lst = self.link_adj[a].get(b)
        return lst is not None and c in lst

    @staticmethod
    def _edge_dir(f: tuple[int, int, int], e: int) -> int:
        x, y, z = f
        if e == _edge_key(x, y) or e == _edge_key(y, z):
            return 1
        return -1

    def _orient_forced(self, x: int, y: int, z: int) -> Optional[int]:
        """Sign forced on sorted facet (x,y,z) by oriented neighbors; 0 on
        conflict; None when orientation tracking is already abandoned."""
        if self.nonorientable:
            return None
        forced = None
        for e, d_new in (
            (_edge_key(x, y), 1),
            (_edge_key(y, z), 1),
            (_edge_key(x, z), -1),
        ):
            if self.edge_deg.get(e, 0) == 1:
                gi = self.edge_first_facet[e]
                want = -self.facet_sign[gi] * self._edge_dir(self.facets[gi], e) * d_new
                if forced is None:
                    forced = want
                elif forced != want:
                    return 0
        return 1 if forced is None else forced

    def can_add(self, a: int, b: int, c: int) -> bool:
        """Is the facet {a,b,c}, closing open edge (a,b), admissible?"""
        if self.edge_deg.get(_edge_key(a, c), 0) > 1:
            return False
        if self.edge_deg.get(_edge_key(b, c), 0) > 1:
            return False
        if self._facet_present(a, b, c):
            return False
        for v, p, q in ((a, b, c), (b, a, c), (c, a, b)):
            if self.closed_v[v]:
                return False
            adj = self.link_adj[v]
            lp = adj.get(p)
            lq = adj.get(q)
            if (lp is not None and len(lp) > 1) or (lq is not None and len(lq) > 1):
                return False
            if lp and lq and self._path_reaches(v, p, q):
                # Closing a link cycle: it must swallow the whole link and
                # reach an admissible final degree.
                if self.link_ends[v] != 2:
                    return False
                if self.link_m[v] + 1 < max(3, self.d0):
                    return False
        return True

    def add(self, a: int, b: int, c: int) -> None:
        x, y, z = sorted((a, b, c))
        fi = len(self.facets)
        sign = self._orient_forced(x, y, z)
        self.facets.append((x, y, z))
        if sign == 0:
            self.nonorientable = True
            self.facet_sign.append(2)
        else:
            self.facet_sign.append(2 if sign is None else sign)
        if z >= self.used:
            self.used = z + 1
        for u, v in ((x, y), (x, z), (y, z)):
            e = _edge_key(u, v)
            d = self.edge_deg.get(e, 0)
            self.edge_deg[e] = d + 1
            if d == 0:
                self.edge_first_facet[e] = fi
                self.edge_apex[e] = [x + y + z - u - v]
            else:
                self.edge_apex[e].append(x + y + z - u - v)
        self._link_add(x, y, z)
        self._link_add(y, x, z)
        self._link_add(z, x, y)

    def remove(self, was_nonorientable: bool, was_used: int) -> None:
        x, y, z = self.facets.pop()
        self.facet_sign.pop()
        self.nonorientable = was_nonorientable
        self.used = was_used
        for u, v in ((x, y), (x, z), (y, z)):
            e = _edge_key(u, v)
            d = self.edge_deg[e]
            if d == 1:
                del self.edge_deg[e]
                del self.edge_first_facet[e]
                del self.edge_apex[e]
            else:
                self.edge_deg[e] = d - 1
                self.edge_apex[e].pop()
        self._link_remove(x, y, z)
        self._link_remove(y, x, z)
        self._link_remove(z, x, y)

    # -- the DFS ---------------------------------------------------------------

    def min_open_edge(self) -> int:
        best = -1
        for e, d in self.edge_deg.items():
            if d == 1 and (e < best or best < 0):
                best = e
        return best

    def lay_star(self) -> None:
        d0 = self.d0
        star = [(0, i, i + 1) for i in range(1, d0)] + [(0, 1, d0)]
        for f in star:
            self.add(*f)
        self.star_size = d0

    def replay(self, path: tuple) -> None:
        for f in path:
            self.add(*f)

    def run(self, collect_depth: int = -1, frontier: Optional[list] = None) -> None:
        self._dfs(0, collect_depth, frontier)

    def _dfs(self, depth: int, collect_depth: int, frontier) -> None:
        e = self.min_open_edge()
        if e < 0:
            self._leaf()
            return
        if depth == collect_depth and frontier is not None:
            frontier.append(tuple(self.facets[self.star_size:]))
            return
        if len(self.facets) >= self.f_max:
            return
        self.nodes += 1
        a, b = e >> 4, e & 15
        limit = min(self.used + 1, self.n)
        check_orient = self.orientable is True
        for c in range(limit):
            if c == a or c == b:
                continue
            if not self.can_add(a, b, c):
                continue
            if check_orient and self._orient_forced(*sorted((a, b, c))) == 0:
                continue
            was_nono = self.nonorientable
            was_used = self.used
            self.add(a, b, c)
            if self.total_missing <= 3 * (self.f_max - len(self.facets)):
                self._dfs(depth + 1, collect_depth, frontier)
            self.remove(was_nono, was_used)

    # -- leaf acceptance ---------------------------------------------------------

    def _leaf(self) -> None:
        if self.used != self.n:
            return
        if self.f_target is not None and len(self.facets) != self.f_target:
            return
        if self.orientable is True and self.nonorientable:
            return
        if self.orientable is False and not self.nonorientable:
            return
        deg = self.link_m
        d0 = self.d0
        key0, rots0 = self._cyc_key(0)
        # The leaf's own rooting must itself be admissible: vertex 0 at
        # minimal cyclic degree-sequence key, identity rotation achieving it.
        if (1, 2) not in rots0:
            return
        keyed = [(0, rots0)]
        for v in range(1, self.n):
            if deg[v] != d0:
                continue
            k, rots = self._cyc_key(v)
            if k < key0:
                return
            if k == key0:
                keyed.append((v, rots))
        own = tuple(sorted(self.facets))
        for v, rots in keyed:
            for first, second in rots:
                if v == 0 and first == 1 and second == 2:
                    continue  # identity rooting reproduces `own`
                if self._rooted_relabel(v, first, second) < own:
                    return
        self.results.append(own)

    def _link_cycle(self, v: int) -> list[int]:
        adj = self.link_adj[v]
        start = min(adj)
        cyc = [start]
        prev, cur = None, start
        while True:
            u1, u2 = adj[cur]
            nxt = u1 if u1 != prev else u2
            if nxt == start:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
        return cyc

    def _cyc_key(self, v: int):
        """Minimal rotation/reflection of the degree sequence around the
        link of v, with the (first, second) vertex pairs achieving it."""
        cyc = self._link_cycle(v)
        d = len(cyc)
        deg = self.link_m
        best = None
        achieving: list[tuple[int, int]] = []
        for i in range(d):
            for step in (1, -1):
                seq = tuple(deg[cyc[(i + step * k) % d]] for k in range(d))
                if best is None or seq < best:
                    best = seq
                    achieving = [(cyc[i], cyc[(i + step) % d])]
                elif seq == best:
                    achieving.append((cyc[i], cyc[(i + step) % d]))
        return best, achieving

    def _rooted_relabel(self, root: int, first: int, second: int) -> tuple:
        """Sorted facet list after relabeling rooted at ``root`` with its
        link cycle walked ``first -> second``, mirroring the generator's
        own labeling scheme."""
        n = self.n
        adj = self.link_adj[root]
        d = self.link_m[root]
        new = [-1] * n
        old_of = [0] * n
        new[root] = 0
        old_of[0] = root
        seq = [first, second]
        prev, cur = first, second
        while len(seq) < d:
            u1, u2 = adj[cur]
            nxt = u1 if u1 != prev else u2
            seq.append(nxt)
            prev, cur = cur, nxt
        for k, u in enumerate(seq):
            new[u] = k + 1
            old_of[k + 1] = u
        cnt = d + 1
        out: list[tuple] = []
        heap: list[int] = []
        deg_new: dict[int, int] = {}
        added: set[tuple] = set()

        def push_facet(orig: tuple) -> None:
            ox, oy, oz = orig
            nf = tuple(sorted((new[ox], new[oy], new[oz])))
            out.append(nf)
            added.add(orig)
            for u, v in ((nf[0], nf[1]), (nf[0], nf[2]), (nf[1], nf[2])):
                ek = (u << 4) | v
                dd = deg_new.get(ek, 0) + 1
                deg_new[ek] = dd
                if dd == 1:
                    heapq.heappush(heap, ek)

        for k in range(1, d):
            push_facet(tuple(sorted((root, old_of[k], old_of[k + 1]))))
        push_facet(tuple(sorted((root, old_of[1], old_of[d]))))
        total = len(self.facets)
        while len(out) < total:
            while True:
                ek = heapq.heappop(heap)
                if deg_new.get(ek, 0) == 1:
                    break
            oa, ob = old_of[ek >> 4], old_of[ek & 15]
            apexes = self.edge_apex[_edge_key(oa, ob)]
            if tuple(sorted((oa, ob, apexes[0]))) in added:
                c = apexes[1]
            else:
                c = apexes[0]
            if new[c] < 0:
                new[c] = cnt
                old_of[cnt] = c
                cnt += 1
            push_facet(tuple(sorted((oa, ob, c))))
        out.sort()
        return tuple(out)


def _run_degree(n, d0, f_target, orientable, forced_path=None, collect_depth=-1):
    eng = _Census(n, d0, f_target, orientable)
    eng.lay_star()
    if eng.total_missing > 3 * (eng.f_max - len(eng.facets)):
        return [], [], 0
    frontier: list = []
    if forced_path is not None:
        eng.replay(forced_path)
        eng.run()
    else:
        eng.run(collect_depth=collect_depth, frontier=frontier)
    return eng.results, frontier, eng.nodes


def _census_job(args):
    n, d0, f_target, orientable, path = args
    results, _, nodes = _run_degree(n, d0, f_target, orientable, forced_path=path)
    return results, nodes


def enumerate_surfaces(
    constraints: EnumerationConstraints,
    workers: int = 1,
    partition_depth: int = 3,
) -> list[Triangulation]:
    """All isomorphism classes of closed triangulated surfaces meeting
    the constraints, canonically labeled, in lexicographic order.

    Counts and contents are independent of ``workers``.
    """
    constraints.validate()
    n = constraints.vertex_count
    f_target = constraints.facet_count()
    f_max = f_target if f_target is not None else (2 * (n * (n - 1) // 2)) // 3
    degrees = [d for d in range(3, n) if d * n <= 3 * f_max]
    raw: list[tuple] = []
    if workers <= 1:
        for d0 in degrees:
            results, _, _ = _run_degree(n, d0, f_target, constraints.orientable)
            raw.extend(results)
    else:
        from concurrent.futures import ProcessPoolExecutor

        jobs = []
        for d0 in degrees:
            results, frontier, _ = _run_degree(
                n, d0, f_target, constraints.orientable, collect_depth=partition_depth
            )
            raw.extend(results)  # leaves shallower than the partition depth
            jobs.extend((n, d0, f_target, constraints.orientable, p) for p in frontier)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for results, _ in pool.map(_census_job, jobs, chunksize=1):
                raw.extend(results)
    canon = sorted(canonical_internal(n, facets) for facets in raw)
    assert len(set(canon)) == len(canon), "duplicate classes emitted"
    return [Triangulation.from_internal(f) for f in canon]


def count_surfaces(constraints: EnumerationConstraints, workers: int = 1) -> int:
    return len(enumerate_surfaces(constraints, workers=workers))
