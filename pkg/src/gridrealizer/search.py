"""Symmetry-reduced exhaustive search for geometric realizations of
triangulated surfaces with vertices on an integer grid.

Two strategies, both exact and both exhaustive when asked to be:

- ``fused``: interleaves point choice with vertex assignment along a
  static vertex order, pruning with incremental geometric consistency
  (general-position deltas, strict-piercing rejections, full pair
  classification in the laxer modes) and canonical-prefix symmetry
  reduction under the 48 grid symmetries.
- ``two_phase``: grows canonical general-position point sets of
  increasing size, keeping only sets that still allow an embedding of
  some induced subcomplex, then attempts full assignments at size n.
  Simple and independent of the fused engine, but only practical on
  tiny grids; it exists to cross-validate outcomes.

Candidate filtering is vectorized with numpy int64, which is exact for
all admissible grids: coordinates lie in {0..extent} with extent at most
2^20, so every 3x3 difference determinant is below 6*(2^20)^3 < 2^63.
Every Realized witness is re-verified through the checker before being
returned.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from gridrealizer.checking import RealizationMode, check_realization
from gridrealizer.predicates import (
    SegSeg,
    collinear,
    general_position,
    segment_segment,
    segment_triangle,
    triangles_compatible,
)
from gridrealizer.surfaces import (
    NotClosedError,
    Triangulation,
    edge_set,
    validate_closed_surface,
)

Point = tuple[int, int, int]

MAX_EXTENT = 1 << 20
#: realize() materializes the whole grid; refuse absurd ones.
MAX_GRID_POINTS = 4_000_000


@dataclass(frozen=True)
class GridSpec:
    """Axis-aligned grid {0..extent}^3."""

    extent: int

    def __post_init__(self) -> None:
        if not 0 <= self.extent <= MAX_EXTENT:
            raise ValueError(f"extent must be in 0..{MAX_EXTENT}")

    @property
    def npoints(self) -> int:
        return (self.extent + 1) ** 3

    def points(self) -> list[Point]:
        if self.npoints > MAX_GRID_POINTS:
            raise ValueError(f"grid with {self.npoints} points is too large to materialize")
        e = self.extent
        return [
            (x, y, z)
            for x in range(e + 1)
            for y in range(e + 1)
            for z in range(e + 1)
        ]

    def contains(self, p: Sequence[int]) -> bool:
        return all(0 <= c <= self.extent for c in p)


@dataclass(frozen=True)
class GridSymmetry:
    """Axis permutation followed by per-axis flips x -> extent - x."""

    perm: tuple[int, int, int]
    flips: tuple[int, int, int]

    def apply(self, p: Sequence[int], extent: int) -> Point:
        q = (p[self.perm[0]], p[self.perm[1]], p[self.perm[2]])
        return tuple(extent - q[i] if self.flips[i] else q[i] for i in range(3))


def grid_symmetries(grid: GridSpec) -> tuple[GridSymmetry, ...]:
    """All 48 signed axis permutations of the cube {0..extent}^3."""
    return tuple(
        GridSymmetry(perm, flips)
        for perm in itertools.permutations((0, 1, 2))
        for flips in itertools.product((0, 1), repeat=3)
    )


def canonical_point_set(points: Iterable[Sequence[int]], grid: GridSpec) -> tuple[Point, ...]:
    """Lexicographically minimal sorted point list over the 48 images."""
    pts = [tuple(int(c) for c in p) for p in points]
    for p in pts:
        if not grid.contains(p):
            raise ValueError(f"point {p} outside grid of extent {grid.extent}")
    e = grid.extent
    best = None
    for g in grid_symmetries(grid):
        img = tuple(sorted(g.apply(p, e) for p in pts))
        if best is None or img < best:
            best = img
    return best if best is not None else ()


# ---------------------------------------------------------------------------
# outcomes and configuration


class SearchStatus(enum.Enum):
    REALIZED = "realized"
    UNREALIZABLE = "unrealizable"
    LIMIT_REACHED = "limit_reached"


class Strategy(enum.Enum):
    FUSED = "fused"
    TWO_PHASE = "two_phase"


class Goal(enum.Enum):
    FIRST_WITNESS = "first_witness"
    EXHAUST = "exhaust"


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    canonical_rejections: int = 0
    feasibility_prunes: int = 0
    max_depth_reached: int = 0
    elapsed: float = 0.0

    def merge(self, other: "SearchStats") -> None:
        self.nodes_expanded += other.nodes_expanded
        self.canonical_rejections += other.canonical_rejections
        self.feasibility_prunes += other.feasibility_prunes
        self.max_depth_reached = max(self.max_depth_reached, other.max_depth_reached)


@dataclass
class SearchOutcome:
    status: SearchStatus
    witness: Optional[dict[int, Point]]
    stats: SearchStats
    mode: RealizationMode
    extent: int


@dataclass(frozen=True)
class SearchConfig:
    mode: RealizationMode = RealizationMode.GENERAL_POSITION
    strategy: Strategy = Strategy.FUSED
    goal: Goal = Goal.FIRST_WITNESS
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None
    worker_count: int = 1
    deterministic: bool = True
    partition_depth: int = 2


class _LimitHit(Exception):
    pass


class _Found(Exception):
    def __init__(self, witness):
        self.witness = witness


def _cross_rows(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Row-wise cross product without np.cross's axis bookkeeping."""
    out = np.empty(np.broadcast_shapes(u.shape, v.shape), dtype=np.int64)
    out[..., 0] = u[..., 1] * v[..., 2] - u[..., 2] * v[..., 1]
    out[..., 1] = u[..., 2] * v[..., 0] - u[..., 0] * v[..., 2]
    out[..., 2] = u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]
    return out


_TRIU_CACHE: dict[int, tuple] = {}


def _triu_pairs(s: int) -> tuple:
    got = _TRIU_CACHE.get(s)
    if got is None:
        got = np.triu_indices(s, 1)
        _TRIU_CACHE[s] = got
    return got


# ---------------------------------------------------------------------------
# static structure of the triangulation, precomputed per depth


def _static_order(t: Triangulation) -> list[int]:
    degree = [0] * t.n
    nbrs: list[set[int]] = [set() for _ in range(t.n)]
    for a, b, c in t.facets:
        degree[a] += 1
        degree[b] += 1
        degree[c] += 1
        nbrs[a].update((b, c))
        nbrs[b].update((a, c))
        nbrs[c].update((a, b))
    start = max(range(t.n), key=lambda v: (degree[v], -v))
    order = [start]
    placed = {start}
    while len(order) < t.n:
        best = max(
            (v for v in range(t.n) if v not in placed),
            key=lambda v: (len(nbrs[v] & placed), degree[v], -v),
        )
        order.append(best)
        placed.add(best)
    return order


@dataclass
class _DepthPlan:
    vertex: int
    new_edges: list[int]                      # placed neighbors u of vertex
    new_facets: list[tuple[int, int]]         # (a, b): facet {a, b, vertex}
    ef_edge_facet: list[tuple[int, tuple]]    # (u, old facet) vertex-disjoint
    ef_facet_edge: list[tuple[tuple, tuple]]  # ((a,b) of new facet, old edge)
    ee_pairs: list[tuple[int, tuple]]         # (u, old edge)
    ee_new_pairs: list[tuple[int, int]]       # (u1, u2): two new edges at v
    ef_new_new: list[tuple[int, tuple]]       # (u, (a,b)): new edge vs new facet
    ff_pairs: list[tuple[tuple, tuple]]       # (new facet ab, old facet) + new/new
    proper_hinges: list[tuple]                # placed triples (x,y,z): candidate
                                              # must be non-coplanar with them


def _build_plan(t: Triangulation, order: list[int]) -> list[_DepthPlan]:
    pos = {v: i for i, v in enumerate(order)}
    edges = edge_set(t)
    edge_facets: dict[tuple, list[tuple]] = {}
    for f in t.facets:
        a, b, c = f
        for e in ((a, b), (a, c), (b, c)):
            edge_facets.setdefault(e, []).append(f)
    facet_depth = {f: max(pos[v] for v in f) for f in t.facets}
    edge_depth = {e: max(pos[e[0]], pos[e[1]]) for e in edges}
    plans = []
    for i, v in enumerate(order):
        new_edges = sorted(
            (u for u in range(t.n) if pos[u] < i and ((min(u, v), max(u, v)) in edge_depth)),
            key=lambda u: pos[u],
        )
        new_facets = sorted(
            tuple(sorted(set(f) - {v})) for f in t.facets if facet_depth[f] == i
        )
        old_facets = [f for f in t.facets if facet_depth[f] < i]
        old_edges = [e for e in edges if edge_depth[e] < i]
        ef_edge_facet = [
            (u, f)
            for u in new_edges
            for f in old_facets
            if u not in f
        ]
        ef_facet_edge = [
            (ab, e)
            for ab in new_facets
            for e in old_edges
            if not (set(e) & set(ab))
        ]
        ee_pairs = [(u, e) for u in new_edges for e in old_edges]
        ee_new_pairs = [
            (new_edges[x], new_edges[y])
            for x in range(len(new_edges))
            for y in range(x + 1, len(new_edges))
        ]
        ef_new_new = [
            (u, ab) for u in new_edges for ab in new_facets if u not in ab
        ]
        new_facet_full = [tuple(sorted(ab + (v,))) for ab in new_facets]
        ff_pairs = [(ab, f) for ab in new_facets for f in old_facets]
        ff_pairs += [
            (new_facets[x], new_facet_full[y])
            for x in range(len(new_facets))
            for y in range(len(new_facets))
            if x < y
        ]
        # hinge edges whose second facet completes exactly at this depth:
        # the candidate point must not be coplanar with the other three
        # vertices of the hinge quad (all placed earlier).
        proper_hinges = []
        for e, fs in edge_facets.items():
            if len(fs) == 2 and max(facet_depth[fs[0]], facet_depth[fs[1]]) == i:
                quad = set(fs[0]) | set(fs[1])
                proper_hinges.append(tuple(sorted(quad - {v})))
        plans.append(
            _DepthPlan(
                vertex=v,
                new_edges=new_edges,
                new_facets=new_facets,
                ef_edge_facet=ef_edge_facet,
                ef_facet_edge=ef_facet_edge,
                ee_pairs=ee_pairs,
                ee_new_pairs=ee_new_pairs,
                ef_new_new=ef_new_new,
                ff_pairs=ff_pairs,
                proper_hinges=proper_hinges,
            )
        )
    return plans


@dataclass
class _RecipeSet:
    """Mask-update constraints that fire at one placement depth.

    Every pair constraint between simplices of the complex is scheduled
    at the depth where its second-to-last participating vertex is
    placed; the rows then prune the candidate mask of the one vertex
    still unplaced (all index arrays hold placement positions).
    """

    # target, u, fa, fb, fc: future edge (u, target) vs placed facet
    a_rows: Optional[tuple] = None
    # target, a, b, p, q: placed edge (p, q) vs future facet (a, b, target)
    b_rows: Optional[tuple] = None
    # target, a, b: future facet (a, b, target) must not be degenerate
    deg_rows: Optional[tuple] = None
    # target, x, y, z: hinge quad must not be coplanar (proper mode)
    hinge_rows: Optional[tuple] = None


def _build_recipes(t: Triangulation, order: list[int]) -> list[_RecipeSet]:
    pos = {v: i for i, v in enumerate(order)}
    edges = edge_set(t)
    n = t.n
    acc: list[dict[str, list]] = [
        {"A": [], "B": [], "DEG": [], "HINGE": []} for _ in range(n)
    ]
    for e in edges:
        eset = set(e)
        for f in t.facets:
            if eset & set(f):
                continue
            parts = [e[0], e[1], f[0], f[1], f[2]]
            by_pos = sorted(parts, key=lambda x: pos[x])
            target = by_pos[-1]
            trigger = pos[by_pos[-2]]
            if target in eset:
                u = e[0] if e[1] == target else e[1]
                acc[trigger]["A"].append(
                    (pos[target], pos[u], pos[f[0]], pos[f[1]], pos[f[2]])
                )
            else:
                rest = [x for x in f if x != target]
                acc[trigger]["B"].append(
                    (pos[target], pos[rest[0]], pos[rest[1]], pos[e[0]], pos[e[1]])
                )
    for f in t.facets:
        by_pos = sorted(f, key=lambda x: pos[x])
        target = by_pos[-1]
        trigger = pos[by_pos[-2]]
        others = [x for x in f if x != target]
        acc[trigger]["DEG"].append((pos[target], pos[others[0]], pos[others[1]]))
    edge_facets: dict[tuple, list[tuple]] = {}
    for f in t.facets:
        a, b, c = f
        for e in ((a, b), (a, c), (b, c)):
            edge_facets.setdefault(e, []).append(f)
    for e, fs in edge_facets.items():
        if len(fs) != 2:
            continue
        quad = sorted(set(fs[0]) | set(fs[1]), key=lambda x: pos[x])
        target = quad[-1]
        trigger = pos[quad[-2]]
        others = [x for x in quad if x != target]
        acc[trigger]["HINGE"].append(
            (pos[target], pos[others[0]], pos[others[1]], pos[others[2]])
        )
    out = []
    for d in acc:
        out.append(
            _RecipeSet(
                a_rows=_cols(d["A"]),
                b_rows=_cols(d["B"]),
                deg_rows=_cols(d["DEG"]),
                hinge_rows=_cols(d["HINGE"]),
            )
        )
    return out


def _cols(rows: list) -> Optional[tuple]:
    if not rows:
        return None
    arr = np.array(rows, dtype=np.int64)
    return tuple(arr[:, k] for k in range(arr.shape[1]))


# ---------------------------------------------------------------------------
# the fused engine


class _FusedEngine:
    def __init__(self, t: Triangulation, grid: GridSpec, cfg: SearchConfig):
        self.t = t
        self.grid = grid
        self.cfg = cfg
        self.n = t.n
        self.order = _static_order(t)
        self.plans = _build_plan(t, self.order)
        self.recipes = _build_recipes(t, self.order)
        pts = grid.points()
        self.gpts = np.array(pts, dtype=np.int64)
        self.pts_list = pts
        e = grid.extent
        index = {p: i for i, p in enumerate(pts)}
        self.sym_maps = []
        for g in grid_symmetries(grid):
            if g.perm == (0, 1, 2) and g.flips == (0, 0, 0):
                continue  # identity never prunes
            self.sym_maps.append(
                np.array([index[g.apply(p, e)] for p in pts], dtype=np.int64)
            )
        self.stats = SearchStats()
        self.placed_idx: list[int] = []
        self.placed_pts: list[Point] = []
        self.deadline = None
        self.nodes_left = None
        self.gp_mode = cfg.mode == RealizationMode.GENERAL_POSITION
        self.proper_mode = cfg.mode == RealizationMode.PROPER
        #: test hook: collect (witness, stabilizer_size) for every leaf
        #: instead of stopping at the first one
        self.collect: Optional[list] = None

    # -- incremental filters ----------------------------------------------------

    def _child_poolmask(self, poolmask: np.ndarray, q_idx: int) -> np.ndarray:
        """Shared pool after placing grid point q_idx: removes the point
        and, in general-position mode, everything collinear with (q, a)
        or coplanar with (q, a, b) over placed a, b."""
        out = poolmask.copy()
        out[q_idx] = False
        if not self.gp_mode:
            return out
        q = self.gpts[q_idx]
        s = len(self.placed_idx)
        if s == 0:
            return out
        rel = self.gpts - q  # full grid; masked rows are simply ignored
        placed = np.array(self.placed_idx, dtype=np.int64)
        D = self.gpts[placed] - q  # (s, 3)
        cr = _cross_rows(rel[:, None, :], D[None, :, :])  # (m, s, 3)
        out &= ~np.any(np.all(cr == 0, axis=2), axis=1)
        if s >= 2:
            ia, ib = _triu_pairs(s)
            nrm = _cross_rows(D[ia], D[ib])  # (P, 3)
            out &= ~np.any(rel @ nrm.T == 0, axis=1)
        return out

    def _apply_recipes(self, depth: int, q: Point, masks: list) -> Optional[list]:
        """Masks after placing ``q`` at ``depth``: fires every constraint
        whose second-to-last participant this placement is, pruning the
        candidate mask of the one vertex still unplaced.

        All sign tests are affine in the unknown point, so each recipe
        kind collapses into one (grid x rows) integer matmul.
        """
        rec = self.recipes[depth]
        if rec.a_rows is None and rec.b_rows is None and rec.deg_rows is None \
                and (not self.proper_mode or rec.hinge_rows is None):
            return masks
        coords = np.array(self.placed_pts + [q], dtype=np.int64)
        gpts = self.gpts
        child = list(masks)
        touched: dict[int, np.ndarray] = {}

        def mask_for(tpos: int) -> np.ndarray:
            arr = touched.get(tpos)
            if arr is None:
                arr = child[tpos].copy()
                touched[tpos] = arr
                child[tpos] = arr
            return arr

        if rec.a_rows is not None:
            # future edge (u, target) must not pierce placed facet (A,B,C)
            it, iu, ia, ib, ic = rec.a_rows
            U, A, B, C = coords[iu], coords[ia], coords[ib], coords[ic]
            nrm = _cross_rows(B - A, C - A)
            su = np.sign(np.einsum("kd,kd->k", U - A, nrm))
            w1 = _cross_rows(A - U, B - U)
            w2 = _cross_rows(B - U, C - U)
            w3 = _cross_rows(C - U, A - U)
            W = np.concatenate([nrm, w1, w2, w3], axis=0)
            base = np.concatenate([A, U, U, U], axis=0)
            c = np.einsum("rd,rd->r", W, base)
            S = np.sign(gpts @ W.T - c)
            K = len(it)
            sq, t1, t2, t3 = S[:, :K], S[:, K:2 * K], S[:, 2 * K:3 * K], S[:, 3 * K:]
            straddle = sq * su < 0
            inside = ((t1 > 0) & (t2 > 0) & (t3 > 0)) | ((t1 < 0) & (t2 < 0) & (t3 < 0))
            kill = straddle & inside
            for k in range(K):
                col = kill[:, k]
                if col.any():
                    mask_for(int(it[k]))[col] = False

        if rec.b_rows is not None:
            # placed edge (P,Q) must not pierce future facet (A, B, target)
            it, ia, ib, ip, iq = rec.b_rows
            A, B, Pp, Pq = coords[ia], coords[ib], coords[ip], coords[iq]
            wa = _cross_rows(Pp - A, B - A)
            wb = _cross_rows(Pq - A, B - A)
            o_ab = np.sign(
                np.einsum("kd,kd->k", _cross_rows(Pq - Pp, A - Pp), B - Pp)
            )
            w_bq = _cross_rows(Pq - Pp, B - Pp)
            w_qa = _cross_rows(A - Pp, Pq - Pp)
            W = np.concatenate([wa, wb, w_bq, w_qa], axis=0)
            base = np.concatenate([A, A, Pp, Pp], axis=0)
            c = np.einsum("rd,rd->r", W, base)
            S = np.sign(gpts @ W.T - c)
            K = len(it)
            sa, sb, o1, o2 = S[:, :K], S[:, K:2 * K], S[:, 2 * K:3 * K], S[:, 3 * K:]
            kill = (sa * sb < 0) & (o1 * o_ab > 0) & (o2 * o_ab > 0)
            for k in range(K):
                col = kill[:, k]
                if col.any():
                    mask_for(int(it[k]))[col] = False

        if not self.gp_mode and rec.deg_rows is not None:
            # future facet (A, B, target) must not be degenerate
            it, ia, ib = rec.deg_rows
            A, B = coords[ia], coords[ib]
            d = B - A
            cr = _cross_rows(gpts[:, None, :] - A[None, :, :], d[None, :, :])
            kill = np.all(cr == 0, axis=2)
            for k in range(len(it)):
                col = kill[:, k]
                if col.any():
                    mask_for(int(it[k]))[col] = False

        if self.proper_mode and rec.hinge_rows is not None:
            # hinge quad (X, Y, Z, target) must not be coplanar
            it, ix, iy, iz = rec.hinge_rows
            X, Y, Z = coords[ix], coords[iy], coords[iz]
            nrm = _cross_rows(Y - X, Z - X)
            c = np.einsum("rd,rd->r", nrm, X)
            kill = (gpts @ nrm.T - c) == 0
            for k in range(len(it)):
                col = kill[:, k]
                if col.any():
                    mask_for(int(it[k]))[col] = False

        return child

    def _scalar_ok(self, depth: int, q: Point) -> bool:
        """Exact pair classification for the laxer modes (the vector
        stage only rejects definite strict crossings)."""
        if self.gp_mode:
            return True
        plan = self.plans[depth]
        coords = dict(zip(self.order, self.placed_pts))
        coords[plan.vertex] = q
        v = plan.vertex
        for u, e in plan.ee_pairs:
            seg1 = (coords[u], q)
            seg2 = (coords[e[0]], coords[e[1]])
            shared = len({u, v} & set(e))
            cls = segment_segment(seg1, seg2)
            if shared == 0 and cls != SegSeg.DISJOINT:
                return False
            if shared == 1 and cls != SegSeg.SHARED_ENDPOINT_ONLY:
                return False
        for u1, u2 in plan.ee_new_pairs:
            cls = segment_segment((coords[u1], q), (coords[u2], q))
            if cls != SegSeg.SHARED_ENDPOINT_ONLY:
                return False
        for u, f in plan.ef_edge_facet:
            tri = (coords[f[0]], coords[f[1]], coords[f[2]])
            if segment_triangle((coords[u], q), tri, shared=()) is not None:
                return False
        for ab, e in plan.ef_facet_edge:
            tri = (coords[ab[0]], coords[ab[1]], q)
            seg = (coords[e[0]], coords[e[1]])
            if segment_triangle(seg, tri, shared=()) is not None:
                return False
        for u, ab in plan.ef_new_new:
            tri = (coords[ab[0]], coords[ab[1]], q)
            if segment_triangle((coords[u], q), tri, shared=[q]) is not None:
                return False
        for ab, f in plan.ff_pairs:
            t1 = (coords[ab[0]], coords[ab[1]], q)
            t2 = (coords[f[0]], coords[f[1]], coords[f[2]])
            shared = [coords[x] for x in set(ab) | {v} if x in f]
            if triangles_compatible(t1, t2, shared=shared) is not None:
                return False
        if self.proper_mode:
            for (x, y, z) in plan.proper_hinges:
                if _orient_scalar_t(coords[x], coords[y], coords[z], q) == 0:
                    return False
        return True

    # -- search ----------------------------------------------------------------

    def _run(self, collect=None, collect_depth: int = -1, prefix=None) -> SearchOutcome:
        t0 = time.monotonic()
        if self.cfg.time_limit is not None:
            self.deadline = t0 + self.cfg.time_limit
        self.nodes_left = self.cfg.node_limit
        status = SearchStatus.UNREALIZABLE
        witness = None
        m = len(self.pts_list)
        pool0 = np.ones(m, dtype=bool)
        ones = np.ones(m, dtype=bool)
        masks0 = [ones] * self.n
        stab0 = list(range(len(self.sym_maps)))
        try:
            self._descend(0, pool0, masks0, stab0, collect, collect_depth, prefix)
        except _Found as f:
            witness = f.witness
            status = SearchStatus.REALIZED
        except _LimitHit:
            status = SearchStatus.LIMIT_REACHED
        self.stats.elapsed = time.monotonic() - t0
        return SearchOutcome(status, witness, self.stats, self.cfg.mode, self.grid.extent)

    def search(self) -> SearchOutcome:
        return self._run()

    def search_prefix(self, prefix: tuple) -> SearchOutcome:
        return self._run(prefix=list(prefix))

    def collect_prefixes(self, depth: int) -> list[tuple]:
        out: list[tuple] = []
        self._run(collect=out, collect_depth=depth)
        return out

    def _tick(self) -> None:
        if self.nodes_left is not None:
            if self.nodes_left <= 0:
                raise _LimitHit()
            self.nodes_left -= 1
        if self.deadline is not None and self.stats.nodes_expanded % 64 == 0:
            if time.monotonic() > self.deadline:
                raise _LimitHit()

    def _descend(self, depth: int, poolmask: np.ndarray, masks: list,
                 stab: list[int], collect: Optional[list] = None,
                 collect_depth: int = -1, prefix: Optional[list] = None) -> None:
        if depth == self.n:
            self._witness(stab)
            return
        if depth == collect_depth and collect is not None:
            collect.append(tuple(self.placed_idx))
            return
        cands = np.nonzero(poolmask & masks[depth])[0]
        if prefix is not None and depth < len(prefix):
            cands = cands[cands == prefix[depth]]
        remaining = self.n - depth - 1
        for q_idx in cands.tolist():
            skip = False
            for h in stab:
                if int(self.sym_maps[h][q_idx]) < q_idx:
                    skip = True
                    break
            if skip:
                self.stats.canonical_rejections += 1
                continue
            q = self.pts_list[q_idx]
            if not self._scalar_ok(depth, q):
                self.stats.feasibility_prunes += 1
                continue
            self._tick()
            self.stats.nodes_expanded += 1
            child_pool = self._child_poolmask(poolmask, q_idx)
            child_masks = self._apply_recipes(depth, q, masks)
            # forward check: every future vertex still needs a candidate,
            # and the pool must be able to supply distinct points
            dead = int(child_pool.sum()) < remaining
            if not dead:
                for j in range(depth + 1, self.n):
                    if not np.any(child_pool & child_masks[j]):
                        dead = True
                        break
            if dead:
                self.stats.feasibility_prunes += 1
                continue
            child_stab = [
                h for h in stab if int(self.sym_maps[h][q_idx]) == q_idx
            ]
            self.placed_idx.append(q_idx)
            self.placed_pts.append(q)
            if depth + 1 > self.stats.max_depth_reached:
                self.stats.max_depth_reached = depth + 1
            try:
                self._descend(depth + 1, child_pool, child_masks, child_stab,
                              collect, collect_depth, prefix)
            finally:
                self.placed_idx.pop()
                self.placed_pts.pop()

    def _witness(self, stab: list[int]) -> None:
        emb = {
            self.order[i] + 1: self.placed_pts[i] for i in range(self.n)
        }
        report = check_realization(self.t, emb, self.cfg.mode)
        if not report.valid:
            raise RuntimeError(
                f"engine produced an invalid witness (violations: "
                f"{[str(v) for v in report.violations][:5]})"
            )
        if self.collect is not None:
            self.collect.append((emb, len(stab) + 1))  # +1: identity
            return
        raise _Found(emb)


def _orient_scalar_t(a, b, c, d) -> int:
    """Sign of det[b-a; c-a; d-a] on tuples or small numpy vectors."""
    ux, uy, uz = int(b[0]) - int(a[0]), int(b[1]) - int(a[1]), int(b[2]) - int(a[2])
    vx, vy, vz = int(c[0]) - int(a[0]), int(c[1]) - int(a[1]), int(c[2]) - int(a[2])
    wx, wy, wz = int(d[0]) - int(a[0]), int(d[1]) - int(a[1]), int(d[2]) - int(a[2])
    det = (
        ux * (vy * wz - vz * wy)
        - uy * (vx * wz - vz * wx)
        + uz * (vx * wy - vy * wx)
    )
    return (det > 0) - (det < 0)


# ---------------------------------------------------------------------------
# two-phase strategy (cross-validation; tiny grids only)


def subcomplex_feasible(
    points: Sequence[Sequence[int]],
    t: Triangulation,
    mode: RealizationMode = RealizationMode.GENERAL_POSITION,
) -> tuple[bool, Optional[dict[int, Point]]]:
    """Does some vertex subset of t embed on exactly these points?

    True iff there is an injective assignment of a |points|-subset of
    vertices onto the points whose induced subcomplex is geometrically
    consistent (facet pairs meet in shared faces, inherited edges do not
    cross, mode constraints hold).  Decided by backtracking.
    """
    pts = [tuple(int(c) for c in p) for p in points]
    if len(set(pts)) != len(pts):
        return False, None
    if len(pts) > t.n:
        raise ValueError("more points than vertices")
    if mode == RealizationMode.GENERAL_POSITION and len(pts) >= 3:
        if general_position(pts) is not None:
            return False, None
    edges = edge_set(t)
    assigned: dict[int, Point] = {}

    def consistent_with(w: int, p: Point) -> bool:
        trial = dict(assigned)
        trial[w] = p
        have = set(trial)
        facets = [f for f in t.facets if set(f) <= have and w in f]
        all_facets = [f for f in t.facets if set(f) <= have]
        for f in facets:
            a, b, c = (trial[f[0]], trial[f[1]], trial[f[2]])
            if collinear(a, b, c):
                return False  # degenerate facet
        for f in facets:
            t1 = tuple(trial[x] for x in f)
            for g in all_facets:
                if g == f:
                    continue
                t2 = tuple(trial[x] for x in g)
                shared = [trial[x] for x in f if x in g]
                if triangles_compatible(t1, t2, shared=shared) is not None:
                    return False
        new_edges = [e for e in edges if w in e and set(e) <= have]
        old_edges = [e for e in edges if set(e) <= have and w not in e]
        for e1 in new_edges:
            s1 = (trial[e1[0]], trial[e1[1]])
            for e2 in old_edges:
                s2 = (trial[e2[0]], trial[e2[1]])
                shared = len(set(e1) & set(e2))
                cls = segment_segment(s1, s2)
                if shared == 0 and cls != SegSeg.DISJOINT:
                    return False
                if shared == 1 and cls != SegSeg.SHARED_ENDPOINT_ONLY:
                    return False
        for e1 in new_edges + old_edges:
            s1 = (trial[e1[0]], trial[e1[1]])
            for f in all_facets:
                if set(e1) & set(f):
                    continue
                if w not in e1 and w not in f:
                    continue
                tri = tuple(trial[x] for x in f)
                if segment_triangle(s1, tri, shared=()) is not None:
                    return False
        if mode == RealizationMode.PROPER:
            ef: dict[tuple, list] = {}
            for f in all_facets:
                a, b, c = f
                for e in ((a, b), (a, c), (b, c)):
                    ef.setdefault(e, []).append(f)
            for e, fs in ef.items():
                if len(fs) == 2:
                    w1 = next(x for x in fs[0] if x not in e)
                    w2 = next(x for x in fs[1] if x not in e)
                    if _orient_scalar_t(trial[e[0]], trial[e[1]], trial[w1], trial[w2]) == 0:
                        return False
        return True

    def backtrack(k: int) -> Optional[dict[int, Point]]:
        if k == len(pts):
            return dict(assigned)
        p = pts[k]
        for w in range(t.n):
            if w in assigned:
                continue
            if consistent_with(w, p):
                assigned[w] = p
                got = backtrack(k + 1)
                if got is not None:
                    return got
                del assigned[w]
        return None

    got = backtrack(0)
    if got is None:
        return False, None
    return True, {v + 1: p for v, p in got.items()}


def generate_gp_sets(
    grid: GridSpec,
    size: int,
    require_general_position: bool = True,
) -> list[tuple[Point, ...]]:
    """Canonical representatives of all symmetry orbits of
    (general-position) point sets of the given size, by orderly
    extension of canonical smaller sets.  Deterministic order."""
    if size < 0:
        raise ValueError("size must be >= 0")
    if size == 0:
        return [()]
    pts = grid.points()
    level: set[tuple] = set()
    for p in pts:
        level.add(canonical_point_set([p], grid))
    for s in range(2, size + 1):
        nxt: set[tuple] = set()
        for base in level:
            bset = set(base)
            for p in pts:
                if p in bset:
                    continue
                cand = list(base) + [p]
                if require_general_position and len(cand) >= 3:
                    if general_position(cand) is not None:
                        continue
                nxt.add(canonical_point_set(cand, grid))
        level = nxt
        if not level:
            break
    return sorted(level)


def _two_phase_search(t: Triangulation, grid: GridSpec, cfg: SearchConfig) -> SearchOutcome:
    t0 = time.monotonic()
    stats = SearchStats()
    deadline = t0 + cfg.time_limit if cfg.time_limit is not None else None
    nodes_left = cfg.node_limit
    require_gp = cfg.mode == RealizationMode.GENERAL_POSITION
    pts = grid.points()
    level: list[tuple] = [()]
    status = SearchStatus.UNREALIZABLE
    witness = None
    try:
        for s in range(1, t.n + 1):
            nxt: set[tuple] = set()
            for base in level:
                bset = set(base)
                for p in pts:
                    if p in bset:
                        continue
                    cand = tuple(sorted(bset | {p}))
                    if require_gp and len(cand) >= 3:
                        if general_position(cand) is not None:
                            continue
                    canon = canonical_point_set(cand, grid)
                    if canon in nxt:
                        continue
                    if nodes_left is not None:
                        if nodes_left <= 0:
                            raise _LimitHit()
                        nodes_left -= 1
                    if deadline is not None and time.monotonic() > deadline:
                        raise _LimitHit()
                    stats.nodes_expanded += 1
                    ok, assignment = subcomplex_feasible(canon, t, cfg.mode)
                    if not ok:
                        stats.feasibility_prunes += 1
                        continue
                    nxt.add(canon)
                    if s == t.n:
                        emb = assignment
                        report = check_realization(t, emb, cfg.mode)
                        if not report.valid:
                            raise RuntimeError("two-phase produced an invalid witness")
                        witness = emb
                        status = SearchStatus.REALIZED
                        raise _Found(emb)
            stats.max_depth_reached = max(stats.max_depth_reached, s if nxt else s - 1)
            level = sorted(nxt)
            if not level:
                break
    except _Found:
        pass
    except _LimitHit:
        status = SearchStatus.LIMIT_REACHED
    stats.elapsed = time.monotonic() - t0
    return SearchOutcome(status, witness, stats, cfg.mode, grid.extent)


# ---------------------------------------------------------------------------
# public entry points


def _job_search_prefix(args):
    t_facets, n, extent, cfg, prefix = args
    t = Triangulation(n=n, facets=t_facets)
    eng = _FusedEngine(t, GridSpec(extent), cfg)
    out = eng.search_prefix(prefix)
    return (
        out.status.value,
        out.witness,
        out.stats.nodes_expanded,
        out.stats.canonical_rejections,
        out.stats.feasibility_prunes,
        out.stats.max_depth_reached,
    )


def realize(t: Triangulation, grid: GridSpec, cfg: SearchConfig = SearchConfig()) -> SearchOutcome:
    """Search for an embedding of ``t`` with vertices on the grid.

    REALIZED comes with a checker-verified witness; UNREALIZABLE is an
    exhaustion certificate for this grid and mode; LIMIT_REACHED means a
    node or time budget ran out first and proves nothing.
    """
    info = validate_closed_surface(t)
    if not info.closed:
        raise NotClosedError(f"realize needs a closed surface: {info.reason}")
    if grid.npoints < t.n:
        stats = SearchStats()
        return SearchOutcome(SearchStatus.UNREALIZABLE, None, stats, cfg.mode, grid.extent)
    if cfg.strategy == Strategy.TWO_PHASE:
        return _two_phase_search(t, grid, cfg)
    if cfg.worker_count <= 1:
        return _FusedEngine(t, grid, cfg).search()
    return _parallel_fused(t, grid, cfg)


def _parallel_fused(t: Triangulation, grid: GridSpec, cfg: SearchConfig) -> SearchOutcome:
    from concurrent.futures import ProcessPoolExecutor

    t0 = time.monotonic()
    depth = max(1, min(cfg.partition_depth, t.n - 1))
    eng = _FusedEngine(t, grid, cfg)
    try:
        prefixes = eng.collect_prefixes(depth)
    except _LimitHit:
        eng.stats.elapsed = time.monotonic() - t0
        return SearchOutcome(SearchStatus.LIMIT_REACHED, None, eng.stats, cfg.mode, grid.extent)
    stats = eng.stats
    witness = None
    status = SearchStatus.UNREALIZABLE
    jobs = [(t.facets, t.n, grid.extent, cfg, p) for p in prefixes]
    hit_limit = False

    def absorb(res) -> bool:
        nonlocal witness, status, hit_limit
        st, wit, nodes, canon, feas, maxd = res
        stats.nodes_expanded += nodes
        stats.canonical_rejections += canon
        stats.feasibility_prunes += feas
        stats.max_depth_reached = max(stats.max_depth_reached, maxd)
        if st == SearchStatus.REALIZED.value and witness is None:
            witness = {int(k): tuple(v) for k, v in wit.items()}
            status = SearchStatus.REALIZED
            return True
        if st == SearchStatus.LIMIT_REACHED.value:
            hit_limit = True
        return False

    with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
        if cfg.goal == Goal.FIRST_WITNESS:
            # Ordered waves so an early witness stops the remaining work;
            # within a wave results are merged in prefix order, keeping
            # the reported witness deterministic.
            wave = max(1, cfg.worker_count)
            found = False
            for start in range(0, len(jobs), wave):
                futs = [pool.submit(_job_search_prefix, j) for j in jobs[start:start + wave]]
                for fut in futs:
                    if absorb(fut.result()) and cfg.deterministic:
                        found = True
                # with deterministic=False a later wave could never start
                # anyway once a witness exists
                if found or (witness is not None):
                    break
        else:
            for res in pool.map(_job_search_prefix, jobs, chunksize=1):
                absorb(res)
    if status != SearchStatus.REALIZED and hit_limit:
        status = SearchStatus.LIMIT_REACHED
    stats.elapsed = time.monotonic() - t0
    return SearchOutcome(status, witness, stats, cfg.mode, grid.extent)


@dataclass
class MinimalExtentReport:
    """Smallest realizable extent with per-extent outcomes.

    ``certified`` is True only when every extent below ``extent_found``
    carries an exhaustive UNREALIZABLE outcome (no resource limits)."""

    extent_found: Optional[int]
    certified: bool
    per_extent: dict[int, SearchOutcome]


def minimal_extent(
    t: Triangulation,
    mode: RealizationMode,
    max_extent: int,
    cfg: SearchConfig = SearchConfig(),
) -> MinimalExtentReport:
    per: dict[int, SearchOutcome] = {}
    certified = True
    for e in range(0, max_extent + 1):
        run_cfg = SearchConfig(
            mode=mode,
            strategy=cfg.strategy,
            goal=Goal.EXHAUST,
            node_limit=cfg.node_limit,
            time_limit=cfg.time_limit,
            worker_count=cfg.worker_count,
            deterministic=cfg.deterministic,
            partition_depth=cfg.partition_depth,
        )
        out = realize(t, GridSpec(e), run_cfg)
        per[e] = out
        if out.status == SearchStatus.REALIZED:
            return MinimalExtentReport(e, certified, per)
        if out.status == SearchStatus.LIMIT_REACHED:
            certified = False
    return MinimalExtentReport(None, certified, per)


def max_general_position_subset(
    grid: GridSpec,
    target: Optional[int] = None,
    node_limit: Optional[int] = None,
    time_limit: Optional[float] = None,
) -> tuple[int, tuple[Point, ...], bool]:
    """Largest general-position subset of the grid, by branch and bound
    with canonical-prefix symmetry pruning.

    Returns (size, witness, exhausted).  ``exhausted`` False means a
    limit (or reaching ``target``) stopped the proof of maximality."""
    pts = grid.points()
    gpts = np.array(pts, dtype=np.int64)
    e = grid.extent
    index = {p: i for i, p in enumerate(pts)}
    sym_maps = []
    for g in grid_symmetries(grid):
        if g.perm == (0, 1, 2) and g.flips == (0, 0, 0):
            continue
        sym_maps.append(np.array([index[g.apply(p, e)] for p in pts], dtype=np.int64))
    best: list = [0, ()]
    placed: list[int] = []
    t0 = time.monotonic()
    deadline = t0 + time_limit if time_limit is not None else None
    nodes = [node_limit]
    exhausted = [True]

    def descend(pool: np.ndarray, stab: list[int]) -> None:
        if target is not None and best[0] >= target:
            exhausted[0] = False
            raise _LimitHit()
        if len(placed) + len(pool) <= best[0]:
            return
        for k in range(len(pool)):
            q_idx = int(pool[k])
            skip = False
            for h in stab:
                if int(sym_maps[h][q_idx]) < q_idx:
                    skip = True
                    break
            if skip:
                continue
            if nodes[0] is not None:
                if nodes[0] <= 0:
                    exhausted[0] = False
                    raise _LimitHit()
                nodes[0] -= 1
            if deadline is not None and time.monotonic() > deadline:
                exhausted[0] = False
                raise _LimitHit()
            q = gpts[q_idx]
            rest = pool[k + 1:]
            rel = gpts[rest] - q
            keep = np.ones(len(rest), dtype=bool)
            for a_idx in placed:
                d = gpts[a_idx] - q
                cr = _cross_rows(rel, d[None, :])
                keep &= (cr[:, 0] != 0) | (cr[:, 1] != 0) | (cr[:, 2] != 0)
            for ai in range(len(placed)):
                for bi in range(ai + 1, len(placed)):
                    da = gpts[placed[ai]] - q
                    db = gpts[placed[bi]] - q
                    nrm = _cross_rows(da[None, :], db[None, :])[0]
                    keep &= (rel @ nrm) != 0
            child_pool = rest[keep]
            child_stab = [h for h in stab if int(sym_maps[h][q_idx]) == q_idx]
            placed.append(q_idx)
            if len(placed) > best[0]:
                best[0] = len(placed)
                best[1] = tuple(pts[i] for i in placed)
            descend(child_pool, child_stab)
            placed.pop()

    try:
        descend(np.arange(len(pts), dtype=np.int64), list(range(len(sym_maps))))
    except _LimitHit:
        pass
    return best[0], best[1], exhausted[0]
