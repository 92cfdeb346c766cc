"""Verification that vertex coordinates geometrically realize a
triangulation: straight edges, flat triangles, no self-intersections.

Strictness levels:

- ANY: injective vertices, non-degenerate facets, and every facet pair
  meeting exactly in its shared face.  For a closed surface this pair
  condition covers all simplex-pair conditions, since every edge and
  vertex lies in some facet; the checker therefore iterates only the
  F(F-1)/2 facet pairs.
- PROPER: additionally no two facets sharing an edge are coplanar.
- GENERAL_POSITION: additionally no 3 vertex images are collinear and
  no 4 are coplanar.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from gridrealizer.predicates import (
    ConflictKind,
    _as_point,
    _cross,
    _orient3d_raw,
    _sub,
    triangles_compatible,
)
from gridrealizer.surfaces import NotClosedError, Triangulation, validate_closed_surface

Point = tuple[int, int, int]


class RealizationMode(enum.Enum):
    ANY = "any"
    PROPER = "proper"
    GENERAL_POSITION = "general-position"

    @property
    def rank(self) -> int:
        return _MODE_RANK[self]

    def includes(self, other: "RealizationMode") -> bool:
        """Strictness ordering: GENERAL_POSITION > PROPER > ANY."""
        return self.rank >= other.rank


_MODE_RANK = {
    RealizationMode.ANY: 0,
    RealizationMode.PROPER: 1,
    RealizationMode.GENERAL_POSITION: 2,
}


@dataclass(frozen=True)
class Embedding:
    """Injective map from external vertex ids to lattice points."""

    coords: tuple[tuple[int, Point], ...]

    @staticmethod
    def from_dict(d: Mapping[int, Sequence[int]]) -> "Embedding":
        return Embedding(tuple(sorted((int(v), _as_point(p)) for v, p in d.items())))

    def as_dict(self) -> dict[int, Point]:
        return dict(self.coords)


@dataclass(frozen=True)
class Violation:
    """One itemized failure; vertices and facets carry external ids."""

    kind: str
    details: tuple
    conflict: Optional[ConflictKind] = None

    def __str__(self) -> str:
        if self.conflict is not None:
            return f"{self.kind}{self.details}: {self.conflict.value}"
        return f"{self.kind}{self.details}"


@dataclass(frozen=True)
class CheckReport:
    valid: bool
    mode_checked: RealizationMode
    strongest_mode_satisfied: Optional[RealizationMode]
    violations: tuple[Violation, ...]
    truncated: bool = False


def _coerce_coords(t: Triangulation, emb) -> list[Point]:
    if isinstance(emb, Embedding):
        d = emb.as_dict()
    else:
        d = {int(v): p for v, p in emb.items()}
    missing = [v for v in range(1, t.n + 1) if v not in d]
    if missing:
        raise ValueError(f"embedding is partial: missing vertices {missing}")
    extra = sorted(set(d) - set(range(1, t.n + 1)))
    if extra:
        raise ValueError(f"embedding names unknown vertices {extra}")
    return [_as_point(d[v]) for v in range(1, t.n + 1)]


def check_realization(
    t: Triangulation,
    embedding,
    mode: RealizationMode = RealizationMode.GENERAL_POSITION,
    violation_cap: int = 100,
) -> CheckReport:
    """Full verdict with itemized violations (up to ``violation_cap``).

    The report's ``strongest_mode_satisfied`` is filled whenever the
    embedding is valid at ANY level, regardless of ``mode``.
    """
    info = validate_closed_surface(t)
    if not info.closed:
        raise NotClosedError(f"checker needs a closed surface: {info.reason}")
    pts = _coerce_coords(t, embedding)

    any_violations: list[Violation] = []
    proper_violations: list[Violation] = []
    gp_violations: list[Violation] = []
    truncated = False

    def room() -> int:
        return violation_cap - (
            len(any_violations) + len(proper_violations) + len(gp_violations)
        )

    # duplicate points
    seen: dict[Point, int] = {}
    duplicates = False
    for v in range(1, t.n + 1):
        p = pts[v - 1]
        if p in seen:
            duplicates = True
            if room() > 0:
                any_violations.append(Violation("DuplicatePoint", (seen[p], v)))
            else:
                truncated = True
        else:
            seen[p] = v

    # degenerate facets
    degenerate: set[tuple] = set()
    for f in t.facets:
        a, b, c = (pts[f[0]], pts[f[1]], pts[f[2]])
        if _cross(_sub(b, a), _sub(c, a)) == (0, 0, 0):
            degenerate.add(f)
            if room() > 0:
                any_violations.append(
                    Violation("DegenerateFace", (tuple(v + 1 for v in f),))
                )
            else:
                truncated = True

    # facet pairs (skipped when duplicate points make shared sets ambiguous)
    if not duplicates:
        nf = len(t.facets)
        for i in range(nf):
            fi = t.facets[i]
            if fi in degenerate:
                continue
            ti = (pts[fi[0]], pts[fi[1]], pts[fi[2]])
            for j in range(i + 1, nf):
                fj = t.facets[j]
                if fj in degenerate:
                    continue
                tj = (pts[fj[0]], pts[fj[1]], pts[fj[2]])
                shared = [pts[v] for v in fi if v in fj]
                kind = triangles_compatible(ti, tj, shared=shared)
                if kind is not None:
                    if room() > 0:
                        any_violations.append(
                            Violation(
                                "PairViolation",
                                (
                                    tuple(v + 1 for v in fi),
                                    tuple(v + 1 for v in fj),
                                ),
                                conflict=kind,
                            )
                        )
                    else:
                        truncated = True

    # coplanar neighboring facets (PROPER tier)
    if not duplicates:
        edge_facets: dict[tuple[int, int], list[tuple]] = {}
        for f in t.facets:
            a, b, c = f
            for e in ((a, b), (a, c), (b, c)):
                edge_facets.setdefault(e, []).append(f)
        for e, (f1, f2) in sorted(edge_facets.items()):
            if f1 in degenerate or f2 in degenerate:
                continue
            w1 = next(v for v in f1 if v not in e)
            w2 = next(v for v in f2 if v not in e)
            if _orient3d_raw(pts[e[0]], pts[e[1]], pts[w1], pts[w2]) == 0:
                if room() > 0:
                    proper_violations.append(
                        Violation(
                            "CoplanarNeighbors",
                            (tuple(v + 1 for v in f1), tuple(v + 1 for v in f2)),
                        )
                    )
                else:
                    truncated = True

    # general position (GENERAL_POSITION tier)
    if not duplicates:
        n = t.n
        for i in range(n):
            for j in range(i + 1, n):
                d = _sub(pts[j], pts[i])
                for k in range(j + 1, n):
                    if _cross(d, _sub(pts[k], pts[i])) == (0, 0, 0):
                        if room() > 0:
                            gp_violations.append(
                                Violation("CollinearTriple", (i + 1, j + 1, k + 1))
                            )
                        else:
                            truncated = True
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    nrm = _cross(_sub(pts[j], pts[i]), _sub(pts[k], pts[i]))
                    if nrm == (0, 0, 0):
                        continue  # already reported as collinear
                    for l in range(k + 1, n):
                        if (
                            nrm[0] * (pts[l][0] - pts[i][0])
                            + nrm[1] * (pts[l][1] - pts[i][1])
                            + nrm[2] * (pts[l][2] - pts[i][2])
                        ) == 0:
                            if room() > 0:
                                gp_violations.append(
                                    Violation(
                                        "CoplanarQuad", (i + 1, j + 1, k + 1, l + 1)
                                    )
                                )
                            else:
                                truncated = True

    any_ok = not any_violations
    proper_ok = any_ok and not proper_violations
    gp_ok = proper_ok and not gp_violations
    if gp_ok:
        strongest: Optional[RealizationMode] = RealizationMode.GENERAL_POSITION
    elif proper_ok:
        strongest = RealizationMode.PROPER
    elif any_ok:
        strongest = RealizationMode.ANY
    else:
        strongest = None

    relevant = list(any_violations)
    if mode.rank >= RealizationMode.PROPER.rank:
        relevant += proper_violations
    if mode.rank >= RealizationMode.GENERAL_POSITION.rank:
        relevant += gp_violations
    valid = strongest is not None and strongest.rank >= mode.rank
    return CheckReport(
        valid=valid,
        mode_checked=mode,
        strongest_mode_satisfied=strongest,
        violations=tuple(relevant),
        truncated=truncated,
    )


def strongest_mode(t: Triangulation, embedding, violation_cap: int = 100) -> Optional[RealizationMode]:
    """The maximal level at which the embedding is valid, or None."""
    report = check_realization(
        t, embedding, RealizationMode.GENERAL_POSITION, violation_cap
    )
    return report.strongest_mode_satisfied
