"""Command-line front end.

Commands: analyze, check, realize, bound, gpmax, enumerate, export,
batch.  Exit codes: 0 success / valid / realized, 1 negative verdict,
2 usage or parse error, 3 resource limit reached.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from gridrealizer import ENGINE_VERSION
from gridrealizer.canonical import canonical_label
from gridrealizer.census import (
    EnumerationConstraints,
    InadmissibleConstraints,
    enumerate_surfaces,
)
from gridrealizer.checking import RealizationMode, check_realization
from gridrealizer.formats import (
    ParseError,
    parse_coords,
    parse_triangulations,
    serialize_coords,
    serialize_lex,
    write_obj,
    write_off,
)
from gridrealizer.ledger import ResultsLedger, make_record
from gridrealizer.search import (
    Goal,
    GridSpec,
    SearchConfig,
    SearchStatus,
    Strategy,
    max_general_position_subset,
    minimal_extent,
    realize,
)
from gridrealizer.surfaces import (
    NotClosedError,
    Triangulation,
    heawood_bound,
    validate_closed_surface,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3

_MODES = {
    "any": RealizationMode.ANY,
    "proper": RealizationMode.PROPER,
    "general-position": RealizationMode.GENERAL_POSITION,
    "gp": RealizationMode.GENERAL_POSITION,
}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_triangulations(path: str, fmt: str | None) -> list[Triangulation]:
    return parse_triangulations(_read_text(path), fmt)


def _search_config(args, mode: RealizationMode) -> SearchConfig:
    return SearchConfig(
        mode=mode,
        strategy=Strategy(args.strategy) if hasattr(args, "strategy") else Strategy.FUSED,
        goal=Goal(args.goal) if hasattr(args, "goal") else Goal.FIRST_WITNESS,
        node_limit=getattr(args, "node_limit", None),
        time_limit=getattr(args, "time_limit", None),
        worker_count=getattr(args, "workers", 1),
        deterministic=not getattr(args, "nondeterministic", False),
    )


def _label(t: Triangulation) -> str:
    return json.dumps([list(f) for f in canonical_label(t)], separators=(",", ":"))


# --- commands ----------------------------------------------------------------


def cmd_analyze(args) -> int:
    ts = _load_triangulations(args.file, args.format)
    all_closed = True
    for i, t in enumerate(ts):
        info = validate_closed_surface(t)
        name = t.name or f"#{i}"
        if info.closed:
            hw = heawood_bound(info.chi, info.orientable)
            kind = "orientable" if info.orientable else "non-orientable"
            print(
                f"{name}: V={info.V} E={info.E} F={info.F} chi={info.chi} "
                f"closed {kind} genus={info.genus} heawood={hw}"
            )
        else:
            all_closed = False
            print(
                f"{name}: V={info.V} E={info.E} F={info.F} chi={info.chi} "
                f"NOT CLOSED ({info.reason})"
            )
    return EXIT_OK if all_closed else EXIT_NEGATIVE


def cmd_check(args) -> int:
    t = _load_triangulations(args.triangulation, args.format)[0]
    _, coords = parse_coords(_read_text(args.coords))
    mode = _MODES[args.mode]
    report = check_realization(t, coords, mode, violation_cap=args.cap)
    strongest = report.strongest_mode_satisfied
    print(
        f"mode={mode.value} valid={report.valid} "
        f"strongest={strongest.value if strongest else 'none'}"
    )
    for v in report.violations:
        print(f"  violation: {v}")
    if report.truncated:
        print(f"  ... report truncated at cap {args.cap}")
    return EXIT_OK if report.valid else EXIT_NEGATIVE


def _run_realize(t: Triangulation, args, mode: RealizationMode):
    cfg = _search_config(args, mode)
    return realize(t, GridSpec(args.extent), cfg)


def cmd_realize(args) -> int:
    t = _load_triangulations(args.triangulation, args.format)[0]
    mode = _MODES[args.mode]
    out = _run_realize(t, args, mode)
    s = out.stats
    print(
        f"status={out.status.value} extent={args.extent} mode={mode.value} "
        f"nodes={s.nodes_expanded} canonical_rejections={s.canonical_rejections} "
        f"feasibility_prunes={s.feasibility_prunes} max_depth={s.max_depth_reached} "
        f"elapsed={s.elapsed:.2f}s"
    )
    ledger = ResultsLedger(args.ledger)
    ledger.append(
        make_record(
            _label(t), args.extent, mode.value, out.status.value, out.witness,
            vars(s).copy(),
        )
    )
    if out.status == SearchStatus.REALIZED:
        coords_text = serialize_coords(out.witness, extent=args.extent)
        if args.out:
            Path(args.out).write_text(coords_text, encoding="utf-8")
        else:
            sys.stdout.write(coords_text)
        if args.off:
            Path(args.off).write_text(write_off(t, out.witness), encoding="utf-8")
        return EXIT_OK
    if out.status == SearchStatus.UNREALIZABLE:
        return EXIT_NEGATIVE
    return EXIT_LIMIT


def cmd_bound(args) -> int:
    t = _load_triangulations(args.triangulation, args.format)[0]
    mode = _MODES[args.mode]
    cfg = _search_config(args, mode)
    report = minimal_extent(t, mode, args.max_extent, cfg)
    for e in sorted(report.per_extent):
        out = report.per_extent[e]
        print(f"extent {e}: {out.status.value} ({out.stats.elapsed:.2f}s)")
    if report.extent_found is not None:
        cert = "certified" if report.certified else "NOT certified (limits hit below)"
        print(f"minimal extent: {report.extent_found} ({cert})")
        if args.out:
            wit = report.per_extent[report.extent_found].witness
            Path(args.out).write_text(
                serialize_coords(wit, extent=report.extent_found), encoding="utf-8"
            )
        return EXIT_OK
    limited = any(
        o.status == SearchStatus.LIMIT_REACHED for o in report.per_extent.values()
    )
    print(f"no realization up to extent {args.max_extent}")
    return EXIT_LIMIT if limited else EXIT_NEGATIVE


def cmd_gpmax(args) -> int:
    size, witness, exhausted = max_general_position_subset(
        GridSpec(args.extent),
        target=args.target,
        node_limit=args.node_limit,
        time_limit=args.time_limit,
    )
    print(
        f"extent {args.extent}: max general-position subset {'=' if exhausted else '>='} {size}"
    )
    print("witness:", " ".join(str(p) for p in witness))
    if exhausted or (args.target is not None and size >= args.target):
        return EXIT_OK
    return EXIT_LIMIT


def cmd_enumerate(args) -> int:
    orientable = None
    if args.orientable is not None:
        orientable = args.orientable == "true"
    try:
        cons = EnumerationConstraints(args.vertices, chi=args.chi, orientable=orientable)
        ts = enumerate_surfaces(cons, workers=args.workers)
    except InadmissibleConstraints as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    lines = [serialize_lex(t) for t in ts]
    text = "\n".join(lines) + ("\n" if lines else "")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"{len(ts)} triangulations -> {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_export(args) -> int:
    t = _load_triangulations(args.triangulation, args.format)[0]
    _, coords = parse_coords(_read_text(args.coords))
    base = Path(args.out)
    off_path = base.with_suffix(".off")
    obj_path = base.with_suffix(".obj")
    off_path.write_text(write_off(t, coords), encoding="utf-8")
    obj_path.write_text(write_obj(t, coords), encoding="utf-8")
    print(f"wrote {off_path} and {obj_path}")
    return EXIT_OK


def cmd_batch(args) -> int:
    ts = _load_triangulations(args.file, args.format)
    mode = _MODES[args.mode]
    ledger = ResultsLedger(args.ledger)
    done = ledger.keys()
    statuses = []
    for i, t in enumerate(ts):
        label = _label(t)
        key = (label, args.extent, mode.value, ENGINE_VERSION)
        if key in done:
            print(f"[{i + 1}/{len(ts)}] already in ledger, skipping")
            continue
        out = _run_realize(t, args, mode)
        ledger.append(
            make_record(
                label, args.extent, mode.value, out.status.value, out.witness,
                vars(out.stats).copy(),
            )
        )
        statuses.append(out.status)
        print(f"[{i + 1}/{len(ts)}] {out.status.value} ({out.stats.elapsed:.2f}s)")
    latest = ledger.latest()
    final = [
        latest[(l, args.extent, mode.value, ENGINE_VERSION)].status
        for l in {_label(t) for t in ts}
        if (l, args.extent, mode.value, ENGINE_VERSION) in latest
    ]
    if any(s == SearchStatus.UNREALIZABLE.value for s in final):
        return EXIT_NEGATIVE
    if any(s == SearchStatus.LIMIT_REACHED.value for s in final):
        return EXIT_LIMIT
    return EXIT_OK


# --- parser --------------------------------------------------------------------


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=sorted(_MODES), default="general-position")
    p.add_argument("--goal", choices=[g.value for g in Goal], default="first_witness")
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="fused")
    p.add_argument("--node-limit", type=int, default=None, dest="node_limit")
    p.add_argument("--time-limit", type=float, default=None, dest="time_limit")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--nondeterministic", action="store_true")
    p.add_argument("--ledger", default=None, help="results ledger path")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gridrealizer",
        description="Exact verification and exhaustive search for polyhedral "
        "realizations of triangulated surfaces on small integer grids.",
    )
    ap.add_argument("--version", action="version", version=ENGINE_VERSION)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify triangulations (chi, genus, Heawood bound)")
    p.add_argument("file")
    p.add_argument("--format", choices=["lex", "json", "plain"], default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="verify a coordinate assignment")
    p.add_argument("triangulation")
    p.add_argument("coords")
    p.add_argument("--mode", choices=sorted(_MODES), default="general-position")
    p.add_argument("--format", choices=["lex", "json", "plain"], default=None)
    p.add_argument("--cap", type=int, default=100, help="violation report cap")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("realize", help="search for a grid realization")
    p.add_argument("triangulation")
    p.add_argument("--format", choices=["lex", "json", "plain"], default=None)
    p.add_argument("--extent", type=int, required=True)
    _add_search_flags(p)
    p.add_argument("--out", default=None, help="write witness coordinates (json)")
    p.add_argument("--off", default=None, help="also write an OFF mesh")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("bound", help="minimal realizable extent up to a maximum")
    p.add_argument("triangulation")
    p.add_argument("--format", choices=["lex", "json", "plain"], default=None)
    p.add_argument("--max-extent", type=int, required=True, dest="max_extent")
    _add_search_flags(p)
    p.add_argument("--out", default=None, help="write witness of the minimal extent")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("gpmax", help="largest general-position subset of a grid")
    p.add_argument("--extent", type=int, required=True)
    p.add_argument("--target", type=int, default=None)
    p.add_argument("--node-limit", type=int, default=None, dest="node_limit")
    p.add_argument("--time-limit", type=float, default=None, dest="time_limit")
    p.set_defaults(func=cmd_gpmax)

    p = sub.add_parser("enumerate", help="isomorph-free census of closed surfaces")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--chi", type=int, default=None)
    p.add_argument("--orientable", choices=["true", "false"], default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("export", help="export a realization to OFF and OBJ")
    p.add_argument("triangulation")
    p.add_argument("coords")
    p.add_argument("--format", choices=["lex", "json", "plain"], default=None)
    p.add_argument("--out", required=True, help="output base name")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("batch", help="realize a list of triangulations with resume")
    p.add_argument("file")
    p.add_argument("--format", choices=["lex", "json", "plain"], default=None)
    p.add_argument("--extent", type=int, required=True)
    _add_search_flags(p)
    p.set_defaults(func=cmd_batch)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, NotClosedError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
