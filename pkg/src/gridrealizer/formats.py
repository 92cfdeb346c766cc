"""File formats: triangulation grammars (lex / json / plain),
coordinate files, and OFF / OBJ mesh export.

Grammars:

- lex: one triangulation per line, ``name=[[a,b,c],[d,e,f],...]`` with
  the ``name=`` prefix optional and whitespace ignored; 1-based ids.
- json: ``{"n": int, "facets": [[a,b,c], ...], "name": optional}``, or a
  top-level array of such objects.
- plain: one facet per line, three integers, blank lines ignored; one
  triangulation per file.

Format auto-detection looks at the first non-blank character: ``{`` or
a json array of objects means json, a digit means plain, anything else
lex.  Coordinate files are json:
``{"extent": int, "coords": {"1": [x,y,z], ...}}``.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from gridrealizer.surfaces import Triangulation, TriangulationError, edge_set

Point = tuple[int, int, int]


class ParseError(ValueError):
    pass


def detect_format(text: str) -> str:
    for ch in text:
        if ch.isspace():
            continue
        if ch == "{":
            return "json"
        if ch == "[":
            # bare facet list is lex; an array of objects is json
            rest = text.lstrip()[1:].lstrip()
            return "json" if rest.startswith("{") else "lex"
        if ch.isdigit():
            return "plain"
        return "lex"
    raise ParseError("empty input")


def parse_triangulations(text: str, fmt: Optional[str] = None) -> list[Triangulation]:
    if fmt is None:
        fmt = detect_format(text)
    if fmt == "lex":
        return _parse_lex(text)
    if fmt == "json":
        return _parse_json(text)
    if fmt == "plain":
        return [_parse_plain(text)]
    raise ParseError(f"unknown format {fmt!r} (expected lex, json or plain)")


def parse_triangulation(text: str, fmt: Optional[str] = None) -> Triangulation:
    ts = parse_triangulations(text, fmt)
    if len(ts) != 1:
        raise ParseError(f"expected exactly one triangulation, found {len(ts)}")
    return ts[0]


def _facets_from_obj(obj, where: str) -> list:
    if not isinstance(obj, list) or not all(
        isinstance(f, list) and len(f) == 3 and all(isinstance(v, int) for v in f)
        for f in obj
    ):
        raise ParseError(f"{where}: facet list must be [[a,b,c], ...] of integers")
    return obj


def _parse_lex(text: str) -> list[Triangulation]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        name = None
        body = line
        if "=" in line and not line.startswith("["):
            name, body = line.split("=", 1)
            name = name.strip()
        try:
            obj = json.loads(body)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: malformed facet list: {exc}") from None
        facets = _facets_from_obj(obj, f"line {lineno}")
        try:
            out.append(Triangulation.from_facets(facets, name=name))
        except TriangulationError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not out:
        raise ParseError("empty input")
    return out


def _parse_json(text: str) -> list[Triangulation]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed json: {exc}") from None
    objs = obj if isinstance(obj, list) else [obj]
    out = []
    for i, o in enumerate(objs):
        if not isinstance(o, dict) or "facets" not in o:
            raise ParseError(f"object {i}: expected {{'n': ..., 'facets': ...}}")
        facets = _facets_from_obj(o["facets"], f"object {i}")
        try:
            t = Triangulation.from_facets(facets, name=o.get("name"))
        except TriangulationError as exc:
            raise ParseError(f"object {i}: {exc}") from None
        if "n" in o and o["n"] != t.n:
            raise ParseError(
                f"object {i}: declared n={o['n']} but facets use 1..{t.n}"
            )
        out.append(t)
    if not out:
        raise ParseError("empty input")
    return out


def _parse_plain(text: str) -> Triangulation:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected three vertex ids")
        try:
            facets.append([int(p) for p in parts])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex id") from None
    try:
        return Triangulation.from_facets(facets)
    except TriangulationError as exc:
        raise ParseError(str(exc)) from None


def serialize_lex(t: Triangulation) -> str:
    body = json.dumps([list(f) for f in t.external_facets], separators=(",", ":"))
    return f"{t.name}={body}" if t.name else body


def serialize_json(t: Triangulation) -> str:
    obj = {"n": t.n, "facets": [list(f) for f in t.external_facets]}
    if t.name:
        obj["name"] = t.name
    return json.dumps(obj)


def serialize_plain(t: Triangulation) -> str:
    return "\n".join(" ".join(str(v) for v in f) for f in t.external_facets) + "\n"


def serialize_triangulations(ts: Sequence[Triangulation], fmt: str) -> str:
    if fmt == "lex":
        return "\n".join(serialize_lex(t) for t in ts) + "\n"
    if fmt == "json":
        if len(ts) == 1:
            return serialize_json(ts[0]) + "\n"
        return json.dumps(
            [json.loads(serialize_json(t)) for t in ts], indent=None
        ) + "\n"
    if fmt == "plain":
        if len(ts) != 1:
            raise ParseError("plain format holds exactly one triangulation")
        return serialize_plain(ts[0])
    raise ParseError(f"unknown format {fmt!r}")


# --- coordinate files --------------------------------------------------------


def parse_coords(text: str) -> tuple[Optional[int], dict[int, Point]]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed coordinate file: {exc}") from None
    if not isinstance(obj, dict) or "coords" not in obj:
        raise ParseError('coordinate file must be {"extent": ..., "coords": {...}}')
    coords = {}
    for k, v in obj["coords"].items():
        if not (isinstance(v, list) and len(v) == 3 and all(isinstance(c, int) for c in v)):
            raise ParseError(f"vertex {k}: coordinates must be three integers")
        try:
            coords[int(k)] = tuple(v)
        except ValueError:
            raise ParseError(f"bad vertex id {k!r}") from None
    extent = obj.get("extent")
    if extent is not None and not isinstance(extent, int):
        raise ParseError("extent must be an integer")
    return extent, coords


def serialize_coords(coords: dict[int, Sequence[int]], extent: Optional[int] = None) -> str:
    obj = {
        "extent": extent,
        "coords": {str(v): list(coords[v]) for v in sorted(coords)},
    }
    if extent is None:
        del obj["extent"]
    return json.dumps(obj, indent=2) + "\n"


# --- OFF / OBJ ---------------------------------------------------------------


def write_off(t: Triangulation, coords: dict[int, Sequence[int]]) -> str:
    edges = edge_set(t)
    lines = ["OFF", f"{t.n} {len(t.facets)} {len(edges)}"]
    for v in range(1, t.n + 1):
        x, y, z = coords[v]
        lines.append(f"{float(x)} {float(y)} {float(z)}")
    for f in t.facets:
        lines.append(f"3 {f[0]} {f[1]} {f[2]}")
    return "\n".join(lines) + "\n"


def read_off(text: str) -> tuple[list[tuple[float, float, float]], list[tuple[int, ...]]]:
    tokens: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    if not tokens:
        raise ParseError("empty OFF file")
    pos = 0
    if tokens[0].upper() == "OFF":
        pos = 1
    try:
        nv, nf = int(tokens[pos]), int(tokens[pos + 1])
        pos += 3  # vertex count, face count, edge count
        verts = []
        for _ in range(nv):
            verts.append(tuple(float(tokens[pos + i]) for i in range(3)))
            pos += 3
        faces = []
        for _ in range(nf):
            k = int(tokens[pos])
            faces.append(tuple(int(tokens[pos + 1 + i]) for i in range(k)))
            pos += 1 + k
    except (ValueError, IndexError) as exc:
        raise ParseError(f"malformed OFF file: {exc}") from None
    return verts, faces


def off_to_triangulation(text: str) -> tuple[Triangulation, dict[int, Point]]:
    """Round-trip helper: integer-coordinate triangle OFF back to a
    triangulation plus coordinates."""
    verts, faces = read_off(text)
    coords = {}
    for i, (x, y, z) in enumerate(verts):
        if not (x.is_integer() and y.is_integer() and z.is_integer()):
            raise ParseError("OFF vertex coordinates are not integers")
        coords[i + 1] = (int(x), int(y), int(z))
    if any(len(f) != 3 for f in faces):
        raise ParseError("only triangle faces supported")
    t = Triangulation.from_facets([[a + 1, b + 1, c + 1] for a, b, c in faces])
    return t, coords


def write_obj(t: Triangulation, coords: dict[int, Sequence[int]]) -> str:
    lines = [f"# triangulated surface, {t.n} vertices, {len(t.facets)} facets"]
    for v in range(1, t.n + 1):
        x, y, z = coords[v]
        lines.append(f"v {float(x)} {float(y)} {float(z)}")
    for f in t.external_facets:
        lines.append(f"f {f[0]} {f[1]} {f[2]}")
    return "\n".join(lines) + "\n"
