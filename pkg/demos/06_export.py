"""Realize a surface and export the witness as OFF and OBJ meshes.

Run:  python demos/06_export.py   (writes to ./out/)
"""

from pathlib import Path

from gridrealizer.checking import RealizationMode
from gridrealizer.formats import off_to_triangulation, serialize_coords, write_obj, write_off
from gridrealizer.search import GridSpec, SearchConfig, realize
from gridrealizer.surfaces import octahedron

out_dir = Path("out")
out_dir.mkdir(exist_ok=True)

t = octahedron()
result = realize(t, GridSpec(2), SearchConfig(mode=RealizationMode.GENERAL_POSITION))
print("octahedron:", result.status.value)

coords = result.witness
(out_dir / "octahedron.json").write_text(serialize_coords(coords, extent=2))
(out_dir / "octahedron.off").write_text(write_off(t, coords))
(out_dir / "octahedron.obj").write_text(write_obj(t, coords))
print("wrote", sorted(p.name for p in out_dir.iterdir()))

# The OFF file round-trips back to the same complex and coordinates.
t2, coords2 = off_to_triangulation((out_dir / "octahedron.off").read_text())
assert t2.facets == t.facets and coords2 == coords
print("OFF round-trip ok")
