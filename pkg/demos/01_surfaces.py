"""Triangulated surfaces: parsing, validation, classification.

Run:  python demos/01_surfaces.py
"""

from gridrealizer.formats import parse_triangulation, serialize_lex
from gridrealizer.surfaces import (
    heawood_bound,
    projective_plane_six,
    seven_vertex_torus,
    tetrahedron,
    validate_closed_surface,
    vertex_link,
)

# Parse a facet list in the one-line "lex" format (1-based vertex ids).
t = parse_triangulation("tetra=[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]")
print("parsed:", t.name, "with", t.n, "vertices,", len(t.facets), "facets")

info = validate_closed_surface(t)
print(f"closed={info.closed}  V={info.V} E={info.E} F={info.F} chi={info.chi}")
print(f"orientable={info.orientable} genus={info.genus}")

# The link of a vertex is the cycle of its neighbors.
link = vertex_link(t, 1)
print("link of vertex 1:", link.order)

# A non-closed complex is detected with a reason, not an exception.
disk = parse_triangulation("[[1,2,3],[1,3,4]]")
print("open disk:", validate_closed_surface(disk).reason)

# The classical lower bound on vertex counts, exact integer arithmetic.
for chi, orientable, name in [
    (2, True, "sphere"),
    (0, True, "torus"),
    (0, False, "Klein bottle"),
    (-2, True, "genus-2 surface"),
]:
    print(f"Heawood bound for {name}: {heawood_bound(chi, orientable)} vertices")

# Two classics, ready-made:
torus = seven_vertex_torus()
print("7-vertex torus:", serialize_lex(torus))
rp2 = projective_plane_six()
print("6-vertex projective plane is orientable?",
      validate_closed_surface(rp2).orientable)
