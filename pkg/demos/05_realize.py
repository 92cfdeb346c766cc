"""Exhaustive realization search on small grids.

A REALIZED outcome carries a checker-verified witness; UNREALIZABLE is
an exhaustion certificate for that grid and mode; LIMIT_REACHED proves
nothing.  The searches here are toy-sized and finish in seconds.

Run:  python demos/05_realize.py
"""

from gridrealizer.checking import RealizationMode
from gridrealizer.search import (
    Goal,
    GridSpec,
    SearchConfig,
    max_general_position_subset,
    minimal_extent,
    realize,
)
from gridrealizer.surfaces import octahedron, tetrahedron

GP = RealizationMode.GENERAL_POSITION

# The tetrahedron needs only the unit cube.
out = realize(tetrahedron(), GridSpec(1), SearchConfig(mode=GP))
print("tetrahedron in {0,1}^3:", out.status.value)
print("  witness:", out.witness)
print("  nodes:", out.stats.nodes_expanded,
      "| symmetry rejections:", out.stats.canonical_rejections)

# ... and provably nothing smaller works.
report = minimal_extent(tetrahedron(), GP, max_extent=2)
print("minimal extent:", report.extent_found, "certified:", report.certified)

# The octahedron in general position.
out = realize(octahedron(), GridSpec(2), SearchConfig(mode=GP))
print("octahedron in {0,1,2}^3:", out.status.value)
print("  witness:", out.witness)

# Largest general-position subsets: these cap what any n-vertex complex
# can do in general position on the grid.
for e in (0, 1, 2):
    size, _, exhausted = max_general_position_subset(GridSpec(e))
    print(f"max general-position subset of extent {e}: {size} (exhausted={exhausted})")

# Resource limits are first-class and never fake a certificate.
out = realize(octahedron(), GridSpec(2), SearchConfig(mode=GP, node_limit=3, goal=Goal.EXHAUST))
print("with a 3-node budget:", out.status.value)
