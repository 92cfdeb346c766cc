"""Verifying coordinate assignments at three strictness levels.

ANY            straight edges, flat triangles, no self-intersections
PROPER         additionally no coplanar neighboring triangles
GENERAL_POSITION  additionally no 3 collinear / 4 coplanar vertices

Run:  python demos/04_checking.py
"""

from gridrealizer.checking import RealizationMode, check_realization, strongest_mode
from gridrealizer.surfaces import tetrahedron, triangle_bipyramid

t = tetrahedron()
good = {1: (0, 0, 0), 2: (1, 0, 0), 3: (0, 1, 0), 4: (0, 0, 1)}
report = check_realization(t, good, RealizationMode.GENERAL_POSITION)
print("tetrahedron on the unit simplex:", report.valid,
      "| strongest:", report.strongest_mode_satisfied.value)

flat = {1: (0, 0, 0), 2: (1, 0, 0), 3: (0, 1, 0), 4: (1, 1, 0)}
report = check_realization(t, flat, RealizationMode.ANY)
print("tetrahedron squashed flat:", report.valid)
for v in report.violations[:3]:
    print("   ", v)

# A bipyramid with one deliberately flat hinge: fine at ANY, rejected at
# PROPER (coplanar neighbors), rejected at GENERAL_POSITION (flat quad).
bp = triangle_bipyramid()
hinged = {1: (0, 0, 0), 2: (2, 0, 0), 3: (1, 0, 2), 4: (1, 1, 0), 5: (1, -1, 0)}
for mode in RealizationMode:
    print(f"bipyramid, flat hinge, {mode.value}:",
          check_realization(bp, hinged, mode).valid)
print("strongest mode satisfied:", strongest_mode(bp, hinged).value)
