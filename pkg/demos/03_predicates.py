"""Exact integer predicates: the arithmetic layer.

Everything is decided by signs of integer determinants; intersection
points are classified, never constructed.

Run:  python demos/03_predicates.py
"""

from gridrealizer.predicates import (
    collinear,
    general_position,
    orient3d,
    segment_segment,
    segment_triangle,
    triangles_compatible,
)

# Orientation of four points: +1 / -1 / 0 (coplanar).
print("unit tetrahedron:", orient3d((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)))
print("square is coplanar:", orient3d((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)))
print("collinear:", collinear((0, 0, 0), (2, 4, 6), (3, 6, 9)))

# Closed-segment intersection classification.
print("crossing diagonals:",
      segment_segment(((0, 0, 0), (2, 2, 0)), ((0, 2, 0), (2, 0, 0))).value)
print("collinear overlap:",
      segment_segment(((0, 0, 0), (2, 0, 0)), ((1, 0, 0), (3, 0, 0))).value)

# Segment against triangle: None means the contact is exactly the
# declared shared face.
tri = ((2, 0, 0), (0, 2, 0), (0, 0, 2))
print("piercing segment:", segment_triangle(((0, 0, 0), (2, 2, 2)), tri).value)
print("segment from a shared corner, pointing away:",
      segment_triangle(((2, 0, 0), (3, 0, 0)), tri, shared=[(2, 0, 0)]))

# Triangle pairs must meet exactly in their common face.
t1 = ((0, 0, 0), (3, 0, 0), (0, 3, 0))
t2 = ((0, 0, 0), (3, 0, 0), (0, 0, 3))
print("hinged facets:", triangles_compatible(t1, t2, shared=[(0, 0, 0), (3, 0, 0)]))
t3 = ((1, 1, -1), (1, 1, 1), (3, 3, 1))
print("piercing facets:", triangles_compatible(((0, 0, 0), (4, 0, 0), (0, 4, 0)), t3).value)

# General position: no 3 collinear, no 4 coplanar.
print("unit simplex:", general_position([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]))
bad = general_position([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
print("flat square:", bad.kind, bad.indices)
