"""Exact realization toolkit for triangulated surfaces on integer grids.

Subpackage map:

- :mod:`gridrealizer.predicates` -- exact integer 3D predicates
- :mod:`gridrealizer.surfaces` -- triangulations, validation, classification
- :mod:`gridrealizer.canonical` -- canonical labeling / isomorphism
- :mod:`gridrealizer.census` -- isomorph-free enumeration of surfaces
- :mod:`gridrealizer.checking` -- embedding verification
- :mod:`gridrealizer.search` -- grid realization search engine
- :mod:`gridrealizer.formats` -- file formats (lex / json / plain, coords, OFF, OBJ)
- :mod:`gridrealizer.ledger` -- append-only results ledger
- :mod:`gridrealizer.cli` -- command-line interface
"""

from gridrealizer.predicates import (
    ConflictKind,
    GeometryError,
    SegSeg,
    collinear,
    general_position,
    orient3d,
    segment_segment,
    segment_triangle,
    triangles_compatible,
)

__version__ = "0.1.0"

ENGINE_VERSION = __version__
