"""Period vectors and index bounds for topological Brauer classes.

Subpackages and modules:

* ``zmodule``  -- Smith normal form and finitely generated abelian groups
* ``cochain``  -- simplicial complexes, cohomology, cup-i products, Steenrod squares
* ``forms``    -- linking pairings and trilinear forms over F_3
* ``ahss``     -- the (0,0) column of the twisted Atiyah-Hirzebruch spectral sequence
* ``bounds``   -- index bounds, sharp values and the admissibility filter
"""

__version__ = "0.1.0"
