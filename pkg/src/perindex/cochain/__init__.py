"""Simplicial cochains, cohomology and cohomology operations."""
from .catalog import builtin, torsion5_complex
from .cochains import (Cochain, Cocycle, DegreeMismatch, IncompatibleModuli, ModulusMismatch, NotACocycle,
                       coboundary, coefficient_map, cup, cup_i, include_qz, multiply, power, reduce_mod)
from .cohomology import CohomClass, CohomologyGroup, cohomology, cohomology_groups
from .complex import (InvalidComplex, SimplicialComplex, boundary_of_simplex, cone, contract_edges, lens_space,
                      load_complex, product, relabel, rp2, rp4, save_complex, sphere_product, suspension)
from .operations import (CubeMultiple, DualityFailure, FundamentalClass, NotOrientable, NotPseudomanifold,
                         OddModulus, bockstein, bockstein_ladder_check, bockstein_qz, cube_and_Rn_multiple,
                         evaluate, fundamental_class, mod2_fundamental_class, pontrjagin_square, sq3_integral,
                         steenrod_sq, wu_class_mod2)

__all__ = [name for name in dir() if not name.startswith("_")]
