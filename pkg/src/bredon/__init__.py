"""Exact engine for bigraded equivariant cohomology of finite cell
complexes with an order-two symmetry, over the field with two elements."""

from .m2algebra import (AntipodalShift, Bidegree, Decomposition, FreeShift,
                        M2Element, classify_ideal, baer_extend, hom_basis,
                        mul_m2, summand_data)
from .cwcell import (AntipodalSphere, DisjointUnion, EquivariantCellComplex,
                     FreeOrbit, Point, RepSphere, Suspend, TrivialSphere,
                     TwistedProjectivePlane, Wedge, WhiskerSphere, build,
                     validate_complex)
from .gridmodule import (BigradedModule, Window, borel, check_consequences,
                         cohomology_dims, decompose_module, default_window,
                         dualize, is_standard_isomorphic, realize)
from .analyzer import (AnalysisResult, GeneralMap, InvariantProfile, analyze,
                       compute_profile, forgetful_feasible, les_extension)

__version__ = "0.1.0"

__all__ = [
    "AnalysisResult", "AntipodalShift", "AntipodalSphere", "Bidegree",
    "BigradedModule", "Decomposition", "DisjointUnion",
    "EquivariantCellComplex", "FreeOrbit", "FreeShift", "GeneralMap",
    "InvariantProfile", "M2Element", "Point", "RepSphere", "Suspend",
    "TrivialSphere", "TwistedProjectivePlane", "Wedge", "WhiskerSphere",
    "Window", "analyze", "baer_extend", "borel", "build",
    "check_consequences", "classify_ideal", "cohomology_dims",
    "compute_profile", "decompose_module", "default_window", "dualize",
    "forgetful_feasible", "hom_basis", "is_standard_isomorphic",
    "les_extension", "mul_m2", "realize", "summand_data",
    "validate_complex",
]
