"""Exact fusion-ring computations for simple current extensions and their commutants."""

from .abgroup import FinAbGroup, Subgroup, subgroup_generate
from .catalog import affine_sl2, deform, lattice_rank1, parafermion_problem, parafermion_sl2, sl2_inverse_problem
from .errors import DomainError, ExtensionError, FuseliftError, InconsistencyError, ParseError
from .exactnum import QZ
from .extension import ExtensionProblem, build_U_ring, fuse_U, sector_table, validate_extension
from .fusion import FusionRing, ring_isomorphic, ring_validate
from .inverse import InverseProblem, derive, derive_commutant_ring, round_trip
from .quadspace import QuadraticSpace, make_quadratic_space, perp

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "ExtensionError",
    "ExtensionProblem",
    "FinAbGroup",
    "FuseliftError",
    "FusionRing",
    "InconsistencyError",
    "InverseProblem",
    "ParseError",
    "QZ",
    "QuadraticSpace",
    "Subgroup",
    "affine_sl2",
    "build_U_ring",
    "deform",
    "derive",
    "derive_commutant_ring",
    "fuse_U",
    "lattice_rank1",
    "make_quadratic_space",
    "parafermion_problem",
    "parafermion_sl2",
    "perp",
    "ring_isomorphic",
    "ring_validate",
    "round_trip",
    "sector_table",
    "sl2_inverse_problem",
    "subgroup_generate",
    "validate_extension",
]
