"""Exact computation of momentum images for symplectic torus actions that need not be Hamiltonian."""

from .exactalg import ExtScalar, hermite_complement, hermite_normal_form, integer_kernel, smith_normal_form
from .geometry import Cone, PolySet, Polytope, convex_hull, cone_from_generators, cone_from_inequalities, dual_cone
from .model import ActionModel, StratumDatum, load, load_file, save, validate
from .momentum import (
    check_effective,
    exact_subalgebra,
    exactness_cone,
    half_dim_hamiltonian,
    local_wedge,
    momentum_image,
    rationality_degree,
    verify_local_global,
)

__version__ = "0.1.0"

__all__ = [
    "ActionModel",
    "Cone",
    "ExtScalar",
    "PolySet",
    "Polytope",
    "StratumDatum",
    "check_effective",
    "cone_from_generators",
    "cone_from_inequalities",
    "convex_hull",
    "dual_cone",
    "exact_subalgebra",
    "exactness_cone",
    "half_dim_hamiltonian",
    "hermite_complement",
    "hermite_normal_form",
    "integer_kernel",
    "load",
    "load_file",
    "local_wedge",
    "momentum_image",
    "rationality_degree",
    "save",
    "smith_normal_form",
    "validate",
    "verify_local_global",
]
