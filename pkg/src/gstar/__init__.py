"""Exact workbench for finite-dimensional G-graded algebras with homogeneous involution."""

from .algebra import (
    GradedStarAlgebra,
    direct_sum,
    exchange_double,
    extend_scalars,
    make_algebra,
    quotient_by_ideal,
    structurally_equal,
    subalgebra_generated,
    twisted_group_algebra,
)
from .catalog import CatalogId, build, iota_list, normalize_fcp_involution
from .codim import Flavor, codim_report, codimension, contains_at_degree, polynomial_bound
from .errors import GStarError
from .exactfield import CycScalar, ExactMatrix
from .groups import find_prime_element, involutions, make_group
from .growth import check_dichotomy, classify_growth, exponential_witness, separation_suite
from .identities import GStarPolynomial, evaluate, is_identity, multilinearize, parse
from .structure import jacobson_radical, radical_powers, split_idempotents, wm_profile

__version__ = "0.1.0"

__all__ = [
    "CatalogId",
    "CycScalar",
    "ExactMatrix",
    "Flavor",
    "GStarError",
    "GStarPolynomial",
    "GradedStarAlgebra",
    "build",
    "check_dichotomy",
    "classify_growth",
    "codim_report",
    "codimension",
    "contains_at_degree",
    "direct_sum",
    "evaluate",
    "exchange_double",
    "exponential_witness",
    "extend_scalars",
    "find_prime_element",
    "involutions",
    "iota_list",
    "is_identity",
    "jacobson_radical",
    "make_algebra",
    "make_group",
    "multilinearize",
    "normalize_fcp_involution",
    "parse",
    "polynomial_bound",
    "quotient_by_ideal",
    "radical_powers",
    "separation_suite",
    "split_idempotents",
    "structurally_equal",
    "subalgebra_generated",
    "twisted_group_algebra",
    "wm_profile",
]
