"""Permutation polynomials of GF(q^2) and GF(q^3) built from rational maps on roots of unity."""

from .errors import PermPolyError
from .field_core import Field, FieldElement, make_field, parse_field_spec
from .poly_core import INFINITY, Polynomial, RationalMap, bullet, mu_reverse
from .association import (
    AssociationCertificate,
    associate_of,
    find_association,
    is_beta_associated,
    is_self_associated,
)
from .mu_maps import bijects_mu_to_line, permutes_mu, roots_in_mu
from .verify import PermutationReport, check_agw_criterion, is_permutation_of_field
from .families import ConstructionReport, FamilySpec, construct, enumerate_good_pairs

__version__ = "0.1.0"

__all__ = [
    "PermPolyError", "Field", "FieldElement", "make_field", "parse_field_spec",
    "INFINITY", "Polynomial", "RationalMap", "bullet", "mu_reverse",
    "AssociationCertificate", "associate_of", "find_association", "is_beta_associated",
    "is_self_associated", "bijects_mu_to_line", "permutes_mu", "roots_in_mu",
    "PermutationReport", "check_agw_criterion", "is_permutation_of_field",
    "ConstructionReport", "FamilySpec", "construct", "enumerate_good_pairs",
]
