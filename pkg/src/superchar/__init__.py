"""Superclasses and supercharacters of Sylow p-subgroups of the classical groups
of types B, C and D over F_q (q odd), with exact verification oracles."""

from .cyclotomic import CycNumber, cyc_arith, cyc_as_rational, cyc_conjugate, root_of_unity
from .errors import BoundExceeded, IdentityViolation, MembershipError, SupercharError
from .finite_field import (
    FieldCtx,
    char_eta,
    char_theta,
    ff_arith,
    ff_trace,
    field,
    gauss_sum,
    quadratic_sum,
)
from .group import SylowGroup
from .oracle import SUITES, VerifyReport, verify_suite
from .roots import BasicPair, Family, Root, basic_subsets, count_basic_pairs, enumerate_basic_pairs
from .superclass import SuperclassModel
from .supercharacter import CharacterModel
from .table import SuperTable

__version__ = "0.1.0"

__all__ = [
    "BasicPair",
    "BoundExceeded",
    "CharacterModel",
    "CycNumber",
    "Family",
    "FieldCtx",
    "IdentityViolation",
    "MembershipError",
    "Root",
    "SUITES",
    "SuperTable",
    "SupercharError",
    "SuperclassModel",
    "SylowGroup",
    "VerifyReport",
    "basic_subsets",
    "char_eta",
    "char_theta",
    "count_basic_pairs",
    "cyc_arith",
    "cyc_as_rational",
    "cyc_conjugate",
    "enumerate_basic_pairs",
    "ff_arith",
    "ff_trace",
    "field",
    "gauss_sum",
    "quadratic_sum",
    "root_of_unity",
    "verify_suite",
]
