"""Holomorphs, regular subgroups and their gamma-maps for finite groups given by Cayley tables."""

from .autos import AutGroup, Automorphism, automorphism_group, isomorphism_search
from .catalog import parse_group_spec
from .errors import BudgetExceeded, HoloError, NotPerfectError, OutOfScope, SpecParseError, VerificationError
from .group_model import CayleyGroup, Subgroup, lambda_rep, named_group, rho
from .holomorph import GammaMap, circ_structure, classify_regular, holomorph, t_group
from .perfect_decomp import enumerate_J_perfect, krs_inn
from .perm_core import Perm, PermGroup

__version__ = "0.1.0"

__all__ = [
    "AutGroup", "Automorphism", "automorphism_group", "isomorphism_search", "parse_group_spec",
    "BudgetExceeded", "HoloError", "NotPerfectError", "OutOfScope", "SpecParseError", "VerificationError",
    "CayleyGroup", "Subgroup", "lambda_rep", "named_group", "rho", "GammaMap", "circ_structure",
    "classify_regular", "holomorph", "t_group", "enumerate_J_perfect", "krs_inn", "Perm", "PermGroup",
]
