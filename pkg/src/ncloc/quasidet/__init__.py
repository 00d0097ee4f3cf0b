"""Quasideterminants, Cramer rules and identity checks."""

from .core import CramerSolution, cramer_left, cramer_right, inv_via_qdet, invert_or_none, qdet, qdet_or_none
from .generate import MAT2, random_mat2, random_mat2_matrix, random_rational_matrix
from .identities import FAMILIES, HOLDS, MISSING, VIOLATED, FamilyResult, IdentityReport, Quasiminors, applicable_families, identity_suite

__all__ = [
    "CramerSolution", "FAMILIES", "FamilyResult", "HOLDS", "IdentityReport", "MAT2", "MISSING",
    "Quasiminors", "applicable_families", "VIOLATED", "cramer_left", "cramer_right", "identity_suite", "inv_via_qdet",
    "invert_or_none", "qdet", "qdet_or_none", "random_mat2", "random_mat2_matrix",
    "random_rational_matrix",
]
