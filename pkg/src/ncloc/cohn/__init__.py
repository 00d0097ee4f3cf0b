"""Universal (Cohn) localization, rational closures and Sigma-torsion."""

from .closure import (
    ClosureCheck,
    ClosureElement,
    closure_product,
    closure_sum,
    laurent_setup,
    random_closure_check,
    rational_closure_solve,
)
from .presentation import (
    CohnPresentation,
    check_universal,
    cohn_presentation,
    compare_with_ore,
    induced_map,
    qdet_first_presentation,
)
from .sigma import EvaluationMap, MatrixSigma, block_upper, diag_blocks
from .torsion import (
    TorsionCertificate,
    TorsionResult,
    combine_certificates,
    permutation_matrix,
    preradical_check,
    sigma_torsion,
    transform_certificate,
)

__all__ = [
    "ClosureCheck", "ClosureElement", "CohnPresentation", "laurent_setup", "random_closure_check", "EvaluationMap", "MatrixSigma", "TorsionCertificate",
    "TorsionResult", "block_upper", "check_universal", "closure_product", "closure_sum",
    "cohn_presentation", "combine_certificates", "compare_with_ore", "diag_blocks", "induced_map",
    "permutation_matrix", "preradical_check", "qdet_first_presentation", "rational_closure_solve",
    "sigma_torsion", "transform_certificate",
]
