"""Free algebra, reduction systems and presented rings."""

from .examples import (
    commutative_polynomials,
    counterexample_ring,
    free_algebra,
    q_plane,
    q_plane_truncated,
    truncated_polynomials,
)
from .ncpoly import NCPoly, Word, as_poly
from .system import (
    Ambiguity,
    PresentedRing,
    ReductionSystem,
    Rule,
    WordOrder,
    basis_words,
    is_confluent,
    normal_form,
    overlap_ambiguities,
)

__all__ = [
    "Ambiguity", "NCPoly", "PresentedRing", "ReductionSystem", "Rule", "Word", "WordOrder",
    "as_poly", "basis_words", "commutative_polynomials", "counterexample_ring", "free_algebra",
    "is_confluent", "normal_form", "overlap_ambiguities", "q_plane", "q_plane_truncated",
    "truncated_polynomials",
]
