"""Derivations, Poisson brackets and first-order calculi on localizations."""

from .derivations import (
    Derivation,
    DerivationReport,
    LocalizedDerivation,
    check_localized_derivation,
    extend_derivation,
    partial,
    sample_fractions,
)
from .fodc import (
    DiffOreReport,
    FodcSpec,
    central_calculus,
    differential_ore_check,
    differential_ore_witness,
    q_plane_calculus,
)
from .poisson import LocalizedBracket, PoissonReport, PoissonStructure, check_localized_bracket, extend_poisson

__all__ = [
    "Derivation", "DerivationReport", "DiffOreReport", "FodcSpec", "LocalizedBracket",
    "LocalizedDerivation", "PoissonReport", "PoissonStructure", "central_calculus",
    "check_localized_bracket", "check_localized_derivation", "differential_ore_check",
    "differential_ore_witness", "extend_derivation", "extend_poisson", "partial",
    "q_plane_calculus", "sample_fractions",
]
