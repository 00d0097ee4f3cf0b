"""Ore sets, left fractions, modules of fractions and the related checks."""

from .commutative import RelationReport, commutative_relation, commutative_relation_check
from .counterexample import NonexistenceRecord, counterexample_nonexistence
from .filtered import FilteredReport, FiltrationSpec, filtered_ore_check, filtered_ore_witness
from .fractions import OreFraction, OreLocalization, frac_add, frac_eq, frac_mul
from .globalization import CoverReport, cover_exactness
from .laws import LawReport, fraction_law_check, monomial_denominators
from .modules import (
    CommutativeModuleLocalization,
    ModFraction,
    ModuleLocalization,
    PresentedModule,
    mod_action,
    mod_eq,
)
from .oreset import (
    CentralSet,
    OreSet,
    PredicateReport,
    check_predicates,
    ideal_IS_check,
    ore_witness,
    product_set_witnesses,
)
from .search import SolveResult, default_bound, solve_left_system, solve_over_words

__all__ = [
    "CentralSet", "CommutativeModuleLocalization", "LawReport", "fraction_law_check", "monomial_denominators", "CoverReport", "FilteredReport", "FiltrationSpec",
    "ModFraction", "ModuleLocalization", "NonexistenceRecord", "OreFraction", "OreLocalization",
    "OreSet", "PredicateReport", "PresentedModule", "RelationReport", "SolveResult",
    "check_predicates", "commutative_relation", "commutative_relation_check",
    "counterexample_nonexistence", "cover_exactness", "default_bound", "filtered_ore_check",
    "filtered_ore_witness", "frac_add", "frac_eq", "frac_mul", "ideal_IS_check", "mod_action",
    "mod_eq", "ore_witness", "product_set_witnesses", "solve_left_system", "solve_over_words",
]
