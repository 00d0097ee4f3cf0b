"""Gabriel filters, torsion and localization over ZZ and QQ[x]."""

from .fgmodule import FgModule, ModuleMap
from .filters import AxiomReport, FilterSpec, check_axioms, colon, in_filter, intersection_member
from .localize import (
    ColimitClass,
    ColimitModule,
    DeligneLimit,
    GabrielQ,
    TorsionReport,
    deligne_limit,
    gabriel_Q,
    in_sigma,
    torsion_sigma,
)

__all__ = [
    "AxiomReport", "ColimitClass", "ColimitModule", "DeligneLimit", "FgModule", "FilterSpec",
    "GabrielQ", "ModuleMap", "TorsionReport", "check_axioms", "colon", "deligne_limit",
    "gabriel_Q", "in_filter", "in_sigma", "intersection_member", "torsion_sigma",
]
