"""The filter L_S of ideals over a commutative principal ideal domain.

Ideals are represented by a generator.  Over a commutative base the
condition "(J : r) meets S for every r" collapses to "J meets S", which
for J = (d) means that d divides some element of S, i.e. every prime
factor of d divides a generator of S.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ..ore.oreset import CentralSet
from ..ring_core.rings import Ring


class FilterSpec:
    """L_S for the multiplicative set generated by ``generators``."""

    def __init__(self, base: Ring, generators: Sequence, name: str | None = None):
        self.base = base
        self.S = CentralSet(base, generators)
        self.generators = self.S.generators
        self.name = name or f"L[{self.S.name}]"

    def contains(self, d) -> bool:
        return in_filter(d, self)

    def product(self):
        return self.S.product()

    def __repr__(self):
        return f"FilterSpec({self.name})"


def in_filter(J, F: FilterSpec) -> bool:
    """Whether the ideal (J) belongs to L_S."""
    R = F.base
    d = R.coerce(J)
    if R.is_zero(d):
        return False
    _, rest = F.S.saturation_part(d)
    return R.is_unit(rest)


def colon(R: Ring, d, r):
    """Generator of (d) : r = {x : x r in (d)}."""
    d, r = R.coerce(d), R.coerce(r)
    if R.is_zero(d):
        # (0 : r) is R when r = 0 and 0 otherwise (R is a domain)
        return R.one_value() if R.is_zero(r) else R.zero_value()
    return R.canonical(R.exact_div(d, R.gcd(d, r)))


def lcm(R: Ring, a, b):
    if R.is_zero(a) or R.is_zero(b):
        return R.zero_value()
    return R.canonical(R.exact_div(R.mul(a, b), R.gcd(a, b)))


def contained_in(R: Ring, d, e) -> bool:
    """(d) is a subset of (e)."""
    return R.divides(e, d)


@dataclass
class AxiomReport:
    window: tuple
    results: dict = field(default_factory=dict)
    counterexamples: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return all(self.results.values())


def check_axioms(member: Callable, R: Ring, ideals: Iterable, multipliers: Iterable | None = None) -> AxiomReport:
    """Check (F1)-(F3), (UF), (GF) for a membership predicate on sample ideals.

    ``ideals`` are generators of the sample ideals.  Quantifiers over ring
    elements range over ``multipliers`` (defaulting to the same sample);
    quantifiers over elements j of an ideal (d) range over d * multiplier.
    The zero ideal plays the role of the excluded empty/zero case in (F1).
    """
    ideals = [R.coerce(d) for d in ideals]
    mults = [R.coerce(r) for r in (multipliers if multipliers is not None else ideals)]
    rep = AxiomReport(window=(len(ideals), len(mults)))
    cx = rep.counterexamples
    inL = {i: member(d) for i, d in enumerate(ideals)}

    f1 = member(R.one_value()) and not member(R.zero_value())
    if not f1:
        cx["F1"] = "unit ideal excluded or zero ideal included"
    rep.results["F1"] = f1

    ok2 = ok3 = True
    for i, d in enumerate(ideals):
        for k, e in enumerate(ideals):
            if inL[i] and inL[k] and not member(lcm(R, d, e)):
                ok2 = False
                cx.setdefault("F2", (R.format(d), R.format(e)))
            if inL[i] and contained_in(R, d, e) and not inL[k]:
                ok3 = False
                cx.setdefault("F3", (R.format(d), R.format(e)))
    rep.results["F2"], rep.results["F3"] = ok2, ok3

    okUF = True
    for i, d in enumerate(ideals):
        rhs = all(member(colon(R, d, r)) for r in mults)
        if inL[i] != rhs:
            okUF = False
            cx.setdefault("UF", R.format(d))
    rep.results["UF"] = okUF

    okGF = True
    for i, d in enumerate(ideals):
        if not inL[i]:
            continue
        js = [R.mul(d, r) for r in mults]
        for k, e in enumerate(ideals):
            if all(member(colon(R, e, j)) for j in js) and not inL[k]:
                okGF = False
                cx.setdefault("GF", (R.format(d), R.format(e)))
    rep.results["GF"] = okGF
    return rep


def intersection_member(*filters: FilterSpec) -> Callable:
    """Membership predicate of the intersection of several filters."""
    return lambda d: all(in_filter(d, F) for F in filters)
