"""Derivations on presented rings and their extension to Ore localizations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..ore.fractions import OreFraction, frac_eq, frac_mul
from ..ore.oreset import OreSet
from ..rewrite.ncpoly import NCPoly, Word, as_poly
from ..rewrite.system import PresentedRing


class Derivation:
    """The derivation with the given values on generators, extended by Leibniz.

    Construction checks that every rewrite rule lead -> rep satisfies
    d(lead) = d(rep) in normal form, so d is well defined on the ring.
    """

    def __init__(self, carrier: PresentedRing, on_generators: Mapping[str, object], *, check: bool = True):
        self.carrier = carrier
        self.on_generators = {g: carrier.normal_form(as_poly(on_generators.get(g, 0))) for g in carrier.generators}
        unknown = set(on_generators) - set(carrier.generators)
        if unknown:
            raise ValueError(f"derivation given on unknown generators {sorted(unknown)}")
        if check:
            bad = self.inconsistent_rules()
            if bad:
                raise ValueError(f"derivation does not respect the relations: {bad}")

    def _word(self, w: Word) -> NCPoly:
        R = self.carrier
        out = NCPoly.zero()
        for i, g in enumerate(w):
            dg = self.on_generators[g]
            if dg.is_zero():
                continue
            out = out + NCPoly.word(*w[:i]) * dg * NCPoly.word(*w[i + 1:])
        return R.normal_form(out)

    def __call__(self, p) -> NCPoly:
        p = as_poly(p)
        out = NCPoly.zero()
        for w, c in p.items():
            out = out + self._word(w).scale(c)
        return self.carrier.normal_form(out)

    def inconsistent_rules(self) -> list[str]:
        bad = []
        for rule in self.carrier.system.rules:
            # apply Leibniz to the raw words, not to their normal forms
            lhs = self._word(rule.lead)
            rhs = NCPoly.zero()
            for w, c in rule.replacement.items():
                rhs = rhs + self._word(w).scale(c)
            if not self.carrier.normal_form(lhs - rhs).is_zero():
                bad.append(str(rule))
        return bad


def partial(carrier: PresentedRing, var: str) -> Derivation:
    """d/d var on a commutative presented ring."""
    return Derivation(carrier, {var: 1})


class LocalizedDerivation:
    """d(s^-1 r) = s^-1 d(r) - s^-1 d(s) s^-1 r on fractions over S."""

    def __init__(self, d: Derivation, S: OreSet, bound: int | None = None):
        if S.ring is not d.carrier:
            raise ValueError("derivation and Ore set live on different rings")
        self.d = d
        self.S = S
        self.bound = bound

    def __call__(self, x: OreFraction) -> OreFraction:
        S, b = self.S, self.bound
        s, r = x.denom, x.numer
        inv_s = OreFraction.make(S, s, 1)
        first = frac_mul(inv_s, OreFraction.of(S, self.d(r)), b)
        second = frac_mul(frac_mul(frac_mul(inv_s, OreFraction.of(S, self.d(s)), b), inv_s, b), OreFraction.of(S, r), b)
        return first - second

    def leibniz_gap(self, x: OreFraction, y: OreFraction) -> bool:
        """True when d(xy) = d(x) y + x d(y) exactly."""
        b = self.bound
        lhs = self(frac_mul(x, y, b))
        rhs = frac_mul(self(x), y, b) + frac_mul(x, self(y), b)
        return frac_eq(lhs, rhs, b)


def extend_derivation(d: Derivation, S: OreSet, bound: int | None = None) -> LocalizedDerivation:
    return LocalizedDerivation(d, S, bound)


@dataclass
class DerivationReport:
    well_defined_checked: int = 0
    well_defined_failures: list = field(default_factory=list)
    leibniz_checked: int = 0
    leibniz_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.well_defined_failures and not self.leibniz_failures


def sample_fractions(S: OreSet, count: int, seed=0, degree: int = 2) -> list[OreFraction]:
    rng = random.Random(seed)
    R = S.ring
    words = list(R.basis_words(degree))
    dens = list(S.elements(degree))
    out = []
    for _ in range(count):
        s = rng.choice(dens)
        r = NCPoly.zero()
        for _ in range(rng.randint(1, 2)):
            r = r + NCPoly._raw({rng.choice(words): rng.randint(-3, 3) or 1})
        out.append(OreFraction.make(S, s, R.normal_form(r)))
    return out


def check_localized_derivation(D: LocalizedDerivation, samples: Sequence[OreFraction], multipliers: Sequence | None = None) -> DerivationReport:
    """Representative swaps (s, r) -> (p s, p r) with p s in S, and Leibniz on sample pairs."""
    S, R, b = D.S, D.S.ring, D.bound
    rep = DerivationReport()
    mults = list(multipliers) if multipliers is not None else [g for g in S.generators]
    for x in samples:
        for p in mults:
            y = OreFraction.make(S, R.normal_form(p * x.denom), R.normal_form(p * x.numer))
            if not S.contains(y.denom):
                continue
            rep.well_defined_checked += 1
            if not frac_eq(D(x), D(y), b):
                rep.well_defined_failures.append(f"{x} vs {y}")
    for x in samples:
        for y in samples:
            rep.leibniz_checked += 1
            if not D.leibniz_gap(x, y):
                rep.leibniz_failures.append(f"{x} * {y}")
    return rep
