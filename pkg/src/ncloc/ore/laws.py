"""Seeded checks of the ring laws for left fractions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..rewrite.ncpoly import NCPoly
from .fractions import OreFraction, frac_add, frac_eq, frac_mul
from .oreset import OreSet

LAWS = (
    "representative_independence",
    "mul_associative",
    "add_commutative",
    "add_associative",
    "left_distributive",
    "right_distributive",
)


@dataclass
class LawReport:
    samples: int
    bound: int | None
    checked: dict = field(default_factory=lambda: {k: 0 for k in LAWS})
    failures: dict = field(default_factory=lambda: {k: [] for k in LAWS})

    @property
    def all_hold(self) -> bool:
        return not any(self.failures.values())

    def as_dict(self) -> dict:
        return {
            "samples": self.samples,
            "bound": self.bound,
            "checked": dict(self.checked),
            "failures": {k: list(v) for k, v in self.failures.items() if v},
            "all_hold": self.all_hold,
        }


def monomial_denominators(S: OreSet, degree: int = 2) -> list[NCPoly]:
    """Closure elements that are single words (up to a scalar)."""
    return [s for s in S.elements(degree) if len(s.words()) == 1]


def random_fraction(S: OreSet, rng: random.Random, dens, degree: int = 2) -> OreFraction:
    R = S.ring
    words = list(R.basis_words(degree))
    r = NCPoly.zero()
    for _ in range(rng.randint(1, 2)):
        r = r + NCPoly._raw({rng.choice(words): rng.randint(-3, 3) or 1})
    return OreFraction.make(S, rng.choice(dens), R.normal_form(r))


def fraction_law_check(S: OreSet, samples: int = 200, seed: int = 0, *, degree: int = 2,
                       bound: int | None = None) -> LawReport:
    """Each sample draws a triple (x, y, z) and checks every law once on it."""
    rng = random.Random(seed)
    R = S.ring
    dens = monomial_denominators(S, degree)
    rep = LawReport(samples, bound)

    def eq(law, a, b, where):
        rep.checked[law] += 1
        if not frac_eq(a, b, bound):
            rep.failures[law].append(where)

    mul = lambda a, b: frac_mul(a, b, bound)  # noqa: E731
    add = lambda a, b: frac_add(a, b, bound)  # noqa: E731
    for k in range(samples):
        x, y, z = (random_fraction(S, rng, dens, degree) for _ in range(3))
        where = f"sample {k}: x={x}, y={y}, z={z}"
        p = rng.choice(S.generators)
        x2 = OreFraction.make(S, R.normal_form(p * x.denom), R.normal_form(p * x.numer))
        eq("representative_independence", mul(x, y), mul(x2, y), where)
        eq("representative_independence", add(x, y), add(x2, y), where)
        eq("mul_associative", mul(mul(x, y), z), mul(x, mul(y, z)), where)
        eq("add_commutative", add(x, y), add(y, x), where)
        eq("add_associative", add(add(x, y), z), add(x, add(y, z)), where)
        eq("left_distributive", mul(x, add(y, z)), add(mul(x, y), mul(x, z)), where)
        eq("right_distributive", mul(add(x, y), z), add(mul(x, z), mul(y, z)), where)
    return rep
