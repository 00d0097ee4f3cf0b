"""Poisson brackets on commutative presented rings and on their localizations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from ..ore.fractions import OreFraction, frac_eq, frac_mul
from ..ore.oreset import OreSet
from ..rewrite.ncpoly import NCPoly, as_poly
from ..rewrite.system import PresentedRing
from .derivations import Derivation, LocalizedDerivation, partial


class PoissonStructure:
    """A bracket given on generator pairs and extended as a biderivation.

    Only one of {x, y} and {y, x} needs to be supplied; the other is filled
    in by antisymmetry.  Jacobi on generator triples is checked here, which
    is enough for a biderivation on a polynomial ring.
    """

    def __init__(self, carrier: PresentedRing, bracket: Mapping[tuple[str, str], object], *, check: bool = True):
        if not carrier.is_commutative:
            raise ValueError("Poisson structures are only supported on commutative carriers")
        self.carrier = carrier
        gens = carrier.generators
        table: dict[tuple[str, str], NCPoly] = {}
        for (x, y), v in bracket.items():
            if x not in gens or y not in gens:
                raise ValueError(f"bracket given on unknown generators {(x, y)}")
            v = carrier.normal_form(as_poly(v))
            for key, val in (((x, y), v), ((y, x), -v)):
                if key in table and table[key] != val:
                    raise ValueError(f"bracket table is not antisymmetric at {key}")
                table[key] = val
        for x in gens:
            if not table.get((x, x), NCPoly.zero()).is_zero():
                raise ValueError(f"{{{x}, {x}}} must vanish")
        self.table = {(x, y): table.get((x, y), NCPoly.zero()) for x in gens for y in gens}
        self._partials = {g: partial(carrier, g) for g in gens}
        if check:
            bad = self.jacobi_failures()
            if bad:
                raise ValueError(f"Jacobi fails on generator triples {bad}")

    def bracket(self, f, g) -> NCPoly:
        """{f, g} = sum over x, y of d_x f * d_y g * {x, y}."""
        R = self.carrier
        f, g = R.normal_form(as_poly(f)), R.normal_form(as_poly(g))
        out = NCPoly.zero()
        for x in R.generators:
            fx = self._partials[x](f)
            if fx.is_zero():
                continue
            for y in R.generators:
                c = self.table[(x, y)]
                if c.is_zero():
                    continue
                gy = self._partials[y](g)
                if not gy.is_zero():
                    out = out + fx * gy * c
        return R.normal_form(out)

    def hamiltonian(self, b) -> Derivation:
        """X_b = {b, -} as a derivation of the carrier."""
        R = self.carrier
        b = R.normal_form(as_poly(b))
        return Derivation(R, {x: self.bracket(b, x) for x in R.generators}, check=False)

    def jacobi_failures(self) -> list[tuple[str, str, str]]:
        gens = self.carrier.generators
        bad = []
        for x, y, z in product(gens, repeat=3):
            total = (self.bracket(x, self.table[(y, z)]) + self.bracket(y, self.table[(z, x)])
                     + self.bracket(z, self.table[(x, y)]))
            if not self.carrier.normal_form(total).is_zero():
                bad.append((x, y, z))
        return bad


class LocalizedBracket:
    """The unique extension of a Poisson bracket to S^-1 R for central S.

    X^S_b extends {b, -} with the localized derivation formula, the map
    Y_f(b) = -X^S_b(f) is then extended the same way in its argument, and
    {f, g} = Y^S_f(g).
    """

    def __init__(self, P: PoissonStructure, S: OreSet, bound: int | None = None):
        if S.ring is not P.carrier:
            raise ValueError("Poisson structure and multiplicative set live on different rings")
        self.P = P
        self.S = S
        self.bound = bound
        self._x_cache: dict = {}

    def _x(self, b: NCPoly) -> LocalizedDerivation:
        key = self.P.carrier.format(b)
        if key not in self._x_cache:
            self._x_cache[key] = LocalizedDerivation(self.P.hamiltonian(b), self.S, self.bound)
        return self._x_cache[key]

    def lift(self, r) -> OreFraction:
        return OreFraction.of(self.S, r)

    def y(self, f: OreFraction, b: NCPoly) -> OreFraction:
        return -self._x(b)(f)

    def __call__(self, f: OreFraction, g: OreFraction) -> OreFraction:
        S, bd = self.S, self.bound
        if not isinstance(f, OreFraction):
            f = self.lift(f)
        if not isinstance(g, OreFraction):
            g = self.lift(g)
        t, b = g.denom, g.numer
        inv_t = OreFraction.make(S, t, 1)
        first = frac_mul(inv_t, self.y(f, b), bd)
        second = frac_mul(frac_mul(frac_mul(inv_t, self.y(f, t), bd), inv_t, bd), OreFraction.of(S, b), bd)
        return first - second


def extend_poisson(P: PoissonStructure, S: OreSet, bound: int | None = None) -> LocalizedBracket:
    return LocalizedBracket(P, S, bound)


@dataclass
class PoissonReport:
    antisymmetry_checked: int = 0
    leibniz_checked: int = 0
    jacobi_checked: int = 0
    restriction_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "antisymmetry_checked": self.antisymmetry_checked,
            "leibniz_checked": self.leibniz_checked,
            "jacobi_checked": self.jacobi_checked,
            "restriction_checked": self.restriction_checked,
            "failures": list(self.failures),
        }


def sample_triples(samples: Sequence, count: int, seed=0) -> list[tuple]:
    rng = random.Random(seed)
    return [tuple(rng.choice(samples) for _ in range(3)) for _ in range(count)]


def check_localized_bracket(B: LocalizedBracket, samples: Sequence[OreFraction], *, triples: int = 100,
                            seed: int = 0, polys: Sequence | None = None) -> PoissonReport:
    """Antisymmetry, Leibniz in the second slot, Jacobi and restriction on samples."""
    bd = B.bound
    rep = PoissonReport()
    zero = OreFraction.of(B.S, 0)
    for f in samples:
        for g in samples:
            rep.antisymmetry_checked += 1
            if not frac_eq(B(f, g) + B(g, f), zero, bd):
                rep.failures.append(f"antisymmetry: {f}, {g}")
    for f, g, h in sample_triples(samples, triples, seed):
        rep.leibniz_checked += 1
        lhs = B(f, frac_mul(g, h, bd))
        rhs = frac_mul(B(f, g), h, bd) + frac_mul(g, B(f, h), bd)
        if not frac_eq(lhs, rhs, bd):
            rep.failures.append(f"leibniz: {f}, {g}, {h}")
        rep.jacobi_checked += 1
        total = B(f, B(g, h)) + B(g, B(h, f)) + B(h, B(f, g))
        if not frac_eq(total, zero, bd):
            rep.failures.append(f"jacobi: {f}, {g}, {h}")
    R = B.P.carrier
    polys = list(polys) if polys is not None else list(R.gens()) + [R.normal_form(x * y) for x in R.gens() for y in R.gens()]
    for a in polys:
        for b in polys:
            rep.restriction_checked += 1
            if not frac_eq(B(B.lift(a), B.lift(b)), B.lift(B.P.bracket(a, b)), bd):
                rep.failures.append(f"restriction: {R.format(a)}, {R.format(b)}")
    return rep
