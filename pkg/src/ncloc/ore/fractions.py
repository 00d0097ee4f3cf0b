"""Left fractions s^-1 r and their arithmetic.

Fractions are stored un-normalized as (denominator, numerator) pairs.
Sums and products pick Ore witnesses through the set object, so the same
code serves presented rings (:class:`OreSet`) and commutative Euclidean
bases (:class:`CentralSet`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..errors import Inconclusive, MixedRings, NoWitnessWithinBound
from ..ring_core.rings import Ring


@dataclass(frozen=True, eq=False)
class OreFraction:
    denom: Any
    numer: Any
    S: Any

    @classmethod
    def make(cls, S, denom, numer) -> "OreFraction":
        return cls(S.coerce(denom), S.coerce(numer), S)

    @classmethod
    def of(cls, S, r) -> "OreFraction":
        """The image 1^-1 r of a ring element."""
        return cls(S.one(), S.coerce(r), S)

    def _check(self, other: "OreFraction"):
        if not isinstance(other, OreFraction):
            raise TypeError("expected an OreFraction")
        if other.S is not self.S:
            raise MixedRings("fractions over different multiplicative sets")

    def __mul__(self, other):
        return frac_mul(self, other)

    def __add__(self, other):
        return frac_add(self, other)

    def __neg__(self):
        return OreFraction(self.denom, self.S.neg(self.numer), self.S)

    def __sub__(self, other):
        return frac_add(self, -other)

    def __eq__(self, other):
        if not isinstance(other, OreFraction):
            return NotImplemented
        return frac_eq(self, other)

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self, bound: int | None = None) -> bool:
        return frac_eq(self, OreFraction(self.S.one(), self.S.zero(), self.S), bound)

    def pair(self) -> tuple[str, str]:
        return self.S.format(self.denom), self.S.format(self.numer)

    def __str__(self):
        d, n = self.pair()
        return f"({d})^-1 ({n})"

    __repr__ = __str__


def frac_mul(x: OreFraction, y: OreFraction, bound: int | None = None) -> OreFraction:
    """s1^-1 r1 * s2^-1 r2 = (t s1)^-1 (u r2) where t r1 = u s2."""
    x._check(y)
    S = x.S
    t, u = S.witness(y.denom, x.numer, bound)
    return OreFraction(S.mul(t, x.denom), S.mul(u, y.numer), S)


def frac_add(x: OreFraction, y: OreFraction, bound: int | None = None) -> OreFraction:
    """s1^-1 r1 + s2^-1 r2 = (t s1)^-1 (t r1 + u r2) where t s1 = u s2."""
    x._check(y)
    S = x.S
    t, u = S.witness(y.denom, x.denom, bound)
    numer = S.add(S.mul(t, x.numer), S.mul(u, y.numer))
    return OreFraction(S.mul(t, x.denom), numer, S)


def frac_eq(x: OreFraction, y: OreFraction, bound: int | None = None) -> bool:
    """True or False when decided; raises Inconclusive otherwise."""
    x._check(y)
    try:
        return x.S.equivalent(x.denom, x.numer, y.denom, y.numer, bound)
    except NoWitnessWithinBound as exc:
        raise Inconclusive("fraction equality needs a common multiple that was not found", exc.bound) from exc


class OreLocalization(Ring):
    """S^-1 R viewed through the generic ring interface.

    Payloads are (denominator, numerator) pairs.  Equality is the
    fraction relation, so the hash is constant: callers should not use
    fractions as dictionary keys.
    """

    is_division = False

    def __init__(self, S):
        self.S = S
        rid = getattr(S.ring, "ring_id", "R")
        self.ring_id = f"{rid}[{S.name}^-1]"
        self.is_commutative = bool(S.commutative)

    def coerce(self, value):
        if isinstance(value, OreFraction):
            return (value.denom, value.numer)
        if isinstance(value, tuple) and len(value) == 2:
            return (self.S.coerce(value[0]), self.S.coerce(value[1]))
        return (self.S.one(), self.S.coerce(value))

    def _f(self, a) -> OreFraction:
        return OreFraction(a[0], a[1], self.S)

    def add(self, a, b):
        return self.coerce(frac_add(self._f(a), self._f(b)))

    def neg(self, a):
        return (a[0], self.S.neg(a[1]))

    def mul(self, a, b):
        return self.coerce(frac_mul(self._f(a), self._f(b)))

    def eq(self, a, b) -> bool:
        return frac_eq(self._f(a), self._f(b))

    def hash_value(self, a) -> int:
        return 0

    def format(self, a) -> str:
        return str(self._f(a))
