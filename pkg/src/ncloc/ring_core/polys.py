"""Univariate polynomials and rational functions over the rationals.

Both types are immutable and hashable.  They mix freely with ``int`` and
``Fraction`` operands, which lets them serve as scalar coefficients of
noncommutative polynomials (the symbolic-q mode) and as the Euclidean
domain Q[x] used by the module code.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

_SCALAR = (int, Fraction)


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class UPoly:
    """Polynomial in one variable, coefficients stored low degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Sequence = (), var: str = "x"):
        object.__setattr__(self, "coeffs", _trim(coeffs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("UPoly is immutable")

    @classmethod
    def x(cls, var: str = "x") -> "UPoly":
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var: str = "x") -> "UPoly":
        return cls((c,), var)

    # --- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return UPoly([c / lead for c in self.coeffs], self.var)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "UPoly":
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    # --- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "UPoly | None":
        if isinstance(other, UPoly):
            return other
        if isinstance(other, _SCALAR):
            return UPoly((other,), self.var)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return UPoly([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return UPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return UPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UPoly((1,), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(o.coeffs) + 1, 0)
        lead = o.coeffs[-1]
        dg = len(o.coeffs) - 1
        while len(rem) - 1 >= dg and rem:
            shift = len(rem) - 1 - dg
            factor = rem[-1] / lead
            quot[shift] = factor
            for k, c in enumerate(o.coeffs):
                rem[shift + k] -= factor * c
            while rem and rem[-1] == 0:
                rem.pop()
        return UPoly(quot, self.var), UPoly(rem, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        if isinstance(other, _SCALAR):
            return UPoly([c / other for c in self.coeffs], self.var)
        return RationalFunction(self, other)

    def __rtruediv__(self, other):
        return RationalFunction(other, self)

    # --- comparison ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, _SCALAR):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(("UPoly", self.coeffs))

    def __repr__(self):
        return f"UPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                mono = str(c)
            else:
                power = self.var if k == 1 else f"{self.var}^{k}"
                mono = power if c == 1 else ("-" + power if c == -1 else f"{c}*{power}")
            parts.append(mono)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """Return (g, u, v) with u*a + v*b = g and g monic."""
    var = a.var
    r0, r1 = a, b
    s0, s1 = UPoly((1,), var), UPoly((), var)
    t0, t1 = UPoly((), var), UPoly((1,), var)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lead = r0.lc()
    return r0.monic(), s0 / lead, t0 / lead


class RationalFunction:
    """Reduced quotient num/den of univariate polynomials, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, var: str | None = None):
        if var is None:
            var = next((p.var for p in (num, den) if isinstance(p, UPoly)), "x")
        n = num if isinstance(num, UPoly) else UPoly((num,), var)
        d = den if isinstance(den, UPoly) else UPoly((den,), var)
        if d.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(n, d)
        if not g.is_zero() and g.degree > 0:
            n, d = n // g, d // g
        lead = d.lc()
        object.__setattr__(self, "num", n / lead)
        object.__setattr__(self, "den", d / lead)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def var(cls, name: str = "x") -> "RationalFunction":
        return cls(UPoly.x(name), 1)

    @property
    def variable(self) -> str:
        return self.num.var

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (UPoly,) + _SCALAR):
            return RationalFunction(other, 1, self.variable)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.degree == 0:
            return hash(self.num)
        return hash(("RF", self.num, self.den))

    def __call__(self, value):
        return Fraction(self.num(value)) / self.den(value)

    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"
