"""Pluggable exact rings.

A :class:`Ring` works on raw payload values (``int``, ``Fraction``,
tuples of fractions, ...).  :class:`RingElement` pairs a payload with its
ring so that ordinary operators can be used, and refuses to combine
elements of different rings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..errors import MixedRings, NotInvertible
from .polys import RationalFunction, UPoly, poly_gcd, poly_xgcd


class Ring:
    """Interface every ring implementation follows.

    Subclasses override the payload-level operations.  ``is_division``
    says whether every nonzero element is invertible, ``is_commutative``
    whether multiplication commutes.
    """

    ring_id: str = "ring"
    is_division: bool = False
    is_commutative: bool = False

    # payload level -----------------------------------------------------
    def coerce(self, value) -> Any:
        raise NotImplementedError

    def zero_value(self):
        return self.coerce(0)

    def one_value(self):
        return self.coerce(1)

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero_value())

    def inv(self, a):
        raise NotInvertible(f"{self.ring_id} has no inverse for {self.format(a)}")

    def hash_value(self, a) -> int:
        return hash(a)

    def format(self, a) -> str:
        return str(a)

    # element level -----------------------------------------------------
    def __call__(self, value) -> "RingElement":
        if isinstance(value, RingElement):
            if value.ring != self:
                raise MixedRings(f"{value.ring.ring_id} element used in {self.ring_id}")
            return value
        return RingElement(self, self.coerce(value))

    def zero(self) -> "RingElement":
        return RingElement(self, self.zero_value())

    def one(self) -> "RingElement":
        return RingElement(self, self.one_value())

    def __eq__(self, other):
        return isinstance(other, Ring) and other.ring_id == self.ring_id

    def __hash__(self):
        return hash(self.ring_id)

    def __repr__(self):
        return self.ring_id


@dataclass(frozen=True, eq=False)
class RingElement:
    ring: Ring
    value: Any

    @property
    def ring_id(self) -> str:
        return self.ring.ring_id

    def _other(self, other) -> Any:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise MixedRings(f"cannot combine {self.ring.ring_id} with {other.ring.ring_id}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.ring.coerce(other)
        raise MixedRings(f"cannot combine {self.ring.ring_id} with {type(other).__name__}")

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.value, self._other(other)))

    def __radd__(self, other):
        return RingElement(self.ring, self.ring.add(self._other(other), self.value))

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return RingElement(self.ring, self.ring.sub(self._other(other), self.value))

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.value, self._other(other)))

    def __rmul__(self, other):
        return RingElement(self.ring, self.ring.mul(self._other(other), self.value))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> "RingElement":
        return RingElement(self.ring, self.ring.inv(self.value))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, RingElement) and other.ring != self.ring:
            raise MixedRings(f"cannot compare {self.ring.ring_id} with {other.ring.ring_id}")
        try:
            o = self._other(other)
        except MixedRings:
            return NotImplemented
        return self.ring.eq(self.value, o)

    def __hash__(self):
        return hash((self.ring.ring_id, self.ring.hash_value(self.value)))

    def __repr__(self):
        return f"{self.ring.ring_id}({self.ring.format(self.value)})"

    def __str__(self):
        return self.ring.format(self.value)


def inv(x: RingElement) -> RingElement:
    """Two-sided inverse; raises NotInvertible where none exists."""
    return x.inverse()


# --- concrete rings ---------------------------------------------------


class RationalField(Ring):
    ring_id = "QQ"
    is_division = True
    is_commutative = True

    def coerce(self, value):
        if isinstance(value, RationalFunction):
            if value.den != 1 or value.num.degree > 0:
                raise MixedRings("non-constant rational function is not a rational")
            return value.num(0)
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def inv(self, a):
        if a == 0:
            raise NotInvertible("zero rational")
        return 1 / a


class IntegerRing(Ring):
    """The integers, with the Euclidean-domain helpers used for modules."""

    ring_id = "ZZ"
    is_commutative = True

    def coerce(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise MixedRings(f"{value} is not an integer")
            return value.numerator
        return int(value)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def inv(self, a):
        if a in (1, -1):
            return a
        raise NotInvertible(f"{a} is not a unit in ZZ")

    # Euclidean-domain interface
    def divmod(self, a, b):
        return divmod(a, b)

    def euclid_size(self, a) -> int:
        return abs(a)

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def canonical(self, a):
        """Associate normal form: non-negative integers."""
        return abs(a)

    def gcd(self, a, b):
        while b:
            a, b = b, a % b
        return abs(a)

    def xgcd(self, a, b):
        x0, x1, y0, y1 = 1, 0, 0, 1
        while b:
            q, a, b = a // b, b, a % b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        if a < 0:
            a, x0, y0 = -a, -x0, -y0
        return a, x0, y0

    def divides(self, a, b) -> bool:
        """True when a divides b."""
        if a == 0:
            return b == 0
        return b % a == 0

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise NotInvertible(f"{b} does not divide {a}")
        return q

    def fraction_value(self, a):
        return Fraction(a)


class IntegersMod(Ring):
    is_commutative = True

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("modulus must be positive")
        self.n = n
        self.ring_id = f"Z/{n}"
        self.is_division = n > 1 and all(n % p for p in range(2, int(n ** 0.5) + 1))

    def coerce(self, value):
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, self.n)) % self.n
        return int(value) % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def inv(self, a):
        try:
            return pow(a, -1, self.n)
        except ValueError:
            raise NotInvertible(f"{a} is not a unit mod {self.n}") from None


class PolynomialRingQ(Ring):
    """Q[x] as a Euclidean domain."""

    is_commutative = True

    def __init__(self, var: str = "x"):
        self.var = var
        self.ring_id = f"QQ[{var}]"

    def coerce(self, value):
        if isinstance(value, UPoly):
            return value
        if isinstance(value, RationalFunction):
            if value.den != 1:
                raise MixedRings("rational function with nontrivial denominator")
            return value.num
        return UPoly((value,), self.var)

    def gen(self) -> RingElement:
        return RingElement(self, UPoly.x(self.var))

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a.is_zero()

    def inv(self, a):
        if a.degree == 0:
            return UPoly((1 / a.coeffs[0],), self.var)
        raise NotInvertible(f"{a} is not a unit in {self.ring_id}")

    def divmod(self, a, b):
        return divmod(a, b)

    def euclid_size(self, a) -> int:
        return a.degree + 1

    def is_unit(self, a) -> bool:
        return a.degree == 0

    def canonical(self, a):
        return a.monic()

    def gcd(self, a, b):
        return poly_gcd(a, b)

    def xgcd(self, a, b):
        return poly_xgcd(a, b)

    def divides(self, a, b) -> bool:
        if a.is_zero():
            return b.is_zero()
        return (b % a).is_zero()

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if not r.is_zero():
            raise NotInvertible(f"{b} does not divide {a}")
        return q

    def fraction_value(self, a):
        return RationalFunction(a, 1)


class RationalFunctionField(Ring):
    is_division = True
    is_commutative = True

    def __init__(self, var: str = "x"):
        self.var = var
        self.ring_id = f"QQ({var})"

    def coerce(self, value):
        if isinstance(value, RationalFunction):
            return value
        return RationalFunction(value, 1, self.var)

    def gen(self) -> RingElement:
        return RingElement(self, RationalFunction.var(self.var))

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return not a

    def inv(self, a):
        if not a:
            raise NotInvertible("zero rational function")
        return a.inverse()


def _mat_mul(a, b):
    k = len(a)
    m = len(b[0])
    inner = len(b)
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(inner)), Fraction(0)) for j in range(m))
        for i in range(k)
    )


class MatrixRing(Ring):
    """k x k matrices over the rationals; payloads are tuples of row tuples."""

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("matrix ring size must be positive")
        self.k = k
        self.ring_id = f"Mat{k}(QQ)"
        # Not every nonzero matrix is invertible, but exact elimination
        # decides invertibility, which is what the quasideterminant code needs.
        self.is_division = False
        self.is_commutative = k == 1

    def coerce(self, value):
        k = self.k
        if isinstance(value, (int, Fraction)):
            c = Fraction(value)
            return tuple(tuple(c if i == j else Fraction(0) for j in range(k)) for i in range(k))
        rows = tuple(tuple(Fraction(x) for x in row) for row in value)
        if len(rows) != k or any(len(r) != k for r in rows):
            raise ValueError(f"expected a {k}x{k} matrix")
        return rows

    def add(self, a, b):
        return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def neg(self, a):
        return tuple(tuple(-x for x in r) for r in a)

    def mul(self, a, b):
        return _mat_mul(a, b)

    def is_zero(self, a):
        return all(x == 0 for r in a for x in r)

    def inv(self, a):
        from .linalg import rational_inverse

        return tuple(tuple(r) for r in rational_inverse([list(r) for r in a]))

    def format(self, a):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in a) + "]"


QQ = RationalField()
ZZ = IntegerRing()
