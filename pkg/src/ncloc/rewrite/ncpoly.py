"""Elements of the free associative algebra over a field.

Words are tuples of generator names; the empty tuple is the unit word.
Coefficients are any exact field scalars (``Fraction`` by default,
rational functions in the symbolic-q mode).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Word = tuple[str, ...]

ONE_WORD: Word = ()


def _is_scalar(x) -> bool:
    from ..ring_core.polys import RationalFunction

    return isinstance(x, (int, Fraction, RationalFunction))


class NCPoly:
    """Immutable finite map word -> nonzero coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, object] | Iterable[tuple[Word, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, object] = {}
        for w, c in items:
            w = tuple(w)
            if isinstance(c, int):
                c = Fraction(c)
            v = acc.get(w)
            acc[w] = c if v is None else v + c
        object.__setattr__(self, "_terms", {w: c for w, c in acc.items() if c != 0})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("NCPoly is immutable")

    # --- constructors --------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict) -> "NCPoly":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls._raw({ONE_WORD: Fraction(1)})

    @classmethod
    def const(cls, c) -> "NCPoly":
        return cls({ONE_WORD: c})

    @classmethod
    def word(cls, *gens: str, coeff=1) -> "NCPoly":
        return cls({tuple(gens): coeff})

    @classmethod
    def gen(cls, name: str) -> "NCPoly":
        return cls._raw({(name,): Fraction(1)})

    # --- queries -------------------------------------------------------
    @property
    def terms(self) -> dict[Word, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coeff(self, w: Word):
        return self._terms.get(tuple(w), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Maximal word length (-1 for zero)."""
        return max((len(w) for w in self._terms), default=-1)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {ONE_WORD}

    def constant_value(self):
        return self._terms.get(ONE_WORD, Fraction(0))

    def generators(self) -> set[str]:
        return {g for w in self._terms for g in w}

    # --- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "NCPoly | None":
        if isinstance(other, NCPoly):
            return other
        if _is_scalar(other):
            return NCPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for w, c in o._terms.items():
            v = out.get(w)
            if v is None:
                out[w] = c
            else:
                s = v + c
                if s == 0:
                    del out[w]
                else:
                    out[w] = s
        return NCPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self._terms.items()})

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

    def scale(self, c) -> "NCPoly":
        if c == 0:
            return NCPoly.zero()
        return NCPoly._raw({w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        out: dict[Word, object] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                v = out.get(w)
                out[w] = c1 * c2 if v is None else v + c1 * c2
        return NCPoly._raw({w: c for w, c in out.items() if c != 0})

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        result = NCPoly.one()
        for _ in range(n):
            result = result * self
        return result

    # --- comparison ----------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self, key=None) -> list[tuple[Word, object]]:
        key = key or (lambda w: (len(w), w))
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def format(self, key=None) -> str:
        """Text form ``3*a*b - 1/2*b + 1`` (largest words first)."""
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms(key):
            neg = False
            if isinstance(c, Fraction) and c < 0:
                neg, c = True, -c
            if isinstance(c, Fraction):
                cs = str(c)
            else:
                cs = f"({c})"
            body = "*".join(w)
            if not w:
                text = cs
            elif c == 1:
                text = body
            else:
                text = f"{cs}*{body}"
            parts.append(("-" if neg else "+", text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"NCPoly({self.format()})"


def as_poly(x) -> NCPoly:
    """Accept an NCPoly, scalar, generator name, or word tuple."""
    if isinstance(x, NCPoly):
        return x
    if isinstance(x, str):
        return NCPoly.word(*[g for g in x.split("*") if g]) if x else NCPoly.one()
    if isinstance(x, tuple):
        return NCPoly.word(*x)
    if _is_scalar(x):
        return NCPoly.const(x)
    raise TypeError(f"cannot interpret {x!r} as a noncommutative polynomial")
