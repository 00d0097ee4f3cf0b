"""Finitely generated modules over ZZ or QQ[x] in Smith coordinates.

A module is stored as a direct sum R/(d_1) + ... + R/(d_k) where each
d_i is either zero (a free summand) or a non-unit in canonical form.
Elements are coordinate tuples reduced modulo the invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from ..ring_core.linalg import smith_normal_form
from ..ring_core.rings import Ring


class FgModule:
    def __init__(self, base: Ring, invariants: Sequence = (), name: str | None = None, *, _transform=None):
        self.base = base
        invs = []
        for d in invariants:
            d = base.coerce(d)
            if base.is_zero(d):
                invs.append(d)
            elif not base.is_unit(d):
                invs.append(base.canonical(d))
        self.invariants = tuple(invs)
        self.name = name or self.describe()
        # maps original generator vectors to Smith coordinates (see from_presentation)
        self._transform = _transform

    # --- constructors --------------------------------------------------
    @classmethod
    def free(cls, base: Ring, rank: int = 1) -> "FgModule":
        return cls(base, [base.zero_value()] * rank)

    @classmethod
    def cyclic(cls, base: Ring, d) -> "FgModule":
        return cls(base, [d])

    @classmethod
    def from_presentation(cls, base: Ring, relations: Sequence[Sequence], ngens: int, name: str | None = None) -> "FgModule":
        """R^ngens modulo the row space of ``relations``.

        With U * Rel * V = D in Smith form, x -> x V sends the relation
        row space onto the diagonal lattice, so x V reduced modulo the
        diagonal gives coordinates.
        """
        rows = [[base.coerce(c) for c in r] for r in relations]
        if not rows:
            return cls(base, [base.zero_value()] * ngens, name)
        D, _U, V = smith_normal_form(rows, base)
        diag = [D[i][i] if i < len(D) else base.zero_value() for i in range(ngens)]
        keep = [i for i, d in enumerate(diag) if not base.is_unit(d)]
        invs = [diag[i] for i in keep]

        def transform(x):
            xv = [base.zero_value()] * ngens
            for j in range(ngens):
                acc = base.zero_value()
                for i in range(ngens):
                    acc = base.add(acc, base.mul(base.coerce(x[i]), V[i][j]))
                xv[j] = acc
            return [xv[i] for i in keep]

        return cls(base, invs, name, _transform=transform)

    def direct_sum(self, other: "FgModule") -> "FgModule":
        if other.base != self.base:
            raise ValueError("direct sum of modules over different bases")
        return FgModule(self.base, self.invariants + other.invariants)

    # --- elements -------------------------------------------------------
    @property
    def ngens(self) -> int:
        return len(self.invariants)

    def _reduce(self, i, c):
        d = self.invariants[i]
        if self.base.is_zero(d):
            return c
        return self.base.divmod(c, d)[1]

    def element(self, coords) -> tuple:
        if isinstance(coords, (int,)) and self.ngens == 1:
            coords = (coords,)
        coords = tuple(coords)
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        return tuple(self._reduce(i, self.base.coerce(c)) for i, c in enumerate(coords))

    def from_original(self, x) -> tuple:
        if self._transform is None:
            return self.element(x)
        return self.element(self._transform(x))

    def zero(self) -> tuple:
        return tuple(self.base.zero_value() for _ in self.invariants)

    def gens(self) -> list[tuple]:
        one, zero = self.base.one_value(), self.base.zero_value()
        return [tuple(one if i == j else zero for j in range(self.ngens)) for i in range(self.ngens)]

    def add(self, m, n) -> tuple:
        return self.element(self.base.add(a, b) for a, b in zip(m, n))

    def neg(self, m) -> tuple:
        return self.element(self.base.neg(a) for a in m)

    def sub(self, m, n) -> tuple:
        return self.add(m, self.neg(n))

    def scale(self, r, m) -> tuple:
        r = self.base.coerce(r)
        return self.element(self.base.mul(r, a) for a in m)

    def is_zero(self, m) -> bool:
        return all(self.base.is_zero(a) for a in self.element(m))

    def eq(self, m, n) -> bool:
        return self.element(m) == self.element(n)

    def format(self, m) -> str:
        return "(" + ", ".join(self.base.format(a) for a in m) + ")"

    # --- structure ------------------------------------------------------
    def annihilator(self, m):
        """Canonical generator of ann(m); zero when m has a nonzero free coordinate."""
        R = self.base
        ann = R.one_value()
        for d, c in zip(self.invariants, self.element(m)):
            if R.is_zero(c):
                continue
            if R.is_zero(d):
                return R.zero_value()
            need = R.exact_div(d, R.gcd(d, c))
            ann = R.exact_div(R.mul(ann, need), R.gcd(ann, need))
        return R.canonical(ann)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariants if self.base.is_zero(d))

    @property
    def torsion_invariants(self) -> tuple:
        return tuple(d for d in self.invariants if not self.base.is_zero(d))

    def is_finite(self) -> bool:
        return self.free_rank == 0 and self.base.ring_id == "ZZ"

    def elements(self, height: int | None = None):
        """All elements of a finite ZZ-module, or a box |free coord| <= height otherwise."""
        if self.base.ring_id != "ZZ":
            raise ValueError("enumeration is only available over ZZ")
        ranges = []
        for d in self.invariants:
            if d == 0:
                if height is None:
                    raise ValueError("module is infinite; give a height")
                ranges.append(range(-height, height + 1))
            else:
                ranges.append(range(d))
        for c in product(*ranges):
            yield tuple(c)

    def order(self) -> int | None:
        if not self.is_finite():
            return None
        n = 1
        for d in self.invariants:
            n *= d
        return n

    def describe(self) -> str:
        R = self.base
        if not self.invariants:
            return "0"
        parts = []
        if self.free_rank:
            parts.append(R.ring_id + (f"^{self.free_rank}" if self.free_rank > 1 else ""))
        for d in self.torsion_invariants:
            parts.append(f"{R.ring_id}/({R.format(d)})")
        return " + ".join(parts)

    def __eq__(self, other):
        return isinstance(other, FgModule) and other.base == self.base and other.invariants == self.invariants

    def __hash__(self):
        return hash((self.base.ring_id, self.invariants))

    def __repr__(self):
        return f"FgModule({self.describe()})"


@dataclass(frozen=True)
class ModuleMap:
    """R-linear map given by the images of the coordinate generators."""

    src: FgModule
    dst: FgModule
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.src.ngens:
            raise ValueError("one image per source generator")
        for d, img in zip(self.src.invariants, self.images):
            if not self.dst.is_zero(self.dst.scale(d, img)):
                raise ValueError("map does not kill the source relations")

    def __call__(self, m) -> tuple:
        out = self.dst.zero()
        for c, img in zip(self.src.element(m), self.images):
            out = self.dst.add(out, self.dst.scale(c, img))
        return out


def is_submodule_closed(M: FgModule, elems: Sequence, base_samples: Sequence) -> bool:
    """Spot-check closure of a finite element set under + and scaling."""
    keyset = {M.element(e) for e in elems}
    for a in keyset:
        for b in keyset:
            if M.add(a, b) not in keyset:
                return False
        for r in base_samples:
            if M.scale(r, a) not in keyset:
                return False
    return True
