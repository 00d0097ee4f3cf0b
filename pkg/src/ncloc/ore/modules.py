"""Modules of fractions S^-1 M.

Two concrete settings are supported.  Over a presented ring, M is a
quotient of a free left module R^k by finitely many relation vectors
and all equality questions go through bounded linear search.  Over a
commutative Euclidean base (ZZ or QQ[x]) with a :class:`CentralSet`, M
is a finitely generated module in Smith coordinates and equality is
decided exactly via annihilators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from ..errors import Inconclusive, MixedRings
from ..rewrite.ncpoly import NCPoly, as_poly
from ..rewrite.system import PresentedRing
from .fractions import OreFraction
from .oreset import CentralSet, OreSet
from .search import Equation, default_bound, solve_over_words


class PresentedModule:
    """R^rank modulo the left submodule generated by ``relations``."""

    def __init__(self, ring: PresentedRing, rank: int, relations: Sequence[Sequence] = (), name: str | None = None):
        self.ring = ring
        self.rank = rank
        self.relations = tuple(self.vector(v) for v in relations)
        self.name = name or f"{ring.name}^{rank}/<{len(self.relations)} rel>"

    def vector(self, v) -> tuple[NCPoly, ...]:
        v = tuple(self.ring.normal_form(as_poly(x)) for x in v)
        if len(v) != self.rank:
            raise ValueError(f"expected {self.rank} components")
        return v

    def zero(self):
        return tuple(NCPoly.zero() for _ in range(self.rank))

    def add(self, m, n):
        return tuple(x + y for x, y in zip(m, n))

    def neg(self, m):
        return tuple(-x for x in m)

    def act(self, r, m):
        r = as_poly(r)
        return tuple(self.ring.normal_form(r * x) for x in m)

    def degree(self, m) -> int:
        return max((x.degree for x in m), default=0)

    def format(self, m) -> str:
        return "(" + ", ".join(self.ring.format(x) for x in m) + ")"

    def _membership_equations(self, m, lhs: dict[int, Sequence[NCPoly]], offset: int) -> list[Equation]:
        """sum_k X_k * lhs[k][c] - sum_j Y_j * rel_j[c] = m[c] for every component c."""
        eqs = []
        for c in range(self.rank):
            factors = {k: vec[c] for k, vec in lhs.items()}
            for j, rel in enumerate(self.relations):
                factors[offset + j] = -rel[c]
            eqs.append((factors, m[c]))
        return eqs

    def is_zero(self, m, bound: int | None = None) -> bool:
        """Whether m lies in the relation submodule.

        Without relations this is exact.  With relations a positive
        answer is exact; a negative one only means no combination with
        coefficients up to the bound exists, reported as Inconclusive
        unless the search space contains every possible coefficient
        (a graded ring with homogeneous relations).
        """
        m = self.vector(m)
        if all(x.is_zero() for x in m):
            return True
        if not self.relations:
            return False
        bound = default_bound(*m) if bound is None else bound
        eqs = []
        for c in range(self.rank):
            factors = {j: rel[c] for j, rel in enumerate(self.relations)}
            eqs.append((factors, m[c]))
        res = solve_over_words(self.ring, eqs, len(self.relations), bound)
        if res.solvable:
            return True
        if self._graded_exact(m, bound):
            return False
        raise Inconclusive("relation membership not decided", bound)

    def _graded_exact(self, m, bound: int) -> bool:
        """True when a failed search at this bound is a proof of non-membership.

        That holds if word length is determined by the ring's gradings and
        every relation entry is homogeneous: coefficient words then have
        length at most the degree of m, and all of them were searched.
        """
        ring = self.ring
        if not length_is_graded(ring):
            return False
        if any(ring.homogeneous_degree(x) is None for rel in self.relations for x in rel if not x.is_zero()):
            return False
        return max(x.degree for x in m) <= bound


def length_is_graded(ring: PresentedRing) -> bool:
    """Whether word length is a rational combination of the ring's gradings."""
    from ..ring_core.linalg import nullspace

    grads = ring.gradings()
    if not grads:
        return False
    n = len(ring.generators)
    ones = [Fraction(1)] * n
    # (1,...,1) in the row span iff appending it does not raise the rank
    rank_g = n - len(nullspace([list(map(Fraction, g)) for g in grads], n))
    rank_all = n - len(nullspace([list(map(Fraction, g)) for g in grads] + [ones], n))
    return rank_g == rank_all


@dataclass(frozen=True, eq=False)
class ModFraction:
    denom: Any
    elem: Any
    L: "ModuleLocalization"

    def __add__(self, other):
        return self.L.add(self, other)

    def __eq__(self, other):
        if not isinstance(other, ModFraction):
            return NotImplemented
        return self.L.eq(self, other)

    __hash__ = None  # type: ignore[assignment]

    def __str__(self):
        return f"({self.L.S.format(self.denom)}, {self.L.M.format(self.elem)})"

    __repr__ = __str__


class ModuleLocalization:
    """S^-1 M for a presented module M and an :class:`OreSet` S."""

    def __init__(self, S: OreSet, M: PresentedModule, separators: Sequence[Sequence] = ()):
        """``separators`` are columns c giving module maps M -> R, m -> sum m_i c_i.

        Each column must send every relation to zero.  In a domain the
        induced maps S^-1 M -> S^-1 R can prove two module fractions
        different, which the bounded equality search alone cannot.
        """
        if S.ring is not M.ring:
            raise MixedRings("Ore set and module live over different rings")
        self.S = S
        self.M = M
        self.separators = tuple(M.vector(c) for c in separators)
        for c in self.separators:
            for rel in M.relations:
                if not self._apply(c, rel).is_zero():
                    raise ValueError(f"separator {M.format(c)} does not kill relation {M.format(rel)}")

    def _apply(self, c, m) -> NCPoly:
        ring = self.M.ring
        return ring.normal_form(sum((x * y for x, y in zip(m, c)), NCPoly.zero()))

    def fraction(self, s, m) -> ModFraction:
        return ModFraction(self.S.coerce(s), self.M.vector(m), self)

    def of(self, m) -> ModFraction:
        return self.fraction(1, m)

    def _check(self, x: ModFraction):
        if x.L is not self:
            raise MixedRings("module fraction from a different localization")

    def add(self, x: ModFraction, y: ModFraction, bound: int | None = None) -> ModFraction:
        self._check(x), self._check(y)
        t, u = self.S.witness(y.denom, x.denom, bound)
        elem = self.M.add(self.M.act(t, x.elem), self.M.act(u, y.elem))
        return ModFraction(self.S.mul(t, x.denom), elem, self)

    def act(self, f: OreFraction, x: ModFraction, bound: int | None = None) -> ModFraction:
        self._check(x)
        if f.S is not self.S:
            raise MixedRings("fraction and module fraction use different sets")
        s_star, r_star = self.S.witness(x.denom, f.numer, bound)
        return ModFraction(self.S.mul(s_star, f.denom), self.M.act(r_star, x.elem), self)

    def eq(self, x: ModFraction, y: ModFraction, bound: int | None = None) -> bool:
        """(s, m) ~ (s', m'): some r s = r' s' in S with r m = r' m' in M."""
        self._check(x), self._check(y)
        S, M, ring = self.S, self.M, self.S.ring
        bound = default_bound(x.denom, y.denom, *x.elem, *y.elem) if bound is None else bound
        if ring.domain:
            # cheap disproof first: some separating map already tells them apart
            for c in self.separators:
                if not S.equivalent(x.denom, self._apply(c, x.elem), y.denom, self._apply(c, y.elem), bound):
                    return False
        for u in S.elements(bound):
            eqs: list[Equation] = [({0: x.denom}, u), ({1: y.denom}, u)]
            eqs += M._membership_equations(M.zero(), {0: x.elem, 1: M.neg(y.elem)}, 2)
            res = solve_over_words(ring, eqs, 2 + len(M.relations), bound)
            if res.solvable:
                return True
        if ring.domain and not M.relations:
            a = [OreFraction(x.denom, c, S) for c in x.elem]
            b = [OreFraction(y.denom, c, S) for c in y.elem]
            return all(S.equivalent(p.denom, p.numer, q.denom, q.numer, bound) for p, q in zip(a, b))
        raise Inconclusive("module fraction equality not decided", bound)

    def is_zero(self, x: ModFraction, bound: int | None = None) -> bool:
        return self.eq(x, self.of(self.M.zero()), bound)

    def torsion_witness(self, m, bound: int | None = None):
        """Some s in S with s m = 0 in M, or None within the bound."""
        m = self.M.vector(m)
        bound = default_bound(*m) if bound is None else bound
        for s in self.S.elements(bound):
            try:
                if self.M.is_zero(self.M.act(s, m), bound):
                    return s
            except Inconclusive:
                continue
        return None


class CommutativeModuleLocalization:
    """S^-1 M for a module over ZZ or QQ[x] in Smith coordinates."""

    def __init__(self, S: CentralSet, M):
        if S.ring != M.base:
            raise MixedRings("multiplicative set and module over different bases")
        self.S = S
        self.M = M

    def fraction(self, s, m) -> ModFraction:
        s = self.S.coerce(s)
        if not self.S.contains(s):
            raise ValueError(f"{s} is not in {self.S.name}")
        return ModFraction(s, self.M.element(m), self)

    def of(self, m) -> ModFraction:
        return self.fraction(1, m)

    def add(self, x: ModFraction, y: ModFraction, bound=None) -> ModFraction:
        R = self.S.ring
        elem = self.M.add(self.M.scale(y.denom, x.elem), self.M.scale(x.denom, y.elem))
        return ModFraction(R.mul(x.denom, y.denom), elem, self)

    def act(self, f: OreFraction, x: ModFraction, bound=None) -> ModFraction:
        # commutative witness: s* = s, r* = r
        R = self.S.ring
        return ModFraction(R.mul(x.denom, f.denom), self.M.scale(f.numer, x.elem), self)

    def eq(self, x: ModFraction, y: ModFraction, bound=None) -> bool:
        """Exact: u (s' m - s m') = 0 for some u in S."""
        d = self.M.sub(self.M.scale(y.denom, x.elem), self.M.scale(x.denom, y.elem))
        return self.torsion_witness(d) is not None

    def is_zero(self, x: ModFraction, bound=None) -> bool:
        return self.eq(x, self.of(self.M.zero()))

    def torsion_witness(self, m, bound=None):
        """Least power of the generator product killing m, or None."""
        R = self.S.ring
        ann = self.M.annihilator(self.M.element(m))
        if R.is_zero(ann):
            return None
        a, rest = self.S.saturation_part(ann)
        if not R.is_unit(rest):
            return None
        P = self.S.product()
        p = R.one_value()
        while not R.divides(a, p):
            p = R.mul(p, P)
        return p


def mod_action(f: OreFraction, x: ModFraction, bound: int | None = None) -> ModFraction:
    """t^-1 r . (s, m) = (s* t, r* m) with s* r = r* s."""
    return x.L.act(f, x, bound)


def mod_eq(x: ModFraction, y: ModFraction, bound: int | None = None) -> bool:
    return x.L.eq(x, y, bound)
