"""Multiplicative sets, Ore witnesses and the practical Ore predicates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ..errors import Inconclusive, NoWitnessWithinBound
from ..rewrite.ncpoly import NCPoly, as_poly
from ..rewrite.system import PresentedRing
from ..ring_core.rings import Ring
from .search import Equation, default_bound, solve_left_system, solve_over_words


class OreSet:
    """Multiplicative closure of finitely many elements of a presented ring.

    Closure elements are enumerated breadth first by number of factors
    and deduplicated up to a nonzero scalar factor.  Scalars are central
    units, so this changes neither the Ore condition nor the fractions.
    """

    def __init__(self, ring: PresentedRing, generators: Sequence, name: str | None = None):
        self.ring = ring
        self.generators: tuple[NCPoly, ...] = tuple(ring.normal_form(as_poly(g)) for g in generators)
        self.name = name or "S<" + ",".join(ring.format(g) for g in self.generators) + ">"
        one = NCPoly.one()
        self._levels: list[list[NCPoly]] = [[one]]
        self._seen = {self._class_key(one)}

    # --- payload arithmetic used by the generic fraction code ------------
    def mul(self, a: NCPoly, b: NCPoly) -> NCPoly:
        return self.ring.normal_form(a * b)

    def add(self, a: NCPoly, b: NCPoly) -> NCPoly:
        return a + b

    def neg(self, a: NCPoly) -> NCPoly:
        return -a

    def is_zero(self, a: NCPoly) -> bool:
        return a.is_zero()

    def one(self) -> NCPoly:
        return NCPoly.one()

    def zero(self) -> NCPoly:
        return NCPoly.zero()

    def coerce(self, x) -> NCPoly:
        return self.ring.normal_form(as_poly(x))

    def format(self, a: NCPoly) -> str:
        return self.ring.format(a)

    def degree(self, a: NCPoly) -> int:
        return max(a.degree, 0)

    @property
    def commutative(self) -> bool:
        return self.ring.is_commutative

    # --- closure -----------------------------------------------------------
    def _class_key(self, p: NCPoly) -> NCPoly:
        if p.is_zero():
            return p
        lead = max(p.words(), key=self.ring.key)
        return p.scale(1 / p.coeff(lead))

    def level(self, k: int) -> list[NCPoly]:
        while len(self._levels) <= k:
            prev = self._levels[-1]
            nxt = []
            for x in prev:
                for g in self.generators:
                    y = self.ring.normal_form(g * x)
                    key = self._class_key(y)
                    if key in self._seen:
                        continue
                    self._seen.add(key)
                    nxt.append(y)
            nxt.sort(key=lambda p: [self.ring.key(w) for w in sorted(p.words(), key=self.ring.key, reverse=True)])
            self._levels.append(nxt)
        return self._levels[k]

    def elements(self, bound: int) -> Iterator[NCPoly]:
        """Closure elements with at most ``bound`` factors and degree <= bound."""
        for k in range(bound + 1):
            lvl = self.level(k)
            for x in lvl:
                if x.degree <= bound:
                    yield x
            if not lvl:
                return

    def contains(self, p, bound: int | None = None) -> bool:
        """Bounded membership test (up to a nonzero scalar)."""
        p = self.coerce(p)
        bound = default_bound(p) if bound is None else bound
        key = self._class_key(p)
        return any(self._class_key(x) == key for x in self.elements(bound))

    # --- searches ----------------------------------------------------------
    def witness(self, s, r, bound: int | None = None, *, span: Sequence[NCPoly] | None = None):
        """(s', r') with s' r = r' s; r' restricted to span(...) when given."""
        ring = self.ring
        s, r = self.coerce(s), self.coerce(r)
        bound = default_bound(s, r) if bound is None else bound
        if r.is_zero():
            return NCPoly.one(), NCPoly.zero()
        if span is None and ring.is_commutative:
            return s, r
        for cand in self.elements(bound):
            target = ring.normal_form(cand * r)
            eqs: list[Equation] = [({0: s}, target)]
            if span is None:
                res = solve_over_words(ring, eqs, 1, bound)
            else:
                res = solve_left_system(ring, eqs, [list(span)])
            if res.solvable:
                return cand, res.values[0]
        raise NoWitnessWithinBound(f"no Ore witness for s={ring.format(s)}, r={ring.format(r)}", bound)

    def equivalent(self, s1, r1, s2, r2, bound: int | None = None) -> bool:
        """The relation (s1, r1) ~ (s2, r2): some t s2 = u s1 and t r2 = u r1.

        In a declared domain a first-equation witness settles the
        question either way; otherwise only a positive answer is
        certain and exhaustion raises Inconclusive.
        """
        ring = self.ring
        s1, r1, s2, r2 = (self.coerce(x) for x in (s1, r1, s2, r2))
        bound = default_bound(s1, r1, s2, r2) if bound is None else bound
        if ring.domain:
            t, u = self.witness(s1, s2, bound)
            return ring.normal_form(t * r2) == ring.normal_form(u * r1)
        for cand in self.elements(bound):
            eqs: list[Equation] = [
                ({0: s1}, ring.normal_form(cand * s2)),
                ({0: r1}, ring.normal_form(cand * r2)),
            ]
            if solve_over_words(ring, eqs, 1, bound).solvable:
                return True
        raise Inconclusive("fraction equality not decided", bound)

    def annihilator_in_S(self, n, bound: int | None = None):
        """Some s in S with s n = 0, or None within the bound."""
        n = self.coerce(n)
        bound = default_bound(n) if bound is None else bound
        for cand in self.elements(bound):
            if self.ring.normal_form(cand * n).is_zero():
                return cand
        return None

    def __repr__(self):
        return f"OreSet({self.name} in {self.ring.name})"


class CentralSet:
    """Multiplicative set generated inside a commutative ring_core domain (ZZ, QQ[x])."""

    def __init__(self, ring: Ring, generators: Sequence, name: str | None = None):
        if not ring.is_commutative:
            raise ValueError("CentralSet needs a commutative base ring")
        self.ring = ring
        self.generators = tuple(ring.coerce(g) for g in generators)
        if any(ring.is_zero(g) for g in self.generators):
            raise ValueError("zero cannot generate a useful multiplicative set here")
        self.name = name or "S<" + ",".join(str(g) for g in self.generators) + ">"
        self.domain = True

    def mul(self, a, b):
        return self.ring.mul(a, b)

    def add(self, a, b):
        return self.ring.add(a, b)

    def neg(self, a):
        return self.ring.neg(a)

    def is_zero(self, a):
        return self.ring.is_zero(a)

    def one(self):
        return self.ring.one_value()

    def zero(self):
        return self.ring.zero_value()

    def coerce(self, x):
        return self.ring.coerce(x)

    def format(self, a):
        return self.ring.format(a)

    def degree(self, a) -> int:
        return 0

    commutative = True

    def product(self):
        p = self.ring.one_value()
        for g in self.generators:
            p = self.ring.mul(p, g)
        return p

    def elements(self, bound: int) -> Iterator:
        seen = set()
        layer = [self.ring.one_value()]
        for _ in range(bound + 1):
            nxt = []
            for x in layer:
                c = self.ring.canonical(x)
                if c in seen:
                    continue
                seen.add(c)
                yield x
                nxt.extend(self.ring.mul(g, x) for g in self.generators)
            layer = nxt

    def contains(self, p, bound: int | None = None) -> bool:
        """Exact: p is a unit times a product of generators."""
        R = self.ring
        p = R.coerce(p)
        if R.is_zero(p):
            return False
        for g in self.generators:
            while not R.is_unit(g) and R.divides(g, p):
                p = R.exact_div(p, g)
        return R.is_unit(p)

    def saturation_part(self, d):
        """Split d = a * b with a dividing a power of the generator product and gcd(b, gens) = 1."""
        R = self.ring
        P = self.product()
        a, b = R.one_value(), R.coerce(d)
        if R.is_zero(b):
            return a, b
        while True:
            g = R.gcd(b, P)
            if R.is_unit(g):
                break
            a = R.mul(a, g)
            b = R.exact_div(b, g)
        return R.canonical(a), R.canonical(b)

    def witness(self, s, r, bound: int | None = None, span=None):
        return s, r

    def equivalent(self, s1, r1, s2, r2, bound: int | None = None) -> bool:
        R = self.ring
        return R.eq(R.mul(s1, r2), R.mul(s2, r1))

    def __repr__(self):
        return f"CentralSet({self.name} in {self.ring.ring_id})"


def ore_witness(S: OreSet, s, r, bound: int | None = None):
    """(s', r') with s' in S and s' r = r' s; raises NoWitnessWithinBound."""
    return S.witness(s, r, bound)


@dataclass
class PredicateReport:
    bound: int
    lOre_S1_A: bool | None
    slOre_S1_A: bool | None
    lOre_S_A: bool | None
    witnesses: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "bound": self.bound,
            "lOre(S1,A)": self.lOre_S1_A,
            "slOre(S1,A)": self.slOre_S1_A,
            "lOre(S,A)": self.lOre_S_A,
            "witnesses": self.witnesses,
            "failures": self.failures,
        }


def check_predicates(S1: OreSet, A: Sequence, bound: int | None = None, *, closure_sample: int | None = None) -> PredicateReport:
    """Evaluate lOre(S1, A), slOre(S1, A) and lOre(S, A) by bounded search.

    A ``False`` entry means no witness within the bound.  lOre(S, A)
    quantifies over closure elements with at most ``closure_sample``
    factors (default 2), since S itself is infinite.
    """
    ring = S1.ring
    A = [ring.normal_form(as_poly(a)) for a in A]
    bound = default_bound(*S1.generators, *A) if bound is None else bound
    closure_sample = 2 if closure_sample is None else closure_sample
    fmt = ring.format
    witnesses: dict = {}
    failures: dict = {}

    def run(label, ss, span):
        ok = True
        for s in ss:
            for a in A:
                key = f"{label}: s={fmt(s)}, r={fmt(a)}"
                try:
                    sp, rp = S1.witness(s, a, bound, span=span)
                    witnesses[key] = {"s'": fmt(sp), "r'": fmt(rp)}
                except NoWitnessWithinBound:
                    failures[key] = f"no witness within bound {bound}"
                    ok = False
        return ok

    l1 = run("lOre(S1,A)", S1.generators, None)
    sl = run("slOre(S1,A)", S1.generators, A)
    sample = [x for x in S1.elements(closure_sample) if not x.is_constant()]
    lS = run("lOre(S,A)", sample, None)
    return PredicateReport(bound, l1, sl, lS, witnesses, failures)


def product_set_witnesses(S: OreSet, T: OreSet, samples: Sequence, bound: int | None = None, levels: int = 2) -> dict:
    """Ore witnesses for products s t (s in S, t in T) against sample elements.

    The set ST need not be multiplicatively closed, so witnesses s' are
    searched in the multiplicative closure of the generators of both sets.
    """
    ring = S.ring
    U = OreSet(ring, S.generators + T.generators, name=f"{S.name}{T.name}")
    found, missing = {}, []
    for s in S.elements(levels):
        for t in T.elements(levels):
            st = ring.normal_form(s * t)
            for r in samples:
                key = f"{ring.format(st)} | {ring.format(U.coerce(r))}"
                try:
                    sp, rp = U.witness(st, r, bound)
                    found[key] = (ring.format(sp), ring.format(rp))
                except NoWitnessWithinBound:
                    missing.append(key)
    return {"witnesses": found, "missing": missing}


def ideal_IS_check(S: OreSet, annihilated: Sequence, multipliers: Sequence, bound: int | None = None) -> dict:
    """For each n with s n = 0 (s in S) confirm that every r n is also killed by S."""
    ring = S.ring
    out = {"confirmed": [], "failed": [], "not_annihilated": []}
    for n in annihilated:
        n = S.coerce(n)
        if S.annihilator_in_S(n, bound) is None:
            out["not_annihilated"].append(ring.format(n))
            continue
        for r in multipliers:
            rn = ring.normal_form(S.coerce(r) * n)
            s0 = S.annihilator_in_S(rn, bound)
            (out["confirmed"] if s0 is not None else out["failed"]).append(ring.format(rn))
    return out
