"""First-order differential calculi with monomial commutation rules, and the
differential Ore condition s dr = w t.

One-forms are kept in left normal form: a dict sending a generator g to the
left coefficient of dg.  The right action of a generator h on dg is given by
a rule (g, h) -> {g': c}, meaning dg * h = sum of c * dg'.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..errors import NoWitnessWithinBound
from ..ore.oreset import OreSet
from ..ore.search import solve_over_words
from ..rewrite.ncpoly import NCPoly, as_poly
from ..rewrite.system import PresentedRing

OneForm = dict  # generator name -> NCPoly


class FodcSpec:
    """Omega^1 as the free left module on dg, with d extended by Leibniz."""

    def __init__(self, ring: PresentedRing, right_rules: Mapping[tuple[str, str], Mapping[str, object]], *,
                 right_torsion_free: bool = True, check: bool = True):
        self.ring = ring
        gens = ring.generators
        missing = [(g, h) for g in gens for h in gens if (g, h) not in right_rules]
        if missing:
            raise ValueError(f"right action of generators on differentials missing for {missing}")
        self.rules = {}
        for (g, h), form in right_rules.items():
            if g not in gens or h not in gens or any(k not in gens for k in form):
                raise ValueError(f"rule {(g, h)} mentions unknown generators")
            self.rules[(g, h)] = self.normalize({k: as_poly(v) for k, v in form.items()})
        # the hypothesis that right multiplication by elements of S is injective
        self.right_torsion_free = right_torsion_free
        if check:
            bad = self.inconsistencies()
            if bad:
                raise ValueError("inconsistent calculus: " + "; ".join(bad))

    # --- one-form arithmetic ----------------------------------------------
    def normalize(self, w: Mapping[str, NCPoly]) -> OneForm:
        out = {}
        for g in self.ring.generators:
            c = self.ring.normal_form(w.get(g, NCPoly.zero()))
            if not c.is_zero():
                out[g] = c
        return out

    def add(self, *forms: Mapping[str, NCPoly]) -> OneForm:
        acc: dict = {}
        for w in forms:
            for g, c in w.items():
                acc[g] = acc.get(g, NCPoly.zero()) + c
        return self.normalize(acc)

    def left(self, r, w: Mapping[str, NCPoly]) -> OneForm:
        r = as_poly(r)
        return self.normalize({g: r * c for g, c in w.items()})

    def _right_gen(self, w: Mapping[str, NCPoly], h: str) -> OneForm:
        # (c dg) h = c (dg h), and dg h is a left-normal form by the rules
        parts = []
        for g, c in w.items():
            ws = self.rules[(g, h)]
            w1 = {}
            for g2, e in ws.items():
                w1[g2] = self.ring.normal_form(c * e)
            parts.append(w1)
        return self.add(*parts)

    def right(self, w: Mapping[str, NCPoly], r) -> OneForm:
        r = as_poly(r)
        parts = []
        for word, coeff in r.items():
            cur = dict(w)
            for h in word:
                cur = self._right_gen(cur, h)
            parts.append({g: c.scale(coeff) for g, c in cur.items()})
        return self.add(*parts)

    def d(self, r) -> OneForm:
        r = self.ring.normal_form(as_poly(r))
        return self.add(*[self._d_raw(w, c) for w, c in r.items()])

    def _d_raw(self, word, coeff=1) -> OneForm:
        """d of a single word, letter by letter: prefix * dg * suffix."""
        parts = []
        for i, g in enumerate(word):
            form = self.right({g: NCPoly.one()}, NCPoly.word(*word[i + 1:]))
            parts.append(self.left(NCPoly.word(*word[:i]).scale(coeff), form))
        return self.add(*parts)

    def format(self, w: Mapping[str, NCPoly]) -> str:
        if not w:
            return "0"
        return " + ".join(f"({self.ring.format(c)})*d{g}" for g, c in w.items())

    # --- consistency ----------------------------------------------------------
    def inconsistencies(self) -> list[str]:
        """Both the right action and d must respect every rewrite rule."""
        bad = []
        R = self.ring
        for rule in R.system.rules:
            lead = NCPoly.word(*rule.lead)
            for g in R.generators:
                one = {g: NCPoly.one()}
                lhs = one
                for h in rule.lead:
                    lhs = self._right_gen(lhs, h)
                rhs = self.right(one, rule.replacement)
                if self.add(lhs, {k: -v for k, v in rhs.items()}):
                    bad.append(f"d{g} * ({R.format(lead)}) differs from d{g} * ({R.format(rule.replacement)})")
            lhs = self._d_raw(rule.lead)
            rhs = self.add(*[self._d_raw(w, c) for w, c in rule.replacement.items()])
            if self.add(lhs, {k: -v for k, v in rhs.items()}):
                bad.append(f"d({R.format(lead)}) differs from d({R.format(rule.replacement)})")
        return bad


@dataclass
class DiffOreReport:
    satisfied: bool
    witnesses: dict = field(default_factory=dict)   # (t, r) -> (s, omega) as strings
    absent: list = field(default_factory=list)      # (t, r) pairs with no witness in the bound
    bound: int = 0
    torsion_free_assumed: bool = True

    def as_dict(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "witnesses": {f"t={t}, r={r}": {"s": s, "omega": w} for (t, r), (s, w) in self.witnesses.items()},
            "bounded_absence": [f"t={t}, r={r}" for t, r in self.absent],
            "bound": self.bound,
            "torsion_free_assumed": self.torsion_free_assumed,
        }


def differential_ore_witness(calc: FodcSpec, S: OreSet, t, r, bound: int):
    """The first s in the closure of S (breadth first) with s dr = w t for some w."""
    R = calc.ring
    t, r = R.normal_form(as_poly(t)), R.normal_form(as_poly(r))
    dr = calc.d(r)
    gens = R.generators
    # w t has dg'-coefficient sum over g of w_g * (dg t)_{g'}
    dg_t = {g: calc.right({g: NCPoly.one()}, t) for g in gens}
    for s in S.elements(bound):
        target = calc.left(s, dr)
        eqs = []
        for k2, g2 in enumerate(gens):
            factors = {k: dg_t[g].get(g2, NCPoly.zero()) for k, g in enumerate(gens)}
            factors = {k: f for k, f in factors.items() if not f.is_zero()}
            eqs.append((factors, target.get(g2, NCPoly.zero())))
        res = solve_over_words(R, eqs, len(gens), bound)
        if res.solvable:
            omega = calc.normalize({g: res.values[k] for k, g in enumerate(gens)})
            check = calc.add(calc.right(omega, t), {g: -c for g, c in target.items()})
            if check:
                raise AssertionError("differential Ore witness does not verify")
            return s, omega
    raise NoWitnessWithinBound(f"no s, w with s d({R.format(r)}) = w ({R.format(t)})", bound)


def differential_ore_check(calc: FodcSpec, S: OreSet, bound: int = 3) -> DiffOreReport:
    R = calc.ring
    rep = DiffOreReport(True, bound=bound, torsion_free_assumed=calc.right_torsion_free)
    for t in S.generators:
        for g in R.generators:
            key = (R.format(t), g)
            try:
                s, omega = differential_ore_witness(calc, S, t, NCPoly.gen(g), bound)
            except NoWitnessWithinBound:
                rep.absent.append(key)
                rep.satisfied = False
                continue
            rep.witnesses[key] = (R.format(s), calc.format(omega))
    return rep


def central_calculus(ring: PresentedRing) -> FodcSpec:
    """Commutative ring with every dg commuting with every generator."""
    gens = ring.generators
    return FodcSpec(ring, {(g, h): {g: as_poly(h)} for g in gens for h in gens})


def q_plane_calculus(ring: PresentedRing, q) -> FodcSpec:
    """(da) b = q b da, (db) a = q^-1 a db, while da and db commute with a and b respectively."""
    from fractions import Fraction

    q = Fraction(q)
    return FodcSpec(ring, {
        ("a", "a"): {"a": NCPoly.gen("a")},
        ("a", "b"): {"a": NCPoly.gen("b").scale(q)},
        ("b", "a"): {"b": NCPoly.gen("a").scale(1 / q)},
        ("b", "b"): {"b": NCPoly.gen("b")},
    })
