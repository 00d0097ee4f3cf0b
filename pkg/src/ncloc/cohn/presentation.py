"""Universal localization by adjoining inverse matrices to a presentation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import Inconclusive, NotInvertible
from ..ore.fractions import OreFraction, frac_eq, frac_mul
from ..ore.oreset import OreSet
from ..rewrite.completion import add_relations, complete
from ..rewrite.ncpoly import NCPoly, as_poly
from ..rewrite.system import PresentedRing
from ..ring_core.matrices import RMatrix, inverse
from ..ring_core.rings import QQ
from .sigma import EvaluationMap, MatrixSigma


@dataclass
class CohnPresentation:
    base: PresentedRing
    sigma: MatrixSigma
    new_generators: list
    relations: list                     # NCPoly, each meant to vanish
    inverse_names: list                 # per generator matrix: n x n names of A' entries
    ring: PresentedRing | None = None   # completed reduction system if one was found
    confluent: bool = False
    stages: dict = field(default_factory=dict)

    def inverse_generators(self, k: int) -> list[list[NCPoly]]:
        return [[NCPoly.gen(name) for name in row] for row in self.inverse_names[k]]

    def normal_form(self, p) -> NCPoly:
        if self.ring is None or not self.confluent:
            raise Inconclusive("no confluent reduction system for this presentation", 0)
        return self.ring.normal_form(as_poly(p))

    def summary(self) -> dict:
        return {
            "base": self.base.name,
            "new_generators": list(self.new_generators),
            "relations": [str(r) for r in self.relations],
            "confluent": self.confluent,
            "rules": [str(r) for r in self.ring.system.rules] if self.ring is not None else None,
            "stages": self.stages,
        }


def _poly(e) -> NCPoly:
    return as_poly(e.value if hasattr(e, "value") else e)


def _inverse_names(k: int, A: RMatrix, taken: set) -> list[list[str]]:
    n = A.rows
    if n == 1:
        e = _poly(A.at(0, 0))
        if e.is_monomial() and e.degree == 1 and e.coeff(next(iter(e.words()))) == 1:
            g = next(iter(e.words()))[0]
            name = f"{g}_inv"
            if name not in taken:
                return [[name]]
    return [[f"S{k}_{i + 1}_{j + 1}" for j in range(n)] for i in range(n)]


def _matrix_relations(A: RMatrix, names: list[list[str]]) -> list[NCPoly]:
    n = A.rows
    Ap = [[NCPoly.gen(nm) for nm in row] for row in names]
    a = [[_poly(A.at(i, j)) for j in range(n)] for i in range(n)]
    rels = []
    for i in range(n):
        for j in range(n):
            left = sum((a[i][t] * Ap[t][j] for t in range(n)), NCPoly.zero())
            right = sum((Ap[i][t] * a[t][j] for t in range(n)), NCPoly.zero())
            one = NCPoly.one() if i == j else NCPoly.zero()
            rels.append(left - one)
            rels.append(right - one)
    return rels


def _build_ring(R: PresentedRing, new_gens: Sequence[str], relations, try_completion: bool, name: str):
    ext = R.extended(name, list(new_gens), [])
    try:
        ext = add_relations(ext, relations)
        if not try_completion:
            return ext, False
        res = complete(ext)
        return res.ring, res.confluent
    except Exception:           # orientation or budget failure: keep the bare presentation
        return None, False


def cohn_presentation(R: PresentedRing, sigma: MatrixSigma, *, complete_system: bool = True) -> CohnPresentation:
    """Adjoin n^2 generators per n x n generator matrix with AA' = I = A'A entrywise."""
    new_gens: list[str] = []
    relations: list[NCPoly] = []
    names_all = []
    taken = set(R.generators)
    for k, A in enumerate(sigma.generators):
        names = _inverse_names(k + 1, A, taken)
        for row in names:
            for nm in row:
                if nm in taken:
                    raise ValueError(f"generator name {nm} already in use")
                taken.add(nm)
                new_gens.append(nm)
        names_all.append(names)
        relations.extend(_matrix_relations(A, names))
    ring, conf = _build_ring(R, new_gens, relations, complete_system, f"{R.name}_Sigma")
    return CohnPresentation(R, sigma, new_gens, relations, names_all, ring, conf,
                            {"cohn": list(new_gens)})


# --- relative universal property ----------------------------------------

def induced_map(pres: CohnPresentation, f: EvaluationMap) -> EvaluationMap:
    """Extend a Sigma-inverting f to the presentation: A' entries go to f(A)^-1 entries."""
    images = dict(f.images)
    for A, names in zip(pres.sigma.generators, pres.inverse_names):
        try:
            inv = inverse(f.apply_matrix(A))
        except NotInvertible:
            raise NotInvertible(f"f does not invert {A}") from None
        for i, row in enumerate(names):
            for j, nm in enumerate(row):
                images[nm] = inv.at(i, j)
    src = pres.ring if pres.ring is not None else pres.base.extended(pres.base.name + "_free", pres.new_generators, [])
    return EvaluationMap(src, f.target, images)


def check_universal(pres: CohnPresentation, f: EvaluationMap) -> dict:
    """Does the induced map respect every base and inverse relation exactly?"""
    g = induced_map(pres, f)
    base_ok = f.respects_presentation()
    rel_ok = [g.apply(r).is_zero() for r in pres.relations]
    rules_ok = g.respects_presentation() if pres.ring is not None else None
    return {"base_relations": base_ok, "inverse_relations": all(rel_ok), "completed_rules": rules_ok,
            "checked": len(rel_ok)}


# --- comparison with Ore fractions ---------------------------------------

def _to_fraction(pres: CohnPresentation, S: OreSet, p: NCPoly, bound: int | None):
    inv_of = {}
    for A, names in zip(pres.sigma.generators, pres.inverse_names):
        if A.rows == 1:
            inv_of[names[0][0]] = OreFraction.make(S, _poly(A.at(0, 0)), 1)
    total = None
    for w, c in as_poly(p).items():
        term = OreFraction.of(S, NCPoly.const(c))
        for g in w:
            factor = inv_of.get(g) or OreFraction.of(S, NCPoly.gen(g))
            term = frac_mul(term, factor, bound)
        total = term if total is None else total + term
    return total if total is not None else OreFraction.of(S, NCPoly.zero())


def compare_with_ore(pres: CohnPresentation, S: OreSet, degree: int = 4, bound: int | None = None) -> dict:
    """Products of normal-form words (total degree <= degree) against Ore fraction products,
    and fractions s^-1 r written back as s' r and re-read."""
    if pres.ring is None or not pres.confluent:
        raise Inconclusive("comparison needs a confluent presentation", degree)
    Rc = pres.ring
    half = degree // 2
    words = Rc.basis_words(half)
    agree = disagree = 0
    mismatches = []
    for u in words:
        for v in words:
            pu, pv = NCPoly._raw({u: Fraction(1)}), NCPoly._raw({v: Fraction(1)})
            lhs = _to_fraction(pres, S, Rc.normal_form(pu * pv), bound)
            rhs = frac_mul(_to_fraction(pres, S, pu, bound), _to_fraction(pres, S, pv, bound), bound)
            if frac_eq(lhs, rhs, bound):
                agree += 1
            else:
                disagree += 1
                mismatches.append(f"{'*'.join(u) or '1'} * {'*'.join(v) or '1'}")
    # fraction -> presentation -> fraction
    back = 0
    inv_names = {str(_poly(A.at(0, 0))): names[0][0]
                 for A, names in zip(pres.sigma.generators, pres.inverse_names) if A.rows == 1}
    base_words = pres.base.basis_words(half)
    for s in S.elements(half):
        s_w = list(s.words())
        if len(s_w) != 1:
            continue
        (sw,) = s_w
        inv_word = tuple(inv_names[g] for g in reversed(sw) if g in inv_names)
        if len(inv_word) != len(sw):
            continue
        for r in base_words:
            image = Rc.normal_form(NCPoly._raw({inv_word + r: s.coeff(sw) ** -1}))
            if frac_eq(_to_fraction(pres, S, image, bound), OreFraction.make(S, s, NCPoly._raw({r: Fraction(1)})), bound):
                back += 1
            else:
                disagree += 1
                mismatches.append(f"({pres.base.format(s)})^-1 {'*'.join(r) or '1'}")
    return {"products_agree": agree, "round_trips": back, "disagreements": disagree, "mismatches": mismatches}


# --- quasideterminant-first presentation --------------------------------

def _random_point_evaluator(R: PresentedRing, seed: int):
    rng = random.Random(seed)
    if not R.is_commutative:
        raise ValueError("default evaluation needs a commutative base; pass evaluate=")
    images = {g: QQ(Fraction(rng.randint(-50, 50), rng.randint(1, 9))) for g in R.generators}
    return EvaluationMap(R, QQ, images)


class _QdetExpr:
    """Recursive-form quasideterminant expressions over R plus inverse generators."""

    def __init__(self, pres_gens: list, pres_rels: list, A: RMatrix, k: int, evaluators: list[EvaluationMap]):
        self.A = A
        self.k = k
        self.gens = pres_gens
        self.rels = pres_rels
        self.evals = evaluators
        self.inv_values: list[dict] = [dict() for _ in evaluators]
        self.memo: dict = {}
        self.inverted: dict = {}     # key -> generator name

    def _value(self, e: int, p: NCPoly):
        f = self.evals[e]
        acc = f.target.zero()
        for w, c in p.items():
            term = f.target(c)
            for g in w:
                term = term * (self.inv_values[e][g] if g in self.inv_values[e] else f.images[g])
            acc = acc + term
        return acc

    def entry(self, i, j) -> NCPoly:
        return _poly(self.A.at(i, j))

    def expr(self, rows: tuple, cols: tuple, i, j) -> NCPoly | None:
        key = (rows, cols, i, j)
        if key in self.memo:
            return self.memo[key]
        a = self.entry(i, j)
        if len(rows) == 1:
            self.memo[key] = a
            return a
        sub_r = tuple(r for r in rows if r != i)
        sub_c = tuple(c for c in cols if c != j)
        total = a
        for k_ in sub_r:
            for l in sub_c:
                ail, akj = self.entry(i, l), self.entry(k_, j)
                if ail.is_zero() or akj.is_zero():
                    continue
                inv = self.invert(sub_r, sub_c, k_, l)
                if inv is None:
                    self.memo[key] = None
                    return None
                total = total - ail * inv * akj
        self.memo[key] = total
        return total

    def invert(self, rows, cols, i, j) -> NCPoly | None:
        """Polynomial standing for |A^{rows}_{cols}|_{ij}^-1, or None if it does not exist."""
        key = (rows, cols, i, j)
        if key in self.inverted:
            return self.inverted[key]
        q = self.expr(rows, cols, i, j)
        if q is None:
            self.inverted[key] = None
            return None
        full = len(rows) == self.A.rows
        if q.is_constant():
            c = q.constant_value()
            if c == 0:
                self.inverted[key] = None
                return None
            if not full:
                # inner constants are inverted as scalars; full-size ones still get a generator
                self.inverted[key] = NCPoly.const(Fraction(1) / c)
                return self.inverted[key]
        values = [self._value(e, q) for e in range(len(self.evals))]
        if all(v.is_zero() for v in values):
            self.inverted[key] = None
            return None
        if full:
            name = f"S{self.k}_{j + 1}_{i + 1}"   # entry (j, i) of the inverse matrix
        else:
            name = f"Q{self.k}_" + "".join(str(r + 1) for r in rows) + "_" + "".join(str(c + 1) for c in cols) + f"_{i + 1}_{j + 1}"
        B = NCPoly.gen(name)
        self.gens.append(name)
        self.rels.append(B * q - 1)
        self.rels.append(q * B - 1)
        for e, v in enumerate(values):
            try:
                self.inv_values[e][name] = v.inverse()
            except NotInvertible:
                self.inv_values[e][name] = self.evals[e].target.zero()
        self.inverted[key] = B
        return B


def qdet_first_presentation(R: PresentedRing, sigma: MatrixSigma, evaluate: Sequence[EvaluationMap] | None = None,
                            *, seed: int = 0, points: int = 3, complete_system: bool = True) -> CohnPresentation:
    """Invert the existing quasideterminants first, then finish with the Cohn generators.

    Stage 1 adds a generator B_ij with B_ij |A|_ij = 1 = |A|_ij B_ij for every
    quasideterminant that exists and is nonzero (tested symbolically for
    constants and by exact evaluation otherwise); its name is the (j, i)
    entry of the inverse matrix.  Stage 2 adds the remaining entries of A'
    together with the relations AA' = I = A'A.
    """
    evals = list(evaluate) if evaluate is not None else [_random_point_evaluator(R, seed + t) for t in range(points)]
    gens: list[str] = []
    rels: list[NCPoly] = []
    stage1, stage2, names_all = [], [], []
    for k, A in enumerate(sigma.generators, start=1):
        n = A.rows
        Q = _QdetExpr(gens, rels, A, k, evals)
        full = tuple(range(n))
        for i in range(n):
            for j in range(n):
                if Q.invert(full, full, i, j) is not None:
                    stage1.append(f"|A{k}|_{i + 1}{j + 1}")
        names = [[f"S{k}_{i + 1}_{j + 1}" for j in range(n)] for i in range(n)]
        for row in names:
            for nm in row:
                if nm not in gens:
                    gens.append(nm)
                    stage2.append(nm)
        names_all.append(names)
        rels.extend(_matrix_relations(A, names))
    aux = [g for g in gens if g.startswith("Q")]
    ring, conf = _build_ring(R, gens, rels, complete_system, f"{R.name}_qSigma")
    return CohnPresentation(R, sigma, gens, rels, names_all, ring, conf,
                            {"stage1": stage1, "stage2": stage2, "auxiliary": aux})
