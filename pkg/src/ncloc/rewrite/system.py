"""Reduction systems, presented rings and diamond-lemma checks."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import BadOrder, NonTerminating, NotInvertible
from ..ring_core.linalg import integer_nullspace_scaled, nullspace
from ..ring_core.rings import Ring
from .ncpoly import NCPoly, Word, as_poly

STEP_BUDGET = 10 ** 6


class WordOrder:
    """Weighted degree-lexicographic order.

    Words are compared first by total weight, then lexicographically
    letter by letter using the generator precedence (earlier in
    ``precedence`` means larger).  Weights must be positive integers,
    which makes the order a well-order compatible with concatenation.
    """

    __slots__ = ("precedence", "weights", "_rank", "_weight")

    def __init__(self, precedence: Sequence[str], weights: Sequence[int]):
        self.precedence = tuple(precedence)
        self.weights = tuple(int(w) for w in weights)
        if any(w <= 0 for w in self.weights):
            raise BadOrder("generator weights must be positive")
        n = len(self.precedence)
        self._rank = {g: n - 1 - i for i, g in enumerate(self.precedence)}
        self._weight = dict(zip(self.precedence, self.weights))

    @classmethod
    def deglex(cls, precedence: Sequence[str], weights: Mapping[str, int] | None = None) -> "WordOrder":
        weights = weights or {}
        return cls(precedence, [weights.get(g, 1) for g in precedence])

    def key(self, w: Word):
        rank, weight = self._rank, self._weight
        return (sum(weight[g] for g in w), tuple(rank[g] for g in w))

    def weight_of(self, w: Word) -> int:
        return sum(self._weight[g] for g in w)

    def __eq__(self, other):
        return isinstance(other, WordOrder) and (self.precedence, self.weights) == (other.precedence, other.weights)

    def __hash__(self):
        return hash((self.precedence, self.weights))


@dataclass(frozen=True)
class Rule:
    lead: Word
    replacement: NCPoly

    def __str__(self):
        return f"{'*'.join(self.lead) or '1'} -> {self.replacement}"


@dataclass(frozen=True)
class Ambiguity:
    word: Word
    kind: str  # "overlap" or "inclusion"
    rules: tuple[int, int]
    resolvable: bool
    left: NCPoly
    right: NCPoly


class ReductionSystem:
    """Rewrite rules ``lead -> replacement`` checked against a word order."""

    def __init__(self, rules: Iterable[tuple[Word, NCPoly]], order: WordOrder):
        self.order = order
        self.rules: tuple[Rule, ...] = tuple(Rule(tuple(l), as_poly(r)) for l, r in rules)
        leads = [r.lead for r in self.rules]
        if len(set(leads)) != len(leads):
            raise BadOrder("two rules share a leading word")
        for rule in self.rules:
            k = order.key(rule.lead)
            for w in rule.replacement.words():
                if not order.key(w) < k:
                    raise BadOrder(
                        f"rule {rule} does not decrease the word order "
                        f"({'*'.join(w) or '1'} is not below {'*'.join(rule.lead)})"
                    )
        self.by_lead: dict[Word, NCPoly] = {r.lead: r.replacement for r in self.rules}
        self.lead_lengths: tuple[int, ...] = tuple(sorted({len(l) for l in leads}))
        self.inter_reduced = all(
            self.find_redex(w) is None for r in self.rules for w in r.replacement.words()
        )

    def find_redex(self, w: Word):
        """Leftmost occurrence of a leading word: (position, lead length) or None."""
        by_lead = self.by_lead
        n = len(w)
        for i in range(n):
            for L in self.lead_lengths:
                if i + L > n:
                    break
                if w[i:i + L] in by_lead:
                    return i, L
        return None


class PresentedRing(Ring):
    """Quotient of the free algebra by a terminating reduction system.

    Payload values are normal-form :class:`NCPoly` objects.  Normal forms
    are memoized per word; the memo only ever stores values that the
    plain algorithm would compute, so it is observationally pure.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        rules: Iterable[tuple] = (),
        *,
        precedence: Sequence[str] | None = None,
        weights: Mapping[str, int] | None = None,
        degrees: Mapping[str, int] | None = None,
        domain: bool = False,
        step_budget: int = STEP_BUDGET,
    ):
        self.name = name
        self.generators: tuple[str, ...] = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        prec = tuple(precedence) if precedence else self.generators
        if set(prec) != set(self.generators):
            raise ValueError("precedence must list every generator exactly once")
        self.weights = dict(weights or {})
        self.order = WordOrder.deglex(prec, self.weights)
        parsed = []
        for lead, rep in rules:
            lead_w = tuple(lead.split("*")) if isinstance(lead, str) else tuple(lead)
            parsed.append((lead_w, as_poly(rep)))
        for lead_w, rep in parsed:
            bad = (set(lead_w) | rep.generators()) - set(self.generators)
            if bad:
                raise ValueError(f"rule uses unknown generators {sorted(bad)}")
        self.system = ReductionSystem(parsed, self.order)
        self.degrees = dict(degrees or {})
        self.domain = domain
        self.step_budget = step_budget
        sig = repr((name, self.generators, prec, sorted(self.weights.items()),
                    [(r.lead, sorted((w, str(c)) for w, c in r.replacement.items())) for r in self.system.rules]))
        self.ring_id = f"{name}#{hashlib.sha1(sig.encode()).hexdigest()[:8]}"
        self.is_division = False
        self._memo: dict[Word, NCPoly] = {}
        self._basis_cache: dict[int, tuple[Word, ...]] = {}
        self._grading_cache = None
        self._md_index: dict[int, dict] = {}
        self._commutative = None

    # --- Ring interface ------------------------------------------------
    @property
    def is_commutative(self) -> bool:  # type: ignore[override]
        if self._commutative is None:
            gens = self.generators
            self._commutative = all(
                self.normal_form(NCPoly.word(g, h)) == self.normal_form(NCPoly.word(h, g))
                for i, g in enumerate(gens) for h in gens[i + 1:]
            )
        return self._commutative

    def coerce(self, value):
        return self.normal_form(as_poly(value))

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return self.normal_form(a * b)

    def is_zero(self, a):
        return a.is_zero()

    def inv(self, a):
        if a.is_constant() and not a.is_zero():
            return NCPoly.const(1 / a.constant_value())
        raise NotInvertible(f"{self.format(a)} is not a unit in {self.name}")

    def hash_value(self, a):
        return hash(a)

    def format(self, a):
        return a.format(self.order.key)

    def __repr__(self):
        return f"PresentedRing({self.name})"

    # --- generators and words -------------------------------------------
    def gen(self, name: str) -> NCPoly:
        if name not in self.generators:
            raise KeyError(f"{name} is not a generator of {self.name}")
        return NCPoly.gen(name)

    def gens(self) -> tuple[NCPoly, ...]:
        return tuple(NCPoly.gen(g) for g in self.generators)

    def key(self, w: Word):
        return self.order.key(w)

    # --- normal forms ---------------------------------------------------
    def _nf_word(self, w: Word) -> NCPoly:
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        system = self.system
        if system.find_redex(w) is None:
            return NCPoly._raw({w: Fraction(1)})
        acc: dict[Word, object] = {}
        stack: list[tuple[Word, object]] = [(w, Fraction(1))]
        steps = 0
        memo = self._memo
        by_lead = system.by_lead
        while stack:
            u, c = stack.pop()
            m = memo.get(u)
            if m is not None:
                for t, d in m.items():
                    acc[t] = acc.get(t, 0) + c * d
                continue
            hit = system.find_redex(u)
            if hit is None:
                acc[u] = acc.get(u, 0) + c
                continue
            steps += 1
            if steps > self.step_budget:
                raise NonTerminating(
                    f"normal form of {'*'.join(w)} exceeded {self.step_budget} rewrite steps"
                )
            i, L = hit
            prefix, suffix = u[:i], u[i + L:]
            for t, d in by_lead[u[i:i + L]].items():
                stack.append((prefix + t + suffix, c * d))
        result = NCPoly._raw({t: c for t, c in acc.items() if c != 0})
        memo[w] = result
        return result

    def normal_form(self, p) -> NCPoly:
        p = as_poly(p)
        out: dict[Word, object] = {}
        for w, c in p.items():
            for t, d in self._nf_word(w).items():
                v = out.get(t)
                out[t] = c * d if v is None else v + c * d
        return NCPoly._raw({t: c for t, c in out.items() if c != 0})

    def is_reduced_word(self, w: Word) -> bool:
        return self.system.find_redex(tuple(w)) is None

    def is_normal(self, p: NCPoly) -> bool:
        return all(self.is_reduced_word(w) for w in p.words())

    def mul_nf(self, *factors) -> NCPoly:
        result = NCPoly.one()
        for f in factors:
            result = self.normal_form(result * as_poly(f))
        return result

    # --- bases and gradings ---------------------------------------------
    def basis_words(self, max_degree: int) -> tuple[Word, ...]:
        """Irreducible words of length <= max_degree, ascending in the order."""
        cached = self._basis_cache.get(max_degree)
        if cached is not None:
            return cached
        words: list[Word] = [()]
        layer: list[Word] = [()]
        leads = self.system.by_lead
        lengths = self.system.lead_lengths
        for _ in range(max_degree):
            nxt = []
            for w in layer:
                for g in self.generators:
                    u = w + (g,)
                    n = len(u)
                    if any(L <= n and u[n - L:] in leads for L in lengths):
                        continue
                    nxt.append(u)
            words.extend(nxt)
            layer = nxt
        out = tuple(sorted(words, key=self.order.key))
        self._basis_cache[max_degree] = out
        return out

    def gradings(self) -> tuple[tuple[int, ...], ...]:
        """Integer gradings (one weight vector per basis element) making all rules homogeneous."""
        if self._grading_cache is None:
            idx = {g: i for i, g in enumerate(self.generators)}
            rows = []
            for rule in self.system.rules:
                base = [0] * len(self.generators)
                for g in rule.lead:
                    base[idx[g]] += 1
                for w in rule.replacement.words():
                    row = list(base)
                    for g in w:
                        row[idx[g]] -= 1
                    rows.append(row)
            basis = nullspace(rows, len(self.generators)) if rows else [
                [Fraction(int(i == j)) for j in range(len(self.generators))] for i in range(len(self.generators))
            ]
            self._grading_cache = tuple(integer_nullspace_scaled(basis))
        return self._grading_cache

    def multidegree(self, w: Word) -> tuple[int, ...]:
        idx = {g: i for i, g in enumerate(self.generators)}
        return tuple(sum(vec[idx[g]] for g in w) for vec in self.gradings())

    def multidegrees(self, p: NCPoly) -> set[tuple[int, ...]]:
        return {self.multidegree(w) for w in p.words()}

    def homogeneous_degree(self, p: NCPoly):
        """The common multidegree of all terms, or None when p is not homogeneous."""
        mds = self.multidegrees(p)
        return next(iter(mds)) if len(mds) == 1 else None

    def words_by_multidegree(self, max_degree: int) -> dict[tuple[int, ...], list[Word]]:
        index = self._md_index.get(max_degree)
        if index is None:
            index = {}
            for w in self.basis_words(max_degree):
                index.setdefault(self.multidegree(w), []).append(w)
            self._md_index[max_degree] = index
        return index

    def filtration_degree(self, p: NCPoly) -> int | None:
        """Largest sum of per-generator degrees over the terms (None for zero)."""
        if p.is_zero():
            return None
        return max(sum(self.degrees.get(g, 0) for g in w) for w in p.words())

    # --- derived presentations ------------------------------------------
    def extended(self, name: str, new_generators: Sequence[str], extra_rules: Iterable[tuple],
                 precedence: Sequence[str] | None = None, weights: Mapping[str, int] | None = None,
                 domain: bool = False) -> "PresentedRing":
        gens = self.generators + tuple(new_generators)
        rules = [(r.lead, r.replacement) for r in self.system.rules] + list(extra_rules)
        prec = precedence or (tuple(self.order.precedence) + tuple(new_generators))
        w = dict(self.weights)
        w.update(weights or {})
        return PresentedRing(name, gens, rules, precedence=prec, weights=w, degrees=self.degrees, domain=domain)


def normal_form(p, R: PresentedRing) -> NCPoly:
    return R.normal_form(p)


def basis_words(R: PresentedRing, max_degree: int) -> tuple[Word, ...]:
    return R.basis_words(max_degree)


def _reduce_once_at(R: PresentedRing, w: Word, pos: int, lead: Word) -> NCPoly:
    prefix, suffix = w[:pos], w[pos + len(lead):]
    rep = R.system.by_lead[lead]
    return NCPoly._raw({prefix + t + suffix: c for t, c in rep.items()}) if rep else NCPoly.zero()


def overlap_ambiguities(R: PresentedRing, bound: int | None = None) -> list[Ambiguity]:
    """Every overlap and inclusion ambiguity among the leading words."""
    rules = R.system.rules
    out: list[Ambiguity] = []
    for a, ra in enumerate(rules):
        la = ra.lead
        for b, rb in enumerate(rules):
            lb = rb.lead
            # overlap: a proper suffix of la equals a proper prefix of lb
            for k in range(1, min(len(la), len(lb))):
                if la[len(la) - k:] == lb[:k]:
                    w = la + lb[k:]
                    if bound is not None and len(w) > bound:
                        continue
                    left = R.normal_form(_reduce_once_at(R, w, 0, la))
                    right = R.normal_form(_reduce_once_at(R, w, len(la) - k, lb))
                    out.append(Ambiguity(w, "overlap", (a, b), left == right, left, right))
            # inclusion: lb occurs strictly inside la
            if a != b and len(lb) <= len(la):
                for pos in range(len(la) - len(lb) + 1):
                    if la[pos:pos + len(lb)] == lb:
                        if bound is not None and len(la) > bound:
                            continue
                        left = R.normal_form(ra.replacement)
                        right = R.normal_form(_reduce_once_at(R, la, pos, lb))
                        out.append(Ambiguity(la, "inclusion", (a, b), left == right, left, right))
    return out


def is_confluent(R: PresentedRing) -> bool:
    return all(amb.resolvable for amb in overlap_ambiguities(R))
