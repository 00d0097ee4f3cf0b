"""Bounded completion of reduction systems (noncommutative Knuth-Bendix).

Relations are oriented by the ring's word order: the largest word of a
relation becomes the leading word of a new rule.  Unresolvable
ambiguities produce new relations; the loop stops once the system is
confluent or a round/rule budget is exhausted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ncpoly import NCPoly, as_poly
from .system import PresentedRing, overlap_ambiguities


@dataclass
class CompletionResult:
    ring: PresentedRing
    confluent: bool
    rounds: int
    added: list  # rules added beyond the oriented input relations, as strings


def orient(R: PresentedRing, p: NCPoly):
    """(lead, replacement) with p = c (lead - replacement), or None for p = 0."""
    p = as_poly(p)
    if p.is_zero():
        return None
    lead = max(p.words(), key=R.order.key)
    c = p.coeff(lead)
    rep = NCPoly._raw({w: -d / c for w, d in p.items() if w != lead})
    return lead, rep


def _rebuild(R: PresentedRing, rules: list) -> PresentedRing:
    return PresentedRing(
        R.name,
        R.generators,
        rules,
        precedence=R.order.precedence,
        weights=R.weights,
        degrees=R.degrees,
        domain=R.domain,
    )


def _current_rules(R: PresentedRing) -> list:
    return [(r.lead, r.replacement) for r in R.system.rules]


def add_relations(R: PresentedRing, relations: Iterable) -> PresentedRing:
    """Reduce each relation by the rules so far and orient what is left."""
    rules = _current_rules(R)
    for p in relations:
        p = R.normal_form(as_poly(p))
        o = orient(R, p)
        if o is None:
            continue
        rules.append(o)
        R = _rebuild(R, rules)
    return R


def complete(R: PresentedRing, max_rounds: int = 8, max_rules: int = 60, overlap_bound: int | None = None) -> CompletionResult:
    added: list = []
    for rnd in range(1, max_rounds + 1):
        bad = [a for a in overlap_ambiguities(R, overlap_bound) if not a.resolvable]
        if not bad:
            return CompletionResult(R, True, rnd - 1, added)
        rules = _current_rules(R)
        leads = {l for l, _ in rules}
        for amb in bad:
            diff = R.normal_form(amb.left - amb.right)
            o = orient(R, diff)
            # two differences sharing a lead: keep the first, the next round revisits the other
            if o is None or o[0] in leads:
                continue
            rules.append(o)
            leads.add(o[0])
            added.append(f"{'*'.join(o[0])} -> {o[1]}")
            if len(rules) > max_rules:
                return CompletionResult(_rebuild(R, rules), False, rnd, added)
        R = _rebuild(R, rules)
    confluent = all(a.resolvable for a in overlap_ambiguities(R, overlap_bound))
    return CompletionResult(R, confluent, max_rounds, added)


def presented_from_relations(
    name: str,
    generators: Sequence[str],
    relations: Iterable,
    *,
    precedence: Sequence[str] | None = None,
    weights: Mapping[str, int] | None = None,
) -> PresentedRing:
    base = PresentedRing(name, generators, [], precedence=precedence, weights=weights)
    return add_relations(base, relations)
