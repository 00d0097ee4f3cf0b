"""The commutative shortcut for fraction equality and where it breaks.

For commutative rings (s, r) and (s', r') define the same fraction iff
some t in S kills s r' - s' r.  The check below evaluates that relation
next to the genuine fraction relation and records every disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import Inconclusive
from .fractions import OreFraction, frac_eq
from .oreset import OreSet
from .search import default_bound


@dataclass
class RelationReport:
    bound: int
    agreements: list = field(default_factory=list)
    disagreements: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)

    @property
    def all_agree(self) -> bool:
        return not self.disagreements and not self.inconclusive


def commutative_relation(S: OreSet, s, r, s2, r2, bound: int | None = None) -> bool:
    """Some t in S (within the bound) with t (s r2 - s2 r) = 0."""
    ring = S.ring
    diff = ring.normal_form(S.coerce(s) * S.coerce(r2) - S.coerce(s2) * S.coerce(r))
    if diff.is_zero():
        return True
    bound = default_bound(diff) if bound is None else bound
    return S.annihilator_in_S(diff, bound) is not None


def commutative_relation_check(S: OreSet, pairs: Sequence, bound: int | None = None) -> RelationReport:
    """Compare the commutative relation with frac_eq on ((s, r), (s', r')) pairs."""
    rep = RelationReport(bound if bound is not None else 8)
    fmt = S.format
    for (s, r), (s2, r2) in pairs:
        x = OreFraction.make(S, s, r)
        y = OreFraction.make(S, s2, r2)
        label = f"({fmt(x.denom)}, {fmt(x.numer)}) vs ({fmt(y.denom)}, {fmt(y.numer)})"
        comm = commutative_relation(S, x.denom, x.numer, y.denom, y.numer, bound)
        try:
            true_eq = frac_eq(x, y, bound)
        except Inconclusive:
            rep.inconclusive.append({"pair": label, "commutative": comm})
            continue
        entry = {"pair": label, "commutative": comm, "fraction": true_eq}
        (rep.agreements if comm == true_eq else rep.disagreements).append(entry)
    return rep
