"""The filtered Ore criterion for rings with a bounded below filtration.

Degrees come from per-generator integers; the degree of a polynomial is
the largest degree of its words.  Starting from e at level d(e), each
step finds s'_k in S and e'_k with s'_k e_k - e'_k s of lower degree and
continues with the remainder e_(k-1).  When the floor level (where the
filtration vanishes) is reached, the steps telescope into an honest
Ore witness S' e = E' s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import LevelFailure
from ..rewrite.ncpoly import NCPoly, as_poly
from ..rewrite.system import PresentedRing
from ..ring_core.linalg import ColumnEchelon
from .oreset import OreSet


class FiltrationSpec:
    """Filtration F_k E spanned by words of degree <= k, zero at ``floor``."""

    def __init__(self, ring: PresentedRing, degrees: Mapping[str, int] | None = None, floor: int | None = None):
        self.ring = ring
        self.degrees = dict(degrees if degrees is not None else ring.degrees)
        missing = set(ring.generators) - set(self.degrees)
        if missing:
            raise ValueError(f"no degree given for {sorted(missing)}")
        self.floor = floor

    def word_degree(self, w) -> int:
        return sum(self.degrees[g] for g in w)

    def degree(self, p) -> int | None:
        """d(p); None for p = 0."""
        p = as_poly(p)
        if p.is_zero():
            return None
        return max(self.word_degree(w) for w in p.words())

    def check_subadditive(self, samples: Sequence) -> bool:
        """d(ab) <= d(a) + d(b) on all sample pairs (zero products skipped)."""
        for a in samples:
            for b in samples:
                ab = self.ring.normal_form(as_poly(a) * as_poly(b))
                if ab.is_zero():
                    continue
                if self.degree(ab) > self.degree(a) + self.degree(b):
                    return False
        return True


@dataclass
class LevelStep:
    level: int
    s_prime: NCPoly
    e_prime: NCPoly
    remainder: NCPoly


@dataclass
class FilteredReport:
    s: str
    e: str
    steps: list = field(default_factory=list)
    S_prime: str = ""
    E_prime: str = ""
    verified: bool = False
    bound: int = 0
    witness: tuple | None = None

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "e": self.e,
            "levels": [
                {"level": st.level, "s'": str(st.s_prime), "e'": str(st.e_prime), "remainder": str(st.remainder)}
                for st in self.steps
            ],
            "S'": self.S_prime,
            "E'": self.E_prime,
            "verified": self.verified,
            "bound": self.bound,
        }


def _level_step(F: FiltrationSpec, S: OreSet, s: NCPoly, e: NCPoly, k: int, bound: int):
    """Find s', e' with s' e - e' s in F_(k-1)."""
    ring = F.ring
    ds = F.degree(s)
    words = [w for w in ring.basis_words(bound)]
    for sp in S.elements(bound):
        lhs = ring.normal_form(sp * e)
        top = k + max(F.degree(sp) or 0, 0)
        cand = [w for w in words if k - ds <= F.word_degree(w) <= top - ds]
        ech = ColumnEchelon(sort_key=lambda key: ring.key(key))
        for w in cand:
            img = ring.normal_form(NCPoly._raw({w: Fraction(1)}) * s)
            ech.add_column({u: c for u, c in img.items() if F.word_degree(u) >= k})
        target = {u: c for u, c in lhs.items() if F.word_degree(u) >= k}
        combo = ech.solve(target)
        if combo is None:
            continue
        ep = NCPoly.zero()
        for col, c in combo.items():
            ep = ep + NCPoly._raw({cand[col]: c})
        rem = ring.normal_form(lhs - ep * s)
        return sp, ep, rem
    return None


def filtered_ore_witness(F: FiltrationSpec, S: OreSet, s, e, bound: int = 8) -> FilteredReport:
    """Run the descending induction for one pair and return the telescoped witness."""
    if F.floor is None:
        raise ValueError("the filtration needs a floor level with F_floor = 0")
    ring = F.ring
    s, e = S.coerce(s), S.coerce(e)
    rep = FilteredReport(ring.format(s), ring.format(e), bound=bound)
    if F.degree(s) is None:
        raise ValueError("s must be nonzero")
    cur = e
    steps: list[LevelStep] = []
    k = F.degree(cur)
    while not cur.is_zero():
        k = F.degree(cur)
        if k <= F.floor:
            # F_floor = 0, so a nonzero element cannot live here
            raise LevelFailure(k, bound)
        found = _level_step(F, S, s, cur, k, bound)
        if found is None:
            raise LevelFailure(k, bound)
        sp, ep, rem = found
        steps.append(LevelStep(k, sp, ep, rem))
        if not rem.is_zero() and F.degree(rem) >= k:
            raise LevelFailure(k, bound)
        cur = rem
    # telescope: S' = s'_last ... s'_first, E' = sum_k (s'_last ... s'_(k+1)) e'_k
    S_prime = NCPoly.one()
    E_prime = NCPoly.zero()
    for st in steps:
        E_prime = ring.normal_form(st.s_prime * E_prime + st.e_prime)
        S_prime = ring.normal_form(st.s_prime * S_prime)
    rep.steps = steps
    rep.S_prime = ring.format(S_prime)
    rep.E_prime = ring.format(E_prime)
    rep.verified = ring.normal_form(S_prime * e - E_prime * s).is_zero()
    rep.witness = (S_prime, E_prime)
    return rep


def filtered_ore_check(F: FiltrationSpec, S: OreSet, elements: Sequence | None = None, bound: int = 8) -> list[FilteredReport]:
    """Check every (generator of S, element) pair; raises LevelFailure on the first failure."""
    ring = F.ring
    elements = [ring.normal_form(as_poly(x)) for x in (elements if elements is not None else ring.gens())]
    return [filtered_ore_witness(F, S, s, e, bound) for s in S.generators for e in elements]
