"""Bounded exact linear search over presented rings.

Existential statements such as "there is r' with r' s = s' r" become
linear systems once r' is written as an unknown combination of basis
words up to a degree bound.  This module builds and solves such systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..rewrite.ncpoly import NCPoly, Word
from ..rewrite.system import PresentedRing
from ..ring_core.linalg import ColumnEchelon

# An equation sum_k X_k * factors[k] = target, with the unknowns X_k on the left.
Equation = tuple[dict[int, NCPoly], NCPoly]


@dataclass(frozen=True)
class SolveResult:
    values: tuple[NCPoly, ...] | None
    columns: int
    rank: int

    @property
    def solvable(self) -> bool:
        return self.values is not None

    @property
    def kernel_dim(self) -> int:
        return self.columns - self.rank


def default_bound(*elements: NCPoly) -> int:
    """max(8, sum of input degrees + 4)."""
    total = sum(max(e.degree, 0) for e in elements)
    return max(8, total + 4)


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def candidate_words(ring: PresentedRing, n_unknowns: int, equations: Sequence[Equation], bound: int) -> list[list[Word]]:
    """Basis words each unknown may use.

    When every factor is homogeneous for the ring's gradings, only the
    components that can reach a target degree are kept.  Components
    outside that closure touch only degree slots where every target
    vanishes, so dropping them preserves solvability exactly.
    """
    all_words = list(ring.basis_words(bound))
    if not ring.gradings():
        return [all_words for _ in range(n_unknowns)]
    facdeg: dict[tuple[int, int], tuple] = {}
    for e, (factors, _) in enumerate(equations):
        for k, f in factors.items():
            if f.is_zero():
                continue
            d = ring.homogeneous_degree(f)
            if d is None:
                return [all_words for _ in range(n_unknowns)]
            facdeg[(e, k)] = d
    index = ring.words_by_multidegree(bound)
    slots = {e: set(ring.multidegrees(t)) for e, (_, t) in enumerate(equations)}
    allowed: list[set] = [set() for _ in range(n_unknowns)]
    changed = True
    while changed:
        changed = False
        for (e, k), d in facdeg.items():
            for gamma in list(slots[e]):
                delta = _vsub(gamma, d)
                if delta in index and delta not in allowed[k]:
                    allowed[k].add(delta)
                    changed = True
                    for (e2, k2), d2 in facdeg.items():
                        if k2 == k:
                            slots[e2].add(_vadd(delta, d2))
    out = []
    for k in range(n_unknowns):
        words = [w for delta in allowed[k] for w in index[delta]]
        out.append(sorted(words, key=ring.key))
    return out


def solve_left_system(
    ring: PresentedRing,
    equations: Sequence[Equation],
    bases: Sequence[Sequence[NCPoly]],
) -> SolveResult:
    """Find X_k in span(bases[k]) with sum_k X_k * f_{e,k} = t_e for every equation e."""
    ech = ColumnEchelon(sort_key=lambda key: (key[0], ring.key(key[1])))
    owners: list[tuple[int, NCPoly]] = []
    for k, basis in enumerate(bases):
        for p in basis:
            vec: dict = {}
            for e, (factors, _) in enumerate(equations):
                f = factors.get(k)
                if f is None or f.is_zero():
                    continue
                for w, c in ring.normal_form(p * f).items():
                    vec[(e, w)] = vec.get((e, w), 0) + c
            ech.add_column(vec)
            owners.append((k, p))
    target: dict = {}
    for e, (_, t) in enumerate(equations):
        for w, c in ring.normal_form(t).items():
            target[(e, w)] = c
    combo = ech.solve(target)
    if combo is None:
        return SolveResult(None, len(owners), ech.rank)
    acc: list[NCPoly] = [NCPoly.zero() for _ in bases]
    for col, c in combo.items():
        k, p = owners[col]
        acc[k] = acc[k] + p.scale(c)
    return SolveResult(tuple(acc), len(owners), ech.rank)


def solve_over_words(ring: PresentedRing, equations: Sequence[Equation], n_unknowns: int, bound: int) -> SolveResult:
    words = candidate_words(ring, n_unknowns, equations, bound)
    bases = [[NCPoly._raw({w: Fraction(1)}) for w in ws] for ws in words]
    return solve_left_system(ring, equations, bases)
