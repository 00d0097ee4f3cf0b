"""Bounded nonexistence certificates for D^n z1 = P D^2."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..rewrite.examples import counterexample_ring
from ..rewrite.ncpoly import NCPoly
from ..rewrite.system import PresentedRing
from .search import solve_over_words


@dataclass(frozen=True)
class NonexistenceRecord:
    n: int
    degP: int
    exponents: tuple
    solvable: bool
    solution: str | None
    kernel_dim: int      # dimension of {P : P D^2 = 0} in the searched space
    columns: int         # number of candidate words for P
    rank: int

    @property
    def solution_space_dim(self) -> int:
        """Dimension of the solution set; 0 is also reported when it is empty."""
        return self.kernel_dim

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "degP": self.degP,
            "exponents": list(self.exponents),
            "solvable": self.solvable,
            "solution": self.solution,
            "solution_space_dim": self.kernel_dim,
            "columns": self.columns,
            "rank": self.rank,
            "bound": self.degP,
        }


def counterexample_nonexistence(
    n: int,
    degP: int,
    exponents: Sequence[int] = (1, 2, 3),
    ring: PresentedRing | None = None,
) -> NonexistenceRecord:
    """Solve P D^2 = D^n z1 exactly over all reduced words P of length <= degP.

    Only words whose multidegree can reach the target under the ring's
    gradings enter the system; the others cannot contribute, so an
    unsolvable system certifies that no P of length <= degP exists.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    R = ring or counterexample_ring(exponents)
    D2 = NCPoly.word("D", "D")
    target = R.normal_form(NCPoly.word(*(("D",) * n + ("z1",))))
    res = solve_over_words(R, [({0: D2}, target)], 1, degP)
    sol = R.format(res.values[0]) if res.solvable else None
    return NonexistenceRecord(n, degP, tuple(exponents), res.solvable, sol, res.kernel_dim, res.columns, res.rank)
