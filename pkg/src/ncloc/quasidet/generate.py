"""Seeded random matrices for the identity suite."""

from __future__ import annotations

import random
from fractions import Fraction

from ..ring_core.linalg import field_determinant
from ..ring_core.matrices import RMatrix, flatten
from ..ring_core.rings import QQ, MatrixRing

MAT2 = MatrixRing(2)


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_mat2(seed=None, lo: int = -5, hi: int = 5):
    """An invertible 2 x 2 rational matrix with integer entries in [lo, hi]."""
    rng = _rng(seed)
    while True:
        a, b, c, d = (rng.randint(lo, hi) for _ in range(4))
        if a * d - b * c != 0:
            return MAT2(((a, b), (c, d)))


def random_mat2_matrix(n: int, seed=None, lo: int = -5, hi: int = 5) -> RMatrix:
    """n x n matrix whose entries are random invertible 2 x 2 matrices.

    The matrix as a whole is resampled until it is invertible; the
    individual quasideterminants are then generically defined.
    """
    rng = _rng(seed)
    while True:
        rows = [[random_mat2(rng, lo, hi) for _ in range(n)] for _ in range(n)]
        A = RMatrix(MAT2, n, n, tuple(e for r in rows for e in r))
        if field_determinant(flatten(A)) != 0:
            return A


def random_rational_matrix(n: int, seed=None, lo: int = -5, hi: int = 5) -> RMatrix:
    rng = _rng(seed)
    while True:
        rows = [[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]
        if field_determinant(rows) != 0:
            return RMatrix.from_rows(QQ, rows)
