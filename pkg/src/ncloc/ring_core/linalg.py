"""Exact linear algebra helpers.

Everything here works on plain payload values that support ``+ - * /``
and comparison with 0 (``Fraction`` or :class:`RationalFunction`).  No
floating point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Sequence

from ..errors import NotInvertible


def rational_inverse(rows: Sequence[Sequence[Any]]) -> list[list[Any]]:
    """Gauss-Jordan inverse of a square matrix over a commutative field."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    one = Fraction(1)
    work = [list(r) + [one if i == j else 0 * one for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise NotInvertible("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv_p = 1 / work[col][col]
        prow = [x * inv_p for x in work[col]]
        work[col] = prow
        for r in range(n):
            if r != col:
                factor = work[r][col]
                if factor != 0:
                    row = work[r]
                    work[r] = [x - factor * y for x, y in zip(row, prow)]
    return [row[n:] for row in work]


def field_determinant(rows: Sequence[Sequence[Any]]):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    work = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return 0 * det
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        p = work[col][col]
        det = det * p
        for r in range(col + 1, n):
            factor = work[r][col] / p
            if factor != 0:
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return det


def nullspace(rows: Sequence[Sequence[Any]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows * v = 0} over the rationals (reduced echelon)."""
    work = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        inv_p = 1 / work[r][c]
        work[r] = [x * inv_p for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -work[i][fcol]
        basis.append(v)
    return basis


class ColumnEchelon:
    """Incremental sparse column space with solution tracking.

    Columns are sparse vectors (dict key -> coefficient).  Each stored
    basis vector remembers the combination of original columns that
    produced it, so :meth:`solve` can return coefficients over the
    original columns.  Keys must be mutually comparable via ``sort_key``.
    """

    def __init__(self, sort_key: Callable[[Hashable], Any] = lambda k: k):
        self._key = sort_key
        self._pivots: dict[Hashable, tuple[dict, dict]] = {}
        self.ncols = 0

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _reduce(self, vec: dict, combo: dict) -> tuple[dict, dict]:
        vec = dict(vec)
        combo = dict(combo)
        while vec:
            lead = max(vec, key=self._key)
            stored = self._pivots.get(lead)
            if stored is None:
                return vec, combo
            pvec, pcombo = stored
            factor = vec[lead] / pvec[lead]
            for k, c in pvec.items():
                v = vec.get(k, 0) - factor * c
                if v == 0:
                    vec.pop(k, None)
                else:
                    vec[k] = v
            for k, c in pcombo.items():
                v = combo.get(k, 0) - factor * c
                if v == 0:
                    combo.pop(k, None)
                else:
                    combo[k] = v
        return vec, combo

    def add_column(self, vec: dict) -> bool:
        """Append a column; return True if it enlarged the column space."""
        index = self.ncols
        self.ncols += 1
        clean = {k: c for k, c in vec.items() if c != 0}
        red, combo = self._reduce(clean, {index: Fraction(1)})
        if not red:
            return False
        lead = max(red, key=self._key)
        self._pivots[lead] = (red, combo)
        return True

    def solve(self, target: dict) -> dict | None:
        """Coefficients c (column index -> value) with sum c_j col_j = target."""
        clean = {k: c for k, c in target.items() if c != 0}
        red, combo = self._reduce(clean, {})
        if red:
            return None
        return {k: -c for k, c in combo.items()}


def solve_sparse(columns: Sequence[dict], target: dict, sort_key=lambda k: k) -> dict | None:
    ech = ColumnEchelon(sort_key)
    for col in columns:
        ech.add_column(col)
    return ech.solve(target)


# --- Smith normal form over a Euclidean domain ---------------------------


def smith_normal_form(matrix: Sequence[Sequence[Any]], domain) -> tuple[list, list, list]:
    """Return (D, U, V) with U * matrix * V = D diagonal, U and V unimodular.

    ``domain`` is a ring_core Euclidean ring (ZZ or QQ[x]).  Diagonal
    entries are made canonical (non-negative / monic) and each divides
    the next.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    zero, one = domain.zero_value(), domain.one_value()
    A = [[domain.coerce(x) for x in row] for row in matrix]
    U = [[one if i == j else zero for j in range(m)] for i in range(m)]
    V = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def is_zero(x):
        return domain.is_zero(x)

    def size(x):
        return domain.euclid_size(x)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for row in A:
            row[dst] = row[dst] - q * row[src]
        for row in V:
            row[dst] = row[dst] - q * row[src]

    t = 0
    while t < min(m, n):
        cells = [(size(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if not is_zero(A[i][j])]
        if not cells:
            break
        _, pi, pj = min(cells)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if not is_zero(A[i][t]):
                    q, r = domain.divmod(A[i][t], A[t][t])
                    add_row(i, t, q)
                    if not is_zero(r):
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if not is_zero(A[t][j]):
                    q, r = domain.divmod(A[t][j], A[t][t])
                    add_col(j, t, q)
                    if not is_zero(r):
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                 if not domain.divides(A[t][t], A[i][j])),
                None,
            )
            if bad is None:
                break
            # fold the offending row into row t and restart the sweep
            i, _ = bad
            A[t] = [a + b for a, b in zip(A[t], A[i])]
            U[t] = [a + b for a, b in zip(U[t], U[i])]
        # canonical associate for the pivot
        piv = A[t][t]
        canon = domain.canonical(piv)
        if canon != piv:
            unit_inv = domain.exact_div(canon, piv)
            A[t] = [unit_inv * a for a in A[t]]
            U[t] = [unit_inv * a for a in U[t]]
        t += 1
    return A, U, V


def integer_nullspace_scaled(vectors: Iterable[Sequence[Fraction]]) -> list[tuple[int, ...]]:
    """Scale each rational vector to a primitive integer vector."""
    from math import gcd

    out = []
    for v in vectors:
        den = 1
        for x in v:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        ints = [int(Fraction(x) * den) for x in v]
        g = 0
        for x in ints:
            g = gcd(g, x)
        g = g or 1
        out.append(tuple(x // g for x in ints))
    return out
