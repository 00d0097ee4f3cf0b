"""Quasideterminants and the noncommutative Cramer rules.

All functions work with labelled :class:`RMatrix` objects.  Row and
column arguments are labels, not positions, so submatrices can be
addressed with the labels of their parent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

from ..errors import NotInvertible, QDetMissing, Undefined
from ..ring_core.matrices import RMatrix, inverse
from ..ring_core.rings import RingElement


def qdet(A: RMatrix, i: Hashable, j: Hashable) -> RingElement:
    """|A|_ij = a_ij - (row i without j) (A with row i, column j deleted)^-1 (column j without i).

    Raises Undefined when the deleted submatrix is not invertible.
    """
    if not A.is_square or A.rows == 0:
        raise ValueError("quasideterminants need a nonempty square matrix")
    a = A.entry(i, j)
    if A.rows == 1:
        return a
    rest_rows = [r for r in A.row_labels if r != i]
    rest_cols = [c for c in A.col_labels if c != j]
    try:
        D_inv = inverse(A.submatrix(rest_rows, rest_cols))
    except NotInvertible:
        raise Undefined(f"|A|_{{{i},{j}}}: the submatrix without row {i} and column {j} is singular") from None
    row = A.submatrix([i], rest_cols)
    col = A.submatrix(rest_rows, [j])
    return a - (row @ D_inv @ col).entries[0]


def qdet_or_none(A: RMatrix, i, j) -> RingElement | None:
    try:
        return qdet(A, i, j)
    except Undefined:
        return None


def invert_or_none(x: RingElement | None) -> RingElement | None:
    if x is None:
        return None
    try:
        return x.inverse()
    except NotInvertible:
        return None


def inv_via_qdet(A: RMatrix) -> RMatrix:
    """A^-1 with (A^-1)_{ji} = |A|_{ij}^-1 for every label pair.

    Raises QDetMissing at the first pair (row-major in A's labels) whose
    quasideterminant is undefined or not invertible.
    """
    if not A.is_square:
        raise ValueError("square matrix expected")
    vals: dict = {}
    for i in A.row_labels:
        for j in A.col_labels:
            q = invert_or_none(qdet_or_none(A, i, j))
            if q is None:
                raise QDetMissing(i, j)
            vals[(j, i)] = q
    entries = tuple(vals[(r, c)] for r in A.col_labels for c in A.row_labels)
    return RMatrix(A.ring, A.cols, A.rows, entries, A.col_labels, A.row_labels)


@dataclass(frozen=True)
class CramerSolution:
    values: tuple                    # x^j in the order of the column labels
    certificates: dict               # label j -> {row label i: value computed from row i}
    consistent: bool                 # every admissible row gave the same value


def cramer_left(A: RMatrix, xi: Sequence) -> CramerSolution:
    """Solve A x = xi with x^j = |A|_ij^-1 |A(j, xi)|_ij, recording the value for every usable i."""
    ring = A.ring
    xi = [ring(v) for v in xi]
    values, certs, consistent = [], {}, True
    for j in A.col_labels:
        Aj = A.with_column(j, xi)
        per_row = {}
        for i in A.row_labels:
            q = invert_or_none(qdet_or_none(A, i, j))
            if q is None:
                continue
            r = qdet_or_none(Aj, i, j)
            if r is None:
                continue
            per_row[i] = q * r
        if not per_row:
            raise Undefined(f"no row gives a Cramer value for x^{j}")
        first = next(iter(per_row.values()))
        consistent &= all(v == first for v in per_row.values())
        values.append(first)
        certs[j] = per_row
    return CramerSolution(tuple(values), certs, consistent)


def cramer_right(B: RMatrix, zeta: Sequence) -> CramerSolution:
    """Solve y B = zeta (y a row indexed by B's row labels).

    y^j = |B with row j replaced by zeta|_ji |B|_ji^-1 for every usable column i.
    """
    ring = B.ring
    zeta = [ring(v) for v in zeta]
    values, certs, consistent = [], {}, True
    for j in B.row_labels:
        Bj = B.with_row(j, zeta)
        per_col = {}
        for i in B.col_labels:
            q = invert_or_none(qdet_or_none(B, j, i))
            if q is None:
                continue
            r = qdet_or_none(Bj, j, i)
            if r is None:
                continue
            per_col[i] = r * q
        if not per_col:
            raise Undefined(f"no column gives a Cramer value for y^{j}")
        first = next(iter(per_col.values()))
        consistent &= all(v == first for v in per_col.values())
        values.append(first)
        certs[j] = per_col
    return CramerSolution(tuple(values), certs, consistent)
