"""Dense labelled matrices over a pluggable ring."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Sequence

from ..errors import MixedRings, NotInvertible
from .linalg import rational_inverse
from .rings import MatrixRing, Ring, RingElement


def _default_labels(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


@dataclass(frozen=True)
class RMatrix:
    """Row-major matrix of ring elements with ordered row/column labels.

    Labels default to 1..n as in the usual quasideterminant notation.
    Submatrices keep the labels (and their order) of the parent, so that
    ``|A^{I}_{J}|_{ij}`` can be written with the parent's indices.
    """

    ring: Ring
    rows: int
    cols: int
    entries: tuple[RingElement, ...]
    row_labels: tuple[Hashable, ...] = field(default=())
    col_labels: tuple[Hashable, ...] = field(default=())

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length does not match shape")
        if not self.row_labels:
            object.__setattr__(self, "row_labels", _default_labels(self.rows))
        if not self.col_labels:
            object.__setattr__(self, "col_labels", _default_labels(self.cols))
        if len(self.row_labels) != self.rows or len(self.col_labels) != self.cols:
            raise ValueError("label count does not match shape")
        for e in self.entries:
            if e.ring != self.ring:
                raise MixedRings(f"entry from {e.ring.ring_id} in a {self.ring.ring_id} matrix")

    # --- construction ----------------------------------------------------
    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence[Any]], row_labels=(), col_labels=()) -> "RMatrix":
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        entries = tuple(ring(x) for r in rows for x in r)
        return cls(ring, nr, nc, entries, tuple(row_labels), tuple(col_labels))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "RMatrix":
        return cls.from_rows(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "RMatrix":
        return cls.from_rows(ring, [[0] * cols for _ in range(rows)])

    @classmethod
    def column(cls, ring: Ring, values: Sequence[Any]) -> "RMatrix":
        return cls.from_rows(ring, [[v] for v in values])

    @classmethod
    def row(cls, ring: Ring, values: Sequence[Any]) -> "RMatrix":
        return cls.from_rows(ring, [list(values)])

    # --- access ----------------------------------------------------------
    def row_pos(self, label) -> int:
        try:
            return self.row_labels.index(label)
        except ValueError:
            raise KeyError(f"no row labelled {label!r}") from None

    def col_pos(self, label) -> int:
        try:
            return self.col_labels.index(label)
        except ValueError:
            raise KeyError(f"no column labelled {label!r}") from None

    def at(self, p: int, q: int) -> RingElement:
        return self.entries[p * self.cols + q]

    def entry(self, i, j) -> RingElement:
        return self.at(self.row_pos(i), self.col_pos(j))

    def row_list(self) -> list[list[RingElement]]:
        return [list(self.entries[p * self.cols:(p + 1) * self.cols]) for p in range(self.rows)]

    def values(self) -> list[list[Any]]:
        return [[e.value for e in r] for r in self.row_list()]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # --- derived matrices --------------------------------------------------
    def submatrix(self, row_labels: Iterable, col_labels: Iterable) -> "RMatrix":
        """A^{I}_{J}; labels come out in the parent's order."""
        rset, cset = set(row_labels), set(col_labels)
        rpos = [p for p, lab in enumerate(self.row_labels) if lab in rset]
        cpos = [q for q, lab in enumerate(self.col_labels) if lab in cset]
        if len(rpos) != len(rset) or len(cpos) != len(cset):
            raise KeyError("submatrix labels not present in matrix")
        entries = tuple(self.at(p, q) for p in rpos for q in cpos)
        return RMatrix(self.ring, len(rpos), len(cpos), entries,
                       tuple(self.row_labels[p] for p in rpos),
                       tuple(self.col_labels[q] for q in cpos))

    def delete(self, i, j) -> "RMatrix":
        """A^{î}_{ĵ}: drop row i and column j."""
        return self.submatrix([r for r in self.row_labels if r != i], [c for c in self.col_labels if c != j])

    def with_column(self, j, values: Sequence[Any]) -> "RMatrix":
        q = self.col_pos(j)
        vals = [self.ring(v) for v in values]
        rows = self.row_list()
        for p in range(self.rows):
            rows[p][q] = vals[p]
        return RMatrix(self.ring, self.rows, self.cols, tuple(e for r in rows for e in r),
                       self.row_labels, self.col_labels)

    def with_row(self, i, values: Sequence[Any]) -> "RMatrix":
        p = self.row_pos(i)
        rows = self.row_list()
        rows[p] = [self.ring(v) for v in values]
        return RMatrix(self.ring, self.rows, self.cols, tuple(e for r in rows for e in r),
                       self.row_labels, self.col_labels)

    def relabel(self, row_labels, col_labels) -> "RMatrix":
        return RMatrix(self.ring, self.rows, self.cols, self.entries, tuple(row_labels), tuple(col_labels))

    def transpose(self) -> "RMatrix":
        entries = tuple(self.at(p, q) for q in range(self.cols) for p in range(self.rows))
        return RMatrix(self.ring, self.cols, self.rows, entries, self.col_labels, self.row_labels)

    def map(self, fn, ring: Ring | None = None) -> "RMatrix":
        ring = ring or self.ring
        return RMatrix(ring, self.rows, self.cols, tuple(fn(e) for e in self.entries),
                       self.row_labels, self.col_labels)

    # --- arithmetic --------------------------------------------------------
    def _check(self, other: "RMatrix"):
        if other.ring != self.ring:
            raise MixedRings(f"{self.ring.ring_id} matrix with {other.ring.ring_id} matrix")

    def __add__(self, other: "RMatrix") -> "RMatrix":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RMatrix(self.ring, self.rows, self.cols,
                       tuple(a + b for a, b in zip(self.entries, other.entries)),
                       self.row_labels, self.col_labels)

    def __neg__(self) -> "RMatrix":
        return self.map(lambda e: -e)

    def __sub__(self, other: "RMatrix") -> "RMatrix":
        return self + (-other)

    def __matmul__(self, other: "RMatrix") -> "RMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        ring = self.ring
        a, b = self.row_list(), other.row_list()
        entries = []
        for p in range(self.rows):
            for q in range(other.cols):
                acc = ring.zero_value()
                for t in range(self.cols):
                    acc = ring.add(acc, ring.mul(a[p][t].value, b[t][q].value))
                entries.append(RingElement(ring, acc))
        return RMatrix(ring, self.rows, other.cols, tuple(entries), self.row_labels, other.col_labels)

    def scale_left(self, c: RingElement) -> "RMatrix":
        return self.map(lambda e: c * e)

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        self._check(other)
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for a, b in zip(self.entries, other.entries)
        )

    def __hash__(self):
        return hash((self.ring.ring_id, self.rows, self.cols, self.entries))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.row_list()) + "]"


# --- flattening block matrices -------------------------------------------


def flatten(A: RMatrix) -> list[list[Any]]:
    """Rational matrix obtained by expanding k x k matrix-ring entries."""
    if not isinstance(A.ring, MatrixRing):
        raise TypeError("flatten needs matrix-ring entries")
    k = A.ring.k
    out = [[None] * (A.cols * k) for _ in range(A.rows * k)]
    for p in range(A.rows):
        for q in range(A.cols):
            block = A.at(p, q).value
            for a in range(k):
                for b in range(k):
                    out[p * k + a][q * k + b] = block[a][b]
    return out


def unflatten(ring: MatrixRing, rows: Sequence[Sequence[Any]], row_labels=(), col_labels=()) -> RMatrix:
    k = ring.k
    nr, nc = len(rows) // k, len(rows[0]) // k
    entries = []
    for p in range(nr):
        for q in range(nc):
            block = tuple(tuple(rows[p * k + a][q * k + b] for b in range(k)) for a in range(k))
            entries.append(RingElement(ring, block))
    return RMatrix(ring, nr, nc, tuple(entries), tuple(row_labels), tuple(col_labels))


def inverse(A: RMatrix) -> RMatrix:
    """Exact two-sided inverse with row labels = A's column labels.

    Matrix-ring entries are inverted as one flat rational matrix and read
    back in blocks; commutative rings without inverses (ZZ, QQ[x]) are
    inverted over their fraction field and must land back in the ring.
    """
    if not A.is_square:
        raise NotInvertible("non-square matrix")
    ring = A.ring
    if A.rows == 0:
        return A.relabel(A.col_labels, A.row_labels)
    if isinstance(ring, MatrixRing):
        inv_rows = rational_inverse(flatten(A))
        return unflatten(ring, inv_rows, A.col_labels, A.row_labels)
    if ring.is_division and ring.is_commutative:
        inv_rows = rational_inverse(A.values())
        return RMatrix.from_rows(ring, inv_rows, A.col_labels, A.row_labels)
    if hasattr(ring, "fraction_value"):
        inv_rows = rational_inverse([[ring.fraction_value(v) for v in r] for r in A.values()])
        try:
            return RMatrix.from_rows(ring, inv_rows, A.col_labels, A.row_labels)
        except Exception:
            raise NotInvertible(f"matrix is not invertible over {ring.ring_id}") from None
    if ring.is_division:
        return _division_ring_inverse(A)
    raise NotInvertible(f"no inversion procedure for matrices over {ring.ring_id}")


def _division_ring_inverse(A: RMatrix) -> RMatrix:
    """Noncommutative Gauss-Jordan (row operations act from the left)."""
    ring = A.ring
    n = A.rows
    work = [row + [ring.one() if i == j else ring.zero() for j in range(n)] for i, row in enumerate(A.row_list())]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
        if pivot is None:
            raise NotInvertible("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        pinv = work[col][col].inverse()
        work[col] = [pinv * x for x in work[col]]
        for r in range(n):
            if r != col and not work[r][col].is_zero():
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    rows = [r[n:] for r in work]
    return RMatrix(ring, n, n, tuple(e for r in rows for e in r), A.col_labels, A.row_labels)


@dataclass(frozen=True)
class BlockMatrix:
    """2 x 2 block matrix [[P, Q], [R, S]]."""

    blocks: tuple[tuple[RMatrix, RMatrix], tuple[RMatrix, RMatrix]]

    def flatten(self) -> RMatrix:
        (P, Q), (R, S) = self.blocks
        ring = P.ring
        top = [a + b for a, b in zip(P.row_list() if P.rows else [[]] * Q.rows, Q.row_list() if Q.rows else [[]] * P.rows)]
        bottom = [a + b for a, b in zip(R.row_list() if R.rows else [[]] * S.rows, S.row_list() if S.rows else [[]] * R.rows)]
        rows = top + bottom
        n = len(rows)
        m = len(rows[0]) if rows else 0
        return RMatrix(ring, n, m, tuple(e for r in rows for e in r))


def _split_blocks(A: RMatrix, k: int) -> tuple[RMatrix, RMatrix, RMatrix, RMatrix]:
    r1, r2 = A.row_labels[:k], A.row_labels[k:]
    c1, c2 = A.col_labels[:k], A.col_labels[k:]
    return A.submatrix(r1, c1), A.submatrix(r1, c2), A.submatrix(r2, c1), A.submatrix(r2, c2)


def _plain(M: RMatrix) -> RMatrix:
    return M.relabel(_default_labels(M.rows), _default_labels(M.cols))


def block_inverse(A: RMatrix, split) -> BlockMatrix:
    """Invert A in stages through a Schur complement.

    ``split`` is either the size k of the leading diagonal block or a pair
    (k, n - k).  The leading block is tried first; when it is singular
    the trailing block is used instead.
    """
    if not A.is_square:
        raise NotInvertible("non-square matrix")
    k = split[0] if isinstance(split, (tuple, list)) else int(split)
    if isinstance(split, (tuple, list)) and sum(split) != A.rows:
        raise ValueError("split sizes do not add up to the matrix size")
    if not 0 < k < A.rows:
        raise ValueError("split must leave two nonempty diagonal blocks")
    P, Q, R, S = (_plain(M) for M in _split_blocks(A, k))
    try:
        Pi = inverse(P)
        Pi = _plain(Pi)
        T = S - R @ Pi @ Q
        Ti = _plain(inverse(T))
        X = Pi + Pi @ Q @ Ti @ R @ Pi
        Y = -(Pi @ Q @ Ti)
        Z = -(Ti @ R @ Pi)
        return BlockMatrix(((X, Y), (Z, Ti)))
    except NotInvertible:
        pass
    try:
        Si = _plain(inverse(S))
        T = P - Q @ Si @ R
        Ti = _plain(inverse(T))
    except NotInvertible:
        raise NotInvertible("no invertible Schur complement for this split") from None
    Y = -(Ti @ Q @ Si)
    Z = -(Si @ R @ Ti)
    W = Si + Si @ R @ Ti @ Q @ Si
    return BlockMatrix(((Ti, Y), (Z, W)))
