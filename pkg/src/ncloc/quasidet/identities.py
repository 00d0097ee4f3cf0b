"""Randomized checks of the standard quasideterminant identities.

Every instance of an identity is classified as holding, as missing a
prerequisite (some quasiminor in it is undefined or not invertible), or
as violated.  A family holds when it has at least one checked instance
and no violation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence

from ..errors import NotInvertible
from ..ring_core.linalg import field_determinant
from ..ring_core.matrices import RMatrix, flatten, inverse
from ..ring_core.rings import MatrixRing, QQ
from .core import invert_or_none, qdet_or_none
from .generate import random_mat2

HOLDS = "holds"
MISSING = "prerequisite-missing"
VIOLATED = "violated"


class Quasiminors:
    """Memoized |A^{I}_{J}|_{ij} keyed by label sets."""

    def __init__(self, A: RMatrix):
        self.A = A
        self._q: dict = {}
        self._qi: dict = {}
        self._inv: dict = {}

    def _sub_inverse(self, rows: frozenset, cols: frozenset):
        key = (rows, cols)
        if key not in self._inv:
            try:
                self._inv[key] = inverse(self.A.submatrix(rows, cols))
            except NotInvertible:
                self._inv[key] = None
        return self._inv[key]

    def q(self, rows: Iterable, cols: Iterable, i, j):
        """Same value as qdet on the submatrix; deleted blocks are inverted once and shared."""
        key = (frozenset(rows), frozenset(cols), i, j)
        if key in self._q:
            return self._q[key]
        R, C = key[0], key[1]
        if len(R) != len(C) or i not in R or j not in C:
            raise ValueError("quasiminor needs a square block containing (i, j)")
        a = self.A.entry(i, j)
        if len(R) == 1:
            val = a
        else:
            D_inv = self._sub_inverse(R - {i}, C - {j})
            if D_inv is None:
                val = None
            else:
                row = self.A.submatrix([i], C - {j})
                col = self.A.submatrix(R - {i}, [j])
                val = a - (row @ D_inv @ col).entries[0]
        self._q[key] = val
        return val

    def qinv(self, rows, cols, i, j):
        key = (frozenset(rows), frozenset(cols), i, j)
        if key not in self._qi:
            self._qi[key] = invert_or_none(self.q(rows, cols, i, j))
        return self._qi[key]

    def full(self, i, j):
        return self.q(self.A.row_labels, self.A.col_labels, i, j)


@dataclass
class FamilyResult:
    name: str
    checked: int = 0
    missing: int = 0
    violated: int = 0
    first_violation: str | None = None
    note: str | None = None

    @property
    def status(self) -> str:
        if self.violated:
            return VIOLATED
        return HOLDS if self.checked else MISSING

    def record(self, lhs, rhs, where: str):
        if lhs is None or rhs is None:
            self.missing += 1
        elif lhs == rhs:
            self.checked += 1
        else:
            self.violated += 1
            if self.first_violation is None:
                self.first_violation = f"{where}: {lhs} != {rhs}"

    def as_dict(self) -> dict:
        d = {"status": self.status, "checked": self.checked, "missing": self.missing, "violated": self.violated}
        if self.first_violation:
            d["first_violation"] = self.first_violation
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class IdentityReport:
    size: int
    ring: str
    families: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return all(f.status != VIOLATED for f in self.families.values())

    def statuses(self) -> dict:
        return {k: f.status for k, f in self.families.items()}

    def as_dict(self) -> dict:
        return {"size": self.size, "ring": self.ring, "families": {k: f.as_dict() for k, f in self.families.items()}}


def _mul(*xs):
    if any(x is None for x in xs):
        return None
    out = xs[0]
    for x in xs[1:]:
        out = out * x
    return out


def _neg(x):
    return None if x is None else -x


def _sum(terms):
    terms = list(terms)
    if any(t is None for t in terms):
        return None
    return terms


def _minus(a, terms):
    """a - sum(terms), or None if any term is missing."""
    if a is None or terms is None:
        return None
    for t in terms:
        a = a - t
    return a


def _random_unit(ring, rng: random.Random):
    if isinstance(ring, MatrixRing) and ring.k == 2:
        return random_mat2(rng)
    while True:
        v = ring(rng.randint(-4, 4))
        try:
            v.inverse()
            return v
        except NotInvertible:
            continue


def _random_element(ring, rng):
    if isinstance(ring, MatrixRing) and ring.k == 2:
        return ring(tuple(tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(2)))
    return ring(rng.randint(-3, 3))


# --- families ---------------------------------------------------------------

def _inverse(Q: Quasiminors, fam: FamilyResult, ctx):
    B = ctx.get("inverse")
    if B is None:
        fam.note = "matrix is not invertible"
        return
    A = Q.A
    for i in A.row_labels:
        for j in A.col_labels:
            fam.record(Q.qinv(A.row_labels, A.col_labels, i, j), B.entry(j, i), f"(i,j)=({i},{j})")


def _row_homological(Q: Quasiminors, fam: FamilyResult, ctx):
    A = Q.A
    R, C = set(A.row_labels), set(A.col_labels)
    for i in A.row_labels:
        for i2 in A.row_labels:
            if i2 == i:
                continue
            for j in A.col_labels:
                for j2 in A.col_labels:
                    if j2 == j:
                        continue
                    lhs = _mul(Q.full(i, j), Q.qinv(R - {i}, C - {j2}, i2, j))
                    rhs = _neg(_mul(Q.full(i, j2), Q.qinv(R - {i}, C - {j}, i2, j2)))
                    fam.record(lhs, rhs, f"i={i} i'={i2} j={j} j'={j2}")


def _column_homological(Q: Quasiminors, fam: FamilyResult, ctx):
    A = Q.A
    R, C = set(A.row_labels), set(A.col_labels)
    for i in A.row_labels:
        for i2 in A.row_labels:
            if i2 == i:
                continue
            for j in A.col_labels:
                for j2 in A.col_labels:
                    if j2 == j:
                        continue
                    lhs = _mul(Q.qinv(R - {i2}, C - {j}, i, j2), Q.full(i, j))
                    rhs = _neg(_mul(Q.qinv(R - {i}, C - {j}, i2, j2), Q.full(i2, j)))
                    fam.record(lhs, rhs, f"i={i} i'={i2} j={j} j'={j2}")


def _row_laplace(Q: Quasiminors, fam: FamilyResult, ctx):
    A = Q.A
    R, C = set(A.row_labels), set(A.col_labels)
    for i in A.row_labels:
        for l in A.col_labels:
            for k in A.row_labels:
                if k == i:
                    continue
                terms = _sum(
                    _mul(A.entry(i, j), Q.qinv(R - {i}, C - {l}, k, j), Q.q(R - {i}, C - {j}, k, l))
                    for j in A.col_labels if j != l
                )
                fam.record(_minus(A.entry(i, l), terms), Q.full(i, l), f"i={i} l={l} k={k}")


def _column_laplace(Q: Quasiminors, fam: FamilyResult, ctx):
    A = Q.A
    R, C = set(A.row_labels), set(A.col_labels)
    for l in A.row_labels:
        for j in A.col_labels:
            for k in A.col_labels:
                if k == j:
                    continue
                terms = _sum(
                    _mul(Q.q(R - {i}, C - {j}, l, k), Q.qinv(R - {l}, C - {j}, i, k), A.entry(i, j))
                    for i in A.row_labels if i != l
                )
                fam.record(_minus(A.entry(l, j), terms), Q.full(l, j), f"l={l} j={j} k={k}")


def _jacobi(Q: Quasiminors, fam: FamilyResult, ctx):
    B = ctx.get("inverse")
    if B is None:
        fam.note = "matrix is not invertible"
        return
    QB = ctx.setdefault("inverse_minors", Quasiminors(B))
    A = Q.A
    R, C = set(A.row_labels), set(A.col_labels)
    n = A.rows
    for i in A.row_labels:
        for j in A.col_labels:
            for m in ctx.get("jacobi_sizes", (0, 1, 2)):
                if m > n - 1:
                    continue
                for I in combinations(sorted(R - {i}, key=A.row_labels.index), m):
                    for I2 in combinations(sorted(C - {j}, key=A.col_labels.index), m):
                        J = R - set(I) - {i}
                        J2 = C - set(I2) - {j}
                        lhs = Q.qinv(set(I) | {i}, set(I2) | {j}, i, j)
                        rhs = QB.q(J2 | {j}, J | {i}, j, i)
                        fam.record(lhs, rhs, f"i={i} j={j} I={list(I)} I'={list(I2)}")


def _quasitelescoping(Q: Quasiminors, fam: FamilyResult, ctx):
    A = Q.A
    n = A.rows
    if n < 2:
        return
    r, c = A.row_labels, A.col_labels
    terms = []
    for m in range(1, n):            # positions; labels r[m], c[m]
        T_r, T_c = set(r[m + 1:]), set(c[m + 1:])
        t = _mul(
            Q.q({r[0]} | T_r, {c[m]} | T_c, r[0], c[m]),
            Q.qinv({r[m]} | T_r, {c[m]} | T_c, r[m], c[m]),
            Q.q({r[m]} | T_r, {c[0]} | T_c, r[m], c[0]),
        )
        terms.append(t)
    total = None
    if all(t is not None for t in terms):
        total = terms[0]
        for t in terms[1:]:
            total = total + t
    full = Q.full(r[0], c[0])
    rhs = None if full is None else A.entry(r[0], c[0]) - full
    fam.record(total, rhs, f"n={n}")


def _row_operation(Q: Quasiminors, fam: FamilyResult, ctx):
    A, rng = Q.A, ctx["rng"]
    ring = A.ring
    for i in A.row_labels:
        for l in A.row_labels:
            sources = [s for s in A.row_labels if s not in (i, l)]
            if not sources:
                continue
            new_row = [A.entry(l, c) for c in A.col_labels]
            for s in sources:
                lam = _random_element(ring, rng)
                new_row = [x + lam * A.entry(s, c) for x, c in zip(new_row, A.col_labels)]
            A2 = A.with_row(l, new_row)
            for j in A.col_labels:
                fam.record(qdet_or_none(A2, i, j), Q.full(i, j), f"i={i} target row {l} j={j}")


def _left_scaling(Q: Quasiminors, fam: FamilyResult, ctx):
    """Row l times mu from the left, and the mixed version with an invertible Lambda on the other rows."""
    A, rng = Q.A, ctx["rng"]
    ring = A.ring
    for l in A.row_labels:
        mu = _random_unit(ring, rng)
        A2 = A.with_row(l, [mu * A.entry(l, c) for c in A.col_labels])
        for i in A.row_labels:
            for j in A.col_labels:
                expect = Q.full(i, j)
                if i == l:
                    expect = _mul(mu, expect)
                fam.record(qdet_or_none(A2, i, j), expect, f"row {l} scaled, (i,j)=({i},{j})")
    # mixed: row i -> mu row i, the other rows -> Lambda (other rows)
    for i in A.row_labels:
        others = [p for p in A.row_labels if p != i]
        lam = _random_invertible(ring, len(others), rng)
        if lam is None:
            continue
        mu = _random_unit(ring, rng)
        rows = {i: [mu * A.entry(i, c) for c in A.col_labels]}
        for a, p in enumerate(others):
            acc = [ring.zero()] * A.cols
            for b, p2 in enumerate(others):
                acc = [x + lam.at(a, b) * A.entry(p2, c) for x, c in zip(acc, A.col_labels)]
            rows[p] = acc
        A2 = RMatrix(ring, A.rows, A.cols, tuple(e for p in A.row_labels for e in rows[p]), A.row_labels, A.col_labels)
        for j in A.col_labels:
            fam.record(qdet_or_none(A2, i, j), _mul(mu, Q.full(i, j)), f"mixed rows, i={i} j={j}")


def _random_invertible(ring, n: int, rng) -> RMatrix | None:
    if n == 0:
        return None
    for _ in range(50):
        M = RMatrix(ring, n, n, tuple(_random_element(ring, rng) for _ in range(n * n)))
        try:
            inverse(M)
            return M
        except NotInvertible:
            continue
    return None


def _recursive_form(Q: Quasiminors, fam: FamilyResult, ctx):
    A = Q.A
    if A.rows < 2:
        return
    R, C = set(A.row_labels), set(A.col_labels)
    for i in A.row_labels:
        for j in A.col_labels:
            terms = _sum(
                _mul(A.entry(i, l), Q.qinv(R - {i}, C - {j}, k, l), A.entry(k, j))
                for k in A.row_labels if k != i
                for l in A.col_labels if l != j
            )
            fam.record(_minus(A.entry(i, j), terms), Q.full(i, j), f"(i,j)=({i},{j})")


def _permutation_covariance(Q: Quasiminors, fam: FamilyResult, ctx):
    A, rng = Q.A, ctx["rng"]
    sig = list(A.row_labels)
    tau = list(A.col_labels)
    rng.shuffle(sig)
    rng.shuffle(tau)
    A2 = RMatrix(A.ring, A.rows, A.cols, tuple(A.entry(r, c) for r in sig for c in tau), tuple(sig), tuple(tau))
    for i in A.row_labels:
        for j in A.col_labels:
            fam.record(qdet_or_none(A2, i, j), Q.full(i, j), f"rows {sig} cols {tau}, (i,j)=({i},{j})")


def _heredity(Q: Quasiminors, fam: FamilyResult, ctx):
    A = Q.A
    ring = A.ring
    if not isinstance(ring, MatrixRing):
        fam.note = "needs matrix-ring entries"
        return
    k = ring.k
    flat = RMatrix.from_rows(QQ, flatten(A))
    for p, i in enumerate(A.row_labels):
        for q, j in enumerate(A.col_labels):
            block = Q.full(i, j)
            inner = None if block is None else RMatrix.from_rows(QQ, block.value)
            for a in range(k):
                for b in range(k):
                    lhs = None if inner is None else qdet_or_none(inner, a + 1, b + 1)
                    rhs = qdet_or_none(flat, p * k + a + 1, q * k + b + 1)
                    fam.record(lhs, rhs, f"block ({i},{j}) entry ({a + 1},{b + 1})")


def _det_ratio(Q: Quasiminors, fam: FamilyResult, ctx):
    A = Q.A
    if not (A.ring.is_commutative and A.ring.is_division):
        fam.note = "needs a commutative field"
        return
    det = field_determinant(A.values())
    for p, i in enumerate(A.row_labels):
        for q, j in enumerate(A.col_labels):
            minor = field_determinant(A.delete(i, j).values())
            rhs = None if minor == 0 else A.ring((-1) ** (p + q) * det / minor)
            fam.record(Q.full(i, j), rhs, f"(i,j)=({i},{j})")


def _muir_extension(Q: Quasiminors, fam: FamilyResult, ctx):
    """The 2 x 2 row homological relation extended by extra rows L and columns M."""
    A = Q.A
    n = A.rows
    if n < 3:
        return
    for i, i2 in permutations(A.row_labels, 2):
        for j, j2 in permutations(A.col_labels, 2):
            rest_r = [r for r in A.row_labels if r not in (i, i2)]
            rest_c = [c for c in A.col_labels if c not in (j, j2)]
            for size in range(1, n - 1):
                for L in combinations(rest_r, size):
                    for M in combinations(rest_c, size):
                        L_, M_ = set(L), set(M)
                        big_r, big_c = {i, i2} | L_, {j, j2} | M_
                        lhs = _mul(Q.q(big_r, big_c, i, j), Q.qinv({i2} | L_, {j} | M_, i2, j))
                        rhs = _neg(_mul(Q.q(big_r, big_c, i, j2), Q.qinv({i2} | L_, {j2} | M_, i2, j2)))
                        fam.record(lhs, rhs, f"i={i} i'={i2} j={j} j'={j2} L={list(L)} M={list(M)}")


FAMILIES: dict[str, Callable] = {
    "inverse": _inverse,
    "row_homological": _row_homological,
    "column_homological": _column_homological,
    "row_laplace": _row_laplace,
    "column_laplace": _column_laplace,
    "jacobi": _jacobi,
    "quasitelescoping": _quasitelescoping,
    "row_operation": _row_operation,
    "left_scaling": _left_scaling,
    "recursive_form": _recursive_form,
    "permutation_covariance": _permutation_covariance,
    "heredity": _heredity,
    "det_ratio": _det_ratio,
    "muir_extension": _muir_extension,
}


def applicable_families(ring) -> list[str]:
    """Default families for a ring: the determinant ratio needs a commutative
    field and heredity needs matrix-ring entries."""
    names = list(FAMILIES)
    if not (ring.is_commutative and ring.is_division):
        names.remove("det_ratio")
    if not isinstance(ring, MatrixRing):
        names.remove("heredity")
    return names


def identity_suite(A: RMatrix, families: Sequence[str] | None = None, seed=0, *,
                   jacobi_sizes: Sequence[int] = (0, 1, 2)) -> IdentityReport:
    """Run the requested identity families (all by default) on one matrix."""
    names = list(families) if families is not None else applicable_families(A.ring)
    unknown = [f for f in names if f not in FAMILIES]
    if unknown:
        raise KeyError(f"unknown identity families: {unknown}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    try:
        B = inverse(A)
    except NotInvertible:
        B = None
    ctx = {"rng": rng, "inverse": B, "jacobi_sizes": tuple(jacobi_sizes)}
    Q = Quasiminors(A)
    rep = IdentityReport(A.rows, A.ring.ring_id)
    for name in names:
        fam = FamilyResult(name)
        FAMILIES[name](Q, fam, ctx)
        rep.families[name] = fam
    return rep
