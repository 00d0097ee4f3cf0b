from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, strategies as st

from ncloc.errors import QDetMissing, Undefined
from ncloc.quasidet import (
    HOLDS,
    MAT2,
    MISSING,
    VIOLATED,
    FamilyResult,
    Quasiminors,
    applicable_families,
    cramer_left,
    cramer_right,
    identity_suite,
    inv_via_qdet,
    qdet,
    random_mat2_matrix,
    random_rational_matrix,
)
from ncloc.ring_core import QQ, RMatrix, flatten, inverse


def rat(x):
    return Fraction(int(x.p), int(x.q))


def sympy_block_inverse(A: RMatrix):
    flat = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in flatten(A)])
    inv = flat.inv()
    n = A.rows
    return [[MAT2(((rat(inv[2 * p, 2 * q]), rat(inv[2 * p, 2 * q + 1])),
                   (rat(inv[2 * p + 1, 2 * q]), rat(inv[2 * p + 1, 2 * q + 1]))))
             for q in range(n)] for p in range(n)]


def test_qdet_one_by_one():
    A = RMatrix.from_rows(QQ, [[7]])
    assert qdet(A, 1, 1) == QQ(7)


def test_qdet_two_by_two_rational():
    A = RMatrix.from_rows(QQ, [[3, 2], [2, 3]])
    assert qdet(A, 1, 1) == QQ(Fraction(5, 3))


def test_identity_has_two_quasideterminants():
    I2 = RMatrix.identity(QQ, 2)
    assert qdet(I2, 1, 1) == QQ(1) and qdet(I2, 2, 2) == QQ(1)
    for i, j in ((1, 2), (2, 1)):
        with pytest.raises(Undefined):
            qdet(I2, i, j)
    with pytest.raises(QDetMissing) as exc:
        inv_via_qdet(I2)
    assert (exc.value.i, exc.value.j) == (1, 2)


def test_inverse_one_by_one():
    a = MAT2(((1, 2), (3, 4)))
    A = RMatrix(MAT2, 1, 1, (a,))
    assert inv_via_qdet(A).entries[0] == a.inverse()


@pytest.mark.parametrize("seed", range(4))
def test_inverse_via_quasideterminants_against_sympy(seed):
    A = random_mat2_matrix(3, seed)
    B = inv_via_qdet(A)
    want = sympy_block_inverse(A)
    assert [[B.at(p, q) for q in range(3)] for p in range(3)] == want


@given(st.lists(st.integers(-6, 6), min_size=9, max_size=9))
def test_det_ratio_against_sympy(vals):
    rows = [vals[0:3], vals[3:6], vals[6:9]]
    A = RMatrix.from_rows(QQ, rows)
    M = sympy.Matrix(rows)
    for i in range(3):
        for j in range(3):
            minor = M.minor_submatrix(i, j).det()
            if minor == 0:
                with pytest.raises(Undefined):
                    qdet(A, i + 1, j + 1)
                continue
            want = (-1) ** (i + j) * M.det() / minor
            assert qdet(A, i + 1, j + 1) == QQ(rat(sympy.Rational(want)))


def test_permutation_covariance_direct():
    A = random_rational_matrix(3, 11)
    base = qdet(A, 1, 2)
    for perm in permutations(range(3)):
        rows = [A.row_list()[k] for k in perm]
        labels = tuple(A.row_labels[k] for k in perm)
        B = RMatrix.from_rows(QQ, rows, labels, A.col_labels)
        assert qdet(B, 1, 2) == base


def test_cramer_left_examples():
    A = RMatrix.from_rows(QQ, [[3, 2], [2, 3]])
    sol = cramer_left(A, [1, 0])
    assert sol.values == (QQ(Fraction(3, 5)), QQ(Fraction(-2, 5)))
    assert sol.consistent
    I3 = RMatrix.identity(QQ, 3)
    assert cramer_left(I3, [4, 5, 6]).values == (QQ(4), QQ(5), QQ(6))
    assert cramer_right(I3, [4, 5, 6]).values == (QQ(4), QQ(5), QQ(6))


def test_cramer_left_matrix_entries_against_flat_solve():
    A = random_mat2_matrix(3, 5)
    xi = [MAT2(((1, 0), (2, 1))), MAT2(1), MAT2(((0, 1), (1, 0)))]
    sol = cramer_left(A, xi)
    assert sol.consistent
    X = RMatrix(MAT2, 3, 1, sol.values)
    assert A @ X == RMatrix(MAT2, 3, 1, tuple(xi))
    # every admissible row produced the same value
    for j, per_row in sol.certificates.items():
        assert len(set(map(str, per_row.values()))) == 1


def test_cramer_right_matrix_entries():
    B = random_mat2_matrix(2, 9)
    zeta = [MAT2(((1, 1), (0, 1))), MAT2(((2, 0), (0, 3)))]
    sol = cramer_right(B, zeta)
    Y = RMatrix(MAT2, 1, 2, sol.values)
    assert Y @ B == RMatrix(MAT2, 1, 2, tuple(zeta))


def test_cramer_transpose_consistency():
    A = RMatrix.from_rows(QQ, [[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    xi = [1, 2, 3]
    assert cramer_left(A, xi).values == cramer_right(A.transpose(), xi).values


@pytest.mark.parametrize("n", [3, 4])
def test_identity_suite_on_generic_matrices(n):
    rep = identity_suite(random_mat2_matrix(n, 100 + n), seed=1)
    assert rep.all_hold
    st_ = rep.statuses()
    for fam in ("inverse", "row_homological", "column_homological", "row_laplace", "column_laplace",
                "jacobi", "quasitelescoping", "heredity"):
        assert st_[fam] == HOLDS, fam


def test_identity_suite_rational_includes_det_ratio():
    rep = identity_suite(random_rational_matrix(4, 3), seed=0)
    assert rep.statuses()["det_ratio"] == HOLDS
    assert rep.all_hold


def test_identity_suite_one_by_one():
    rep = identity_suite(RMatrix.from_rows(QQ, [[2]]), ["quasitelescoping", "row_laplace"])
    assert rep.statuses() == {"quasitelescoping": MISSING, "row_laplace": MISSING}


def test_jacobi_specific_instance():
    A = random_rational_matrix(4, 21)
    B = inverse(A)
    QA, QB = Quasiminors(A), Quasiminors(B)
    lhs = QA.qinv({1, 2}, {1, 2}, 1, 1)
    rhs = QB.q({3, 4, 1}, {3, 4, 1}, 1, 1)
    assert lhs is not None and lhs == rhs


def test_applicable_families():
    assert "det_ratio" in applicable_families(QQ)
    assert "heredity" not in applicable_families(QQ)
    assert "heredity" in applicable_families(MAT2) and "det_ratio" not in applicable_families(MAT2)


def test_violation_is_reported_with_instance():
    fam = FamilyResult("demo")
    fam.record(QQ(1), QQ(2), "i=1 j=1")
    assert fam.status == VIOLATED
    assert fam.first_violation == "i=1 j=1: 1 != 2"
    with pytest.raises(KeyError):
        identity_suite(RMatrix.identity(QQ, 2), ["no_such_family"])
