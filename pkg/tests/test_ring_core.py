from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from ncloc.ring_core import (
    QQ,
    ZZ,
    IntegersMod,
    MatrixRing,
    MixedRings,
    NotInvertible,
    PolynomialRingQ,
    RationalFunction,
    RationalFunctionField,
    RMatrix,
    UPoly,
    block_inverse,
    field_determinant,
    inv,
    inverse,
    nullspace,
    poly_gcd,
    poly_xgcd,
    rational_inverse,
    smith_normal_form,
)

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small = st.integers(-5, 5)


def sym(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])


def back(M):
    return [[Fraction(int(x.p), int(x.q)) for x in M.row(i)] for i in range(M.rows)]


# --- scalars -------------------------------------------------------------------

def test_rational_inverse_examples():
    assert inv(QQ(Fraction(3, 4))) == QQ(Fraction(4, 3))
    assert inv(QQ(-1)) == QQ(-1)
    with pytest.raises(NotInvertible):
        inv(QQ(0))


def test_integer_units():
    assert inv(ZZ(-1)) == ZZ(-1)
    with pytest.raises(NotInvertible):
        inv(ZZ(2))


def test_integers_mod_prime_inverse():
    F7 = IntegersMod(7)
    assert F7.is_division
    assert inv(F7(3)) * F7(3) == F7(1)
    Z6 = IntegersMod(6)
    assert not Z6.is_division
    with pytest.raises(NotInvertible):
        inv(Z6(2))


def test_mixed_rings_are_refused():
    with pytest.raises(MixedRings):
        QQ(1) + ZZ(1)
    with pytest.raises(MixedRings):
        MatrixRing(2)(1) * MatrixRing(3)(1)


@given(fracs.filter(lambda x: x != 0))
def test_double_inverse_rational(x):
    assert inv(inv(QQ(x))) == QQ(x)


@given(st.lists(st.lists(small, min_size=2, max_size=2), min_size=2, max_size=2))
def test_double_inverse_mat2(rows):
    M = MatrixRing(2)(rows)
    if sympy.Matrix(rows).det() == 0:
        with pytest.raises(NotInvertible):
            inv(M)
    else:
        assert inv(inv(M)) == M
        assert inv(M) * M == MatrixRing(2).one()


def test_mat2_inverse_matches_sympy():
    M = MatrixRing(2)([[3, 2], [2, 3]])
    want = back(sympy.Matrix([[3, 2], [2, 3]]).inv())
    assert inv(M) == MatrixRing(2)(want)


@given(st.lists(st.lists(st.lists(small, min_size=2, max_size=2), min_size=2, max_size=2), min_size=3, max_size=3))
def test_mat2_multiplication_associative(triple):
    R = MatrixRing(2)
    a, b, c = (R(x) for x in triple)
    assert (a * b) * c == a * (b * c)


def test_mat2_is_not_commutative():
    R = MatrixRing(2)
    a, b = R([[0, 1], [0, 0]]), R([[0, 0], [1, 0]])
    assert a * b != b * a


# --- univariate polynomials and rational functions -----------------------------

xs = sympy.Symbol("x")


def to_sym(p: UPoly):
    return sum(sympy.Rational(c.numerator, c.denominator) * xs ** k for k, c in enumerate(p.coeffs))


upolys = st.lists(fracs, max_size=5).map(lambda cs: UPoly(cs))


@given(upolys, upolys)
def test_upoly_arithmetic_against_sympy(a, b):
    assert sympy.expand(to_sym(a + b) - (to_sym(a) + to_sym(b))) == 0
    assert sympy.expand(to_sym(a * b) - to_sym(a) * to_sym(b)) == 0


@given(upolys, upolys)
def test_gcd_and_bezout(a, b):
    g = poly_gcd(a, b)
    if a.is_zero() and b.is_zero():
        assert g.is_zero()
        return
    want = sympy.Poly(sympy.gcd(to_sym(a), to_sym(b)), xs)
    assert sympy.expand(to_sym(g) - want.monic().as_expr()) == 0
    d, u, v = poly_xgcd(a, b)
    assert u * a + v * b == d


def test_rational_function_is_reduced():
    x = UPoly.x()
    f = RationalFunction(x * x - UPoly.const(1), x - UPoly.const(1))
    assert f.den == UPoly.const(1)
    assert f.num == x + UPoly.const(1)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(x, 0)


def test_rational_function_derivative_against_sympy():
    x = UPoly.x()
    f = RationalFunction(x * x + UPoly.const(3), x * x * x - UPoly.const(2))
    got = f.derivative()
    want = sympy.diff((xs ** 2 + 3) / (xs ** 3 - 2), xs)
    assert sympy.simplify(to_sym(got.num) / to_sym(got.den) - want) == 0


def test_rational_function_field_inverse():
    K = RationalFunctionField("x")
    t = K.gen()
    assert inv(t) * t == K.one()
    assert inv(inv(t + 1)) == t + 1
    with pytest.raises(NotInvertible):
        inv(K.zero())


def test_polynomial_ring_units():
    P = PolynomialRingQ("x")
    assert inv(P(3)) == P(Fraction(1, 3))
    with pytest.raises(NotInvertible):
        inv(P.gen())


# --- linear algebra -----------------------------------------------------------------

def test_rational_inverse_against_sympy():
    rows = [[Fraction(2), Fraction(1), Fraction(0)], [Fraction(1), Fraction(3), Fraction(1)],
            [Fraction(0), Fraction(1), Fraction(4)]]
    assert rational_inverse(rows) == back(sym(rows).inv())
    assert field_determinant(rows) == Fraction(int(sym(rows).det()))


def test_singular_matrix_detected_exactly():
    with pytest.raises(NotInvertible):
        rational_inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_nullspace_dimension_against_sympy():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [1, 0, 1, 0]]
    basis = nullspace([[Fraction(x) for x in r] for r in rows], 4)
    assert len(basis) == len(sympy.Matrix(rows).nullspace())
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


def test_smith_normal_form_over_integers():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    D, U, V = smith_normal_form(A, ZZ)
    diag = [D[i][i] for i in range(3)]
    assert diag == [2, 6, 12]
    prod = sympy.Matrix(U) * sympy.Matrix(A) * sympy.Matrix(V)
    assert prod == sympy.Matrix(D)
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1


# --- matrices over rings and block inversion ---------------------------------------

def test_block_inverse_identity():
    I4 = RMatrix.identity(QQ, 4)
    (P, Q), (R, S) = block_inverse(I4, (2, 2)).blocks
    assert P == RMatrix.identity(QQ, 2) and S == RMatrix.identity(QQ, 2)
    assert all(e.is_zero() for e in Q.entries + R.entries)


def test_block_inverse_unipotent():
    A = RMatrix.from_rows(QQ, [[1, 1], [0, 1]])
    assert block_inverse(A, 1).flatten() == RMatrix.from_rows(QQ, [[1, -1], [0, 1]])


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=4, max_size=4), st.integers(1, 3))
def test_block_inverse_agrees_with_flat_inverse(rows, k):
    if sympy.Matrix(rows).det() == 0:
        return
    A = RMatrix.from_rows(QQ, rows)
    try:
        B = block_inverse(A, k).flatten()
    except NotInvertible:
        # both diagonal blocks can be singular even when A is not
        return
    assert B == RMatrix.from_rows(QQ, back(sympy.Matrix(rows).inv()))


def test_block_inverse_switches_to_trailing_block():
    A = RMatrix.from_rows(QQ, [[0, 1], [1, 1]])
    assert block_inverse(A, 1).flatten() == inverse(A)


def test_inverse_over_mat2_entries():
    R = MatrixRing(2)
    A = RMatrix.from_rows(R, [[R([[1, 2], [0, 1]]), R(1)], [R(0), R([[2, 0], [1, 1]])]])
    B = inverse(A)
    assert A @ B == RMatrix.identity(R, 2)
    assert B @ A == RMatrix.identity(R, 2)


def test_inverse_over_integers_must_stay_integral():
    assert inverse(RMatrix.from_rows(ZZ, [[2, 1], [1, 1]])) == RMatrix.from_rows(ZZ, [[1, -1], [-1, 2]])
    with pytest.raises(NotInvertible):
        inverse(RMatrix.from_rows(ZZ, [[2, 0], [0, 1]]))
