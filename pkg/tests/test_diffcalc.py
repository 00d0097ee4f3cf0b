import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from ncloc.diffcalc import (
    Derivation,
    FodcSpec,
    PoissonStructure,
    central_calculus,
    check_localized_bracket,
    check_localized_derivation,
    differential_ore_check,
    differential_ore_witness,
    extend_derivation,
    extend_poisson,
    partial,
    q_plane_calculus,
    sample_fractions,
)
from ncloc.errors import NoWitnessWithinBound
from ncloc.ore import OreFraction, OreSet, frac_eq
from ncloc.rewrite import NCPoly, commutative_polynomials, q_plane

QX = commutative_polynomials(["x"])
QPQ = commutative_polynomials(["p", "q"])
QP = q_plane()
x, p, q = NCPoly.gen("x"), NCPoly.gen("p"), NCPoly.gen("q")
a, b = NCPoly.gen("a"), NCPoly.gen("b")
SX = OreSet(QX, [x])
SQ = OreSet(QPQ, [q])
SB = OreSet(QP, [b])
X, P, Q = sympy.symbols("x p q")


def to_sym(poly, env):
    return sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * sympy.Mul(*[env[g] for g in w])
               for w, c in poly.items())


def frac_sym(f, env):
    return to_sym(f.numer, env) / to_sym(f.denom, env)


# --- derivations -----------------------------------------------------------------

def test_derivation_of_one_is_zero():
    d = partial(QX, "x")
    assert d(NCPoly.one()).is_zero()
    D = extend_derivation(d, SX)
    assert D(OreFraction.of(SX, 1)).is_zero()


def test_derivative_of_inverse():
    D = extend_derivation(partial(QX, "x"), SX)
    got = D(OreFraction.make(SX, x, 1))
    assert frac_eq(got, OreFraction.make(SX, x * x, -1))


def test_qplane_scaling_derivation():
    d = Derivation(QP, {"a": a, "b": 0})
    D = extend_derivation(d, SB)
    f = OreFraction.make(SB, b, a)
    assert frac_eq(D(f), f)
    # Leibniz on b * (b^-1 a) = a
    assert D.leibniz_gap(OreFraction.of(SB, b), f)


def test_inconsistent_derivation_rejected():
    # d(a) = b, d(b) = 0 gives d(ab) = bb but d(2ba) = 2bb
    with pytest.raises(ValueError):
        Derivation(QP, {"a": b})


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4), st.integers(0, 3))
def test_localized_derivative_against_sympy(coeffs, k):
    r = QX.normal_form(sum((NCPoly.word(*("x",) * i, coeff=c) for i, c in enumerate(coeffs)), NCPoly.zero()))
    s = NCPoly.word(*("x",) * k)
    D = extend_derivation(partial(QX, "x"), SX)
    got = D(OreFraction.make(SX, s, r))
    want = sympy.diff(to_sym(r, {"x": X}) / X ** k, X)
    assert sympy.simplify(frac_sym(got, {"x": X}) - want) == 0


def test_localized_derivation_properties_qx():
    D = extend_derivation(partial(QX, "x"), SX)
    rep = check_localized_derivation(D, sample_fractions(SX, 10, seed=2))
    assert rep.ok and rep.leibniz_checked == 100


def test_localized_derivation_properties_qplane():
    D = extend_derivation(Derivation(QP, {"a": a, "b": 0}), SB)
    rep = check_localized_derivation(D, sample_fractions(SB, 8, seed=4))
    assert rep.ok and rep.well_defined_checked > 0


# --- Poisson brackets -------------------------------------------------------------

def canonical():
    return PoissonStructure(QPQ, {("q", "p"): 1})


def test_poisson_examples():
    B = extend_poisson(canonical(), SQ)
    qinv = OreFraction.make(SQ, q, 1)
    assert frac_eq(B(qinv, OreFraction.of(SQ, p)), OreFraction.make(SQ, q * q, -1))
    assert B(qinv, OreFraction.of(SQ, q)).is_zero()
    f = OreFraction.make(SQ, q, p * p + q)
    assert B(f, f).is_zero()


def test_bracket_restricts_to_polynomials():
    P = canonical()
    B = extend_poisson(P, SQ)
    f, g = QPQ.normal_form(p * p * q), QPQ.normal_form(p + q * q)
    assert frac_eq(B(OreFraction.of(SQ, f), OreFraction.of(SQ, g)), OreFraction.of(SQ, P.bracket(f, g)))


@given(st.integers(0, 10_000))
def test_localized_bracket_against_sympy(seed):
    rng = random.Random(seed)
    env = {"p": P, "q": Q}
    words = QPQ.basis_words(2)

    def rnd():
        r = sum((NCPoly.word(*rng.choice(words), coeff=rng.randint(-3, 3) or 1) for _ in range(2)), NCPoly.zero())
        return OreFraction.make(SQ, NCPoly.word(*("q",) * rng.randint(0, 2)), QPQ.normal_form(r))

    f, g = rnd(), rnd()
    got = extend_poisson(canonical(), SQ)(f, g)
    F_, G_ = frac_sym(f, env), frac_sym(g, env)
    want = sympy.diff(F_, Q) * sympy.diff(G_, P) - sympy.diff(F_, P) * sympy.diff(G_, Q)
    assert sympy.simplify(frac_sym(got, env) - want) == 0


def test_localized_bracket_checks():
    B = extend_poisson(canonical(), SQ)
    rep = check_localized_bracket(B, sample_fractions(SQ, 5, seed=1), triples=10, seed=1)
    assert rep.ok


def test_jacobi_checked_at_construction():
    R = commutative_polynomials(["x", "y", "z"])
    y = NCPoly.gen("y")
    # {x,y} = z, {y,z} = x, {z,x} = y is so(3) and satisfies Jacobi
    good = PoissonStructure(R, {("x", "y"): NCPoly.gen("z"), ("y", "z"): x, ("z", "x"): y})
    assert good.jacobi_failures() == []
    # the bivector with V = (-y, x, 1) has V . curl V = 2, so Jacobi fails
    with pytest.raises(ValueError):
        PoissonStructure(R, {("y", "z"): -y, ("z", "x"): x, ("x", "y"): NCPoly.one()})


def test_poisson_needs_commutative_carrier():
    with pytest.raises(ValueError):
        PoissonStructure(QP, {("a", "b"): 1})


# --- first-order calculi and the differential Ore condition ----------------------

def test_central_calculus_witness():
    C = central_calculus(QX)
    s, w = differential_ore_witness(C, SX, x, x, 3)
    assert s == x and w == {"x": NCPoly.one()}


def test_qplane_calculus_witnesses():
    C = q_plane_calculus(QP, 2)
    s, w = differential_ore_witness(C, SB, b, a, 3)
    # s da = w b with s = b forces w = q^-1 da
    assert s == b and w == {"a": NCPoly.const(Fraction(1, 2))}
    assert not C.add(C.right(w, b), {g: -c for g, c in C.left(s, C.d(a)).items()})
    rep = differential_ore_check(C, SB, 3)
    assert rep.satisfied and not rep.absent


def test_trivial_set_calculus():
    C = q_plane_calculus(QP, 2)
    S1 = OreSet(QP, [1])
    s, w = differential_ore_witness(C, S1, 1, a * b, 2)
    assert s == NCPoly.one() and w == C.d(a * b)


def test_qplane_calculus_is_consistent_and_leibniz():
    C = q_plane_calculus(QP, 2)
    assert C.inconsistencies() == []
    # d(ab) = da b + a db
    lhs = C.d(a * b)
    rhs = C.add(C.right({"a": NCPoly.one()}, b), C.left(a, {"b": NCPoly.one()}))
    assert lhs == rhs


def test_inconsistent_calculus_rejected():
    rules = {("a", "a"): {"a": a}, ("a", "b"): {"a": b}, ("b", "a"): {"b": a}, ("b", "b"): {"b": b}}
    with pytest.raises(ValueError):
        FodcSpec(QP, rules)


def test_missing_rules_rejected():
    with pytest.raises(ValueError):
        FodcSpec(QP, {("a", "a"): {"a": a}})


def test_bounded_absence_is_reported():
    C = q_plane_calculus(QP, 2)
    with pytest.raises(NoWitnessWithinBound):
        differential_ore_witness(C, OreSet(QP, [a + b]), a + b, a, 0)
