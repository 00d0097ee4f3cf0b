import pytest
import sympy

from ncloc.cohn import (
    EvaluationMap,
    MatrixSigma,
    TorsionCertificate,
    block_upper,
    check_universal,
    closure_product,
    closure_sum,
    cohn_presentation,
    compare_with_ore,
    diag_blocks,
    laurent_setup,
    permutation_matrix,
    preradical_check,
    qdet_first_presentation,
    random_closure_check,
    rational_closure_solve,
    sigma_torsion,
    transform_certificate,
)
from ncloc.errors import TargetNotInverting
from ncloc.gabriel import FgModule
from ncloc.ore import OreSet
from ncloc.rewrite import NCPoly, commutative_polynomials, q_plane
from ncloc.ring_core import ZZ, RMatrix

x = NCPoly.gen("x")
xs = sympy.Symbol("x")


def as_sympy(rf):
    num = sum(sympy.Rational(c.numerator, c.denominator) * xs ** k for k, c in enumerate(rf.num.coeffs))
    den = sum(sympy.Rational(c.numerator, c.denominator) * xs ** k for k, c in enumerate(rf.den.coeffs))
    return num / den


# --- presentations -----------------------------------------------------------------

def test_laurent_presentation():
    Rx, _, f = laurent_setup()
    P = cohn_presentation(Rx, MatrixSigma(Rx, [RMatrix.from_rows(Rx, [[x]])]))
    assert P.new_generators == ["x_inv"]
    assert len(P.relations) == 2
    assert P.confluent
    # normal words are the Laurent monomials x^k and x_inv^k
    for w in P.ring.basis_words(4):
        assert len(set(w)) <= 1
    assert len(P.ring.basis_words(4)) == 9
    xi = NCPoly.gen("x_inv")
    assert P.normal_form(x * x * xi) == x
    assert P.normal_form(xi * x * x * xi) == NCPoly.one()
    assert check_universal(P, f) == {"base_relations": True, "inverse_relations": True,
                                     "completed_rules": True, "checked": 2}


def test_new_generator_count_for_two_by_two():
    Rx, _, _ = laurent_setup()
    A = RMatrix.from_rows(Rx, [[x, 1], [0, x + 1]])
    P = cohn_presentation(Rx, MatrixSigma(Rx, [A]), complete_system=False)
    assert len(P.new_generators) == 4
    assert len(P.relations) == 8


def test_identity_sigma_is_a_no_op():
    Rx, _, _ = laurent_setup()
    P = cohn_presentation(Rx, MatrixSigma(Rx, [RMatrix.identity(Rx, 1)]))
    (u,) = P.new_generators
    assert P.confluent
    assert P.normal_form(NCPoly.gen(u)) == NCPoly.one()


def test_qplane_presentation_matches_ore_fractions():
    QP = q_plane()
    b = NCPoly.gen("b")
    P = cohn_presentation(QP, MatrixSigma(QP, [RMatrix.from_rows(QP, [[b]])]))
    assert P.confluent
    out = compare_with_ore(P, OreSet(QP, [b]), 4)
    assert out["disagreements"] == 0
    assert out["products_agree"] > 0 and out["round_trips"] > 0


def test_qdet_first_stages():
    Rx, _, _ = laurent_setup()
    P = qdet_first_presentation(Rx, MatrixSigma(Rx, [RMatrix.from_rows(Rx, [[x]])]))
    assert P.stages["stage1"] == ["|A1|_11"] and P.stages["stage2"] == []
    P = qdet_first_presentation(Rx, MatrixSigma(Rx, [RMatrix.identity(Rx, 2)]))
    assert P.stages["stage1"] == ["|A1|_11", "|A1|_22"]
    assert P.stages["stage2"] == ["S1_1_2", "S1_2_1"]
    Rxy = commutative_polynomials(["x", "y"])
    y = NCPoly.gen("y")
    A = RMatrix.from_rows(Rxy, [[x, y], [y * y, x + 1]])
    P = qdet_first_presentation(Rxy, MatrixSigma(Rxy, [A]), complete_system=False)
    assert len(P.stages["stage1"]) == 4 and P.stages["stage2"] == []


# --- membership and rational closure ------------------------------------------------

def test_sigma_membership():
    Rx, sigma, _ = laurent_setup()
    X = RMatrix.from_rows(Rx, [[x]])
    X1 = RMatrix.from_rows(Rx, [[x + 1]])
    assert sigma.contains(RMatrix.identity(Rx, 1))
    assert sigma.contains(block_upper(X, RMatrix.from_rows(Rx, [[x * x]]), X1))
    assert sigma.contains(diag_blocks(X, X1, X))
    assert not sigma.contains(RMatrix.from_rows(Rx, [[x + 2]]))
    assert not sigma.contains(RMatrix.from_rows(Rx, [[x, 0], [1, x]]))


def test_closure_solve_inverse_of_x():
    Rx, sigma, f = laurent_setup()
    (el,) = rational_closure_solve(f, sigma, RMatrix.from_rows(Rx, [[x]]), [NCPoly.one()])
    assert sympy.simplify(as_sympy(el.value.value) - 1 / xs) == 0
    assert el.verify(f, sigma)


def test_closure_solve_identity():
    Rx, sigma, f = laurent_setup()
    els = rational_closure_solve(f, sigma, RMatrix.identity(Rx, 1), [x + 3])
    assert sympy.expand(as_sympy(els[0].value.value) - (xs + 3)) == 0


def test_closure_sum_and_product_certificates():
    Rx, sigma, f = laurent_setup()
    (u,) = rational_closure_solve(f, sigma, RMatrix.from_rows(Rx, [[x]]), [NCPoly.one()])
    (v,) = rational_closure_solve(f, sigma, RMatrix.from_rows(Rx, [[x + 1]]), [x])
    s = closure_sum(u, u, f)
    assert sympy.simplify(as_sympy(s.value.value) - 2 / xs) == 0
    assert s.verify(f, sigma, 6)
    p = closure_product(v, u, f)
    assert sympy.simplify(as_sympy(p.value.value) - 1 / (xs + 1)) == 0
    assert p.verify(f, sigma, 6)


def test_target_not_inverting():
    Rx, sigma, _ = laurent_setup()
    from ncloc.ring_core import QQ

    at_zero = EvaluationMap(Rx, QQ, {"x": 0})
    with pytest.raises(TargetNotInverting):
        rational_closure_solve(at_zero, sigma, RMatrix.from_rows(Rx, [[x]]), [NCPoly.one()])


def test_random_closure_instances():
    rep = random_closure_check(8, seed=3)
    assert rep.ok and rep.verified == 16


# --- Sigma-torsion -------------------------------------------------------------------

def two():
    return MatrixSigma(ZZ, [RMatrix.from_rows(ZZ, [[2]])])


def test_torsion_cyclic_two():
    M = FgModule(ZZ, [2])
    res = sigma_torsion(M, two(), 3)
    assert sorted(M.format(m) for m in res.elements) == sorted(M.format(m) for m in M.elements())


def test_torsion_free_module():
    M = FgModule(ZZ, [0])
    res = sigma_torsion(M, two(), 3)
    assert [M.format(m) for m in res.elements] == [M.format(M.zero())]


def test_torsion_of_z2_plus_z3_is_the_z2_summand():
    M = FgModule(ZZ, [2, 3])
    res = sigma_torsion(M, two(), 3)
    assert {tuple(m) for m in res.elements} == {(0, 0), (1, 0)}
    assert res.absent_coordinates == [1]
    for cert in res.certificates.values():
        assert cert.verify(M)


def test_preradical_consistency():
    out = preradical_check(FgModule(ZZ, [4, 3]), two(), 2)
    assert out["holds"]


def test_permuted_certificates():
    M = FgModule(ZZ, [2, 0])
    A = RMatrix.from_rows(ZZ, [[2, 0], [0, 1]])
    # A (u0, u1) = 0 with u0 the Z/2 generator, u1 = 0
    u = ((1, 0), (0, 0))
    cert = TorsionCertificate(A, u, 0)
    assert cert.verify(M)
    w, w2 = [1, 0], [1, 0]
    A2 = permutation_matrix(ZZ, w) @ A @ permutation_matrix(ZZ, w2)
    # a certificate for the permuted matrix, transformed back
    u2 = (u[1], u[0])
    c2 = TorsionCertificate(A2, u2, 1)
    assert c2.verify(M)
    back = transform_certificate(M, c2, A, w, w2)
    assert back.verify(M) and M.eq(back.element, (1, 0))


def test_torsion_needs_off_diagonal_fillers():
    # 1 in Z/4 is certified by [[2, 1], [0, 2]] (u = (1, 2)), not by diagonal blocks alone
    M = FgModule(ZZ, [4])
    assert {tuple(m) for m in sigma_torsion(M, two(), 3, fillers=(0,)).elements} == {(0,), (2,)}
    assert {tuple(m) for m in sigma_torsion(M, two(), 3).elements} == {(0,), (1,), (2,), (3,)}
