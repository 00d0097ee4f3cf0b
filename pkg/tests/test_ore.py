import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncloc.errors import Inconclusive, LevelFailure, NotConservative, NoWitnessWithinBound
from ncloc.gabriel import FgModule
from ncloc.ore import (
    CommutativeModuleLocalization,
    CentralSet,
    FiltrationSpec,
    ModuleLocalization,
    OreFraction,
    OreLocalization,
    OreSet,
    PresentedModule,
    check_predicates,
    commutative_relation_check,
    counterexample_nonexistence,
    cover_exactness,
    default_bound,
    filtered_ore_check,
    filtered_ore_witness,
    frac_add,
    frac_eq,
    frac_mul,
    fraction_law_check,
    ideal_IS_check,
    mod_action,
    mod_eq,
    ore_witness,
    product_set_witnesses,
)
from ncloc.rewrite import NCPoly, commutative_polynomials, counterexample_ring, q_plane, truncated_polynomials
from ncloc.rewrite.examples import q_plane_truncated
from ncloc.ring_core import ZZ, PolynomialRingQ

QP = q_plane()
a, b = NCPoly.gen("a"), NCPoly.gen("b")
Sb = OreSet(QP, [b])
CE = counterexample_ring()
D = NCPoly.gen("D")
Z = [NCPoly.gen(g) for g in ("z1", "z2", "z3")]
q = Fraction(2)


def F(S, s, r):
    return OreFraction.make(S, s, r)


# --- Ore witnesses and predicates ------------------------------------------------

def test_qplane_witness():
    sp, rp = ore_witness(Sb, b, a, 3)
    assert QP.normal_form(sp * a - rp * b).is_zero()
    assert sp == b and rp == a.scale(1 / q)


def test_commutative_witness_is_trivial():
    R = commutative_polynomials(["x", "y"])
    S = OreSet(R, [NCPoly.gen("x")])
    s, r = NCPoly.gen("x"), NCPoly.gen("y") + NCPoly.one()
    assert ore_witness(S, s, r) == (s, R.normal_form(r))


def test_counterexample_has_no_witness_for_D_squared():
    S = OreSet(CE, [D])
    with pytest.raises(NoWitnessWithinBound) as exc:
        ore_witness(S, D * D, Z[0], 8)
    assert exc.value.bound == 8


def test_predicates_on_counterexample():
    rep = check_predicates(OreSet(CE, [D]), Z, 8)
    assert rep.lOre_S1_A is True
    assert rep.slOre_S1_A is False
    # the defining relations are the witnesses
    assert rep.witnesses["lOre(S1,A): s=D, r=z1"] == {"s'": "D", "r'": "z2*z3"}


def test_predicates_on_qplane():
    rep = check_predicates(Sb, [a], 4)
    assert rep.lOre_S1_A and rep.slOre_S1_A and rep.lOre_S_A


def test_default_bound():
    assert default_bound(NCPoly.one()) == 8
    assert default_bound(NCPoly.word(*"ab" * 3)) == 10


# --- the counterexample ----------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_counterexample_nonexistence(n):
    rec = counterexample_nonexistence(n, 8)
    assert not rec.solvable
    assert rec.solution_space_dim == 0
    assert rec.rank == rec.columns


def test_counterexample_constant_P():
    rec = counterexample_nonexistence(3, 0)
    assert not rec.solvable and rec.solution_space_dim == 0


def test_counterexample_modified_exponents_solvable():
    rec = counterexample_nonexistence(2, 4, (1, 1, 1))
    assert rec.solvable
    R = counterexample_ring((1, 1, 1))
    # check the reported P directly: D^2 z1 = P D^2
    from ncloc.cli.syntax import parse_value
    from ncloc.cli.tasks import to_nc

    P = to_nc(parse_value(rec.solution), R)
    assert R.normal_form(D * D * Z[0] - P * D * D).is_zero()


# --- fractions -------------------------------------------------------------------

def test_fraction_examples():
    x = F(Sb, b, a)
    assert frac_eq(frac_mul(x, x), F(Sb, b * b, (a * a).scale(1 / q)))
    assert frac_eq(frac_add(x, x), F(Sb, b, a.scale(2)))
    one = OreFraction.of(Sb, 1)
    zero = OreFraction.of(Sb, 0)
    assert frac_eq(frac_mul(x, one), x)
    assert frac_eq(frac_add(x, zero), x)
    assert frac_eq(F(Sb, b, a), F(Sb, b * b, QP.normal_form(b * a)))
    assert frac_eq(OreFraction.of(Sb, a), OreFraction.of(Sb, a))
    assert not frac_eq(x, OreFraction.of(Sb, a))


def test_fractions_in_a_commutative_ring():
    R = commutative_polynomials(["x"])
    S = OreSet(R, [NCPoly.const(2), NCPoly.const(3)])
    half, third = F(S, 2, 1), F(S, 3, 1)
    assert frac_eq(frac_mul(half, third), F(S, 6, 1))
    assert frac_eq(frac_add(half, third), F(S, 6, 5))


def test_scaled_representative_is_equal():
    x = F(Sb, b, a)
    for p in (b, b * b):
        assert frac_eq(x, F(Sb, QP.normal_form(p * b), QP.normal_form(p * a)))


def test_inverse_of_denominator():
    x = F(Sb, b, 1)
    assert frac_eq(frac_mul(x, OreFraction.of(Sb, b)), OreFraction.of(Sb, 1))
    assert frac_eq(frac_mul(OreFraction.of(Sb, b), x), OreFraction.of(Sb, 1))


def test_inconclusive_equality_outside_a_domain():
    T = truncated_polynomials("t", 3)
    S = OreSet(T, [NCPoly.gen("t")])
    # t is nilpotent, so every fraction is zero; equality holds and is found
    assert frac_eq(F(S, 1, 1), F(S, 1, 0))
    S2 = OreSet(T, [NCPoly.gen("t") + NCPoly.one()])
    with pytest.raises(Inconclusive):
        F(S2, 1, 1) == F(S2, 1, 0)  # noqa: B015


def test_ore_localization_ring_wrapper():
    L = OreLocalization(Sb)
    x = L(F(Sb, b, a))
    assert x * L(F(Sb, 1, b)) == L(F(Sb, 1, a.scale(q)))


def test_fraction_laws_qplane():
    rep = fraction_law_check(OreSet(QP, [a, b]), samples=25, seed=1)
    assert rep.all_hold
    assert all(v >= 25 for v in rep.checked.values())


@given(st.integers(0, 10_000))
def test_representative_independence_random(seed):
    rng = random.Random(seed)
    S = OreSet(QP, [a, b])
    words = QP.basis_words(2)
    dens = [NCPoly.one(), a, b, QP.normal_form(a * b)]

    def rnd():
        r = sum((NCPoly.word(*rng.choice(words), coeff=rng.randint(-3, 3)) for _ in range(2)), NCPoly.zero())
        return F(S, rng.choice(dens), QP.normal_form(r))

    x, y = rnd(), rnd()
    p = rng.choice([a, b])
    x2 = F(S, QP.normal_form(p * x.denom), QP.normal_form(p * x.numer))
    assert frac_eq(frac_mul(x, y), frac_mul(x2, y))
    assert frac_eq(frac_add(x, y), frac_add(x2, y))
    assert frac_eq(frac_mul(y, x), frac_mul(y, x2))


# --- modules ---------------------------------------------------------------------

def test_module_action_examples():
    M = PresentedModule(QP, 1)
    L = ModuleLocalization(Sb, M)
    m = L.fraction(1, [b])
    assert mod_eq(mod_action(OreFraction.of(Sb, 1), m), m)
    assert mod_eq(mod_action(F(Sb, b, 1), L.fraction(1, [a])), L.fraction(b, [a]))
    got = mod_action(F(Sb, b, a), m)
    assert mod_eq(got, L.fraction(1, [a.scale(q)]))


def test_module_action_associative():
    M = PresentedModule(QP, 2)
    L = ModuleLocalization(Sb, M)
    f, g = F(Sb, b, a), F(Sb, b, a + b)
    m = L.fraction(b, [a, NCPoly.one()])
    assert mod_eq(mod_action(f, mod_action(g, m)), mod_action(frac_mul(f, g), m))


def test_torsion_criterion_in_a_quotient_module():
    # R/R(b) : the class of 1 is killed by b, hence zero after inverting b
    M = PresentedModule(QP, 1, [[b]])
    L = ModuleLocalization(Sb, M)
    assert L.torsion_witness([NCPoly.one()]) == b
    assert L.is_zero(L.of([NCPoly.one()]))
    # b a = q^-1 a b lies in R b, so a is torsion too
    assert L.torsion_witness([a]) is not None


def test_module_not_torsion_in_free_module():
    L = ModuleLocalization(Sb, PresentedModule(QP, 1))
    assert L.torsion_witness([a]) is None
    assert not L.is_zero(L.of([a]))


def test_separator_decides_inequality():
    M = PresentedModule(QP, 2, [[b, NCPoly.zero()]])
    plain = ModuleLocalization(Sb, M)
    with pytest.raises(Inconclusive):
        plain.is_zero(plain.of([NCPoly.zero(), a]))
    L = ModuleLocalization(Sb, M, separators=[[NCPoly.zero(), NCPoly.one()]])
    assert not L.is_zero(L.of([NCPoly.zero(), a]))
    # the separator never blocks a true equality
    assert L.is_zero(L.of([a, NCPoly.zero()]))
    with pytest.raises(ValueError):
        ModuleLocalization(Sb, M, separators=[[NCPoly.one(), NCPoly.zero()]])


def test_commutative_module_localization():
    M = FgModule(ZZ, [8, 3])
    S = CentralSet(ZZ, [2])
    L = CommutativeModuleLocalization(S, M)
    assert L.is_zero(L.of((1, 0)))
    assert not L.is_zero(L.of((0, 1)))
    assert L.torsion_witness((1, 0)) == 8


def test_ideal_IS():
    T = truncated_polynomials("t", 3)
    S = OreSet(T, [NCPoly.gen("t")])
    out = ideal_IS_check(S, [NCPoly.gen("t"), NCPoly.one()], [NCPoly.gen("t"), NCPoly.const(5)])
    assert not out["failed"]
    assert out["confirmed"]


def test_product_of_ore_sets():
    out = product_set_witnesses(OreSet(QP, [a]), Sb, [a, b, a + b], 4)
    assert not out["missing"]
    assert out["witnesses"]


# --- filtered Ore condition --------------------------------------------------------

def test_filtered_geometric_series():
    T = truncated_polynomials("t", 3)
    t = NCPoly.gen("t")
    S = OreSet(T, [NCPoly.one() + t])
    rep = filtered_ore_witness(FiltrationSpec(T, floor=-3), S, NCPoly.one() + t, NCPoly.one())
    assert rep.verified
    Sp, Ep = rep.witness
    assert Sp == NCPoly.one()
    assert Ep == T.normal_form(NCPoly.one() - t + t * t)
    assert [st.level for st in rep.steps] == [0, -1, -2]


def test_filtered_floor_only_ring():
    R = commutative_polynomials(["x"])
    rep = filtered_ore_check(FiltrationSpec(R, {"x": 0}, floor=-1), OreSet(R, [NCPoly.gen("x")]))
    assert all(r.verified for r in rep)


def test_filtered_truncated_qplane():
    E = q_plane_truncated()
    t = NCPoly.gen("t")
    S = OreSet(E, [a + t * b])
    reps = filtered_ore_check(FiltrationSpec(E, floor=-2), S, [a, b, t], 6)
    assert all(r.verified for r in reps)


def test_filtered_level_failure():
    T = truncated_polynomials("t", 3)
    S = OreSet(T, [NCPoly.gen("t")])
    with pytest.raises(LevelFailure):
        filtered_ore_witness(FiltrationSpec(T, floor=-1), S, NCPoly.gen("t"), NCPoly.gen("t"))


def test_filtration_subadditive():
    E = q_plane_truncated()
    Fs = FiltrationSpec(E, floor=-2)
    assert Fs.check_subadditive([a, b, NCPoly.gen("t"), a + NCPoly.gen("t")])


# --- globalization ------------------------------------------------------------------

@pytest.mark.parametrize("invariants", [[0], [6], [0, 4], []])
def test_cover_exactness_integers(invariants):
    rep = cover_exactness(FgModule(ZZ, invariants), [[2], [3]])
    assert rep.exact and rep.injective and rep.middle_exact
    assert rep.kernel_of_iota == []
    assert rep.pairs == [] or set(rep.pairs) == {(0, 1), (1, 0)}


def test_cover_not_conservative():
    with pytest.raises(NotConservative):
        cover_exactness(FgModule(ZZ, [2]), [[2], [6]])


def test_cover_over_polynomials():
    P = PolynomialRingQ("x")
    x = P.gen().value
    rep = cover_exactness(FgModule(P, [0]), [[x], [P.coerce(1) + x]])
    assert rep.exact


# --- the commutative shortcut --------------------------------------------------------

def test_commutative_relation_disagrees_on_qplane():
    S = OreSet(QP, [a, b])
    pairs = [((b, 1), (QP.normal_form(a * b), a)), ((b, a), (b * b, QP.normal_form(b * a))), ((b, 0), (a, 0))]
    rep = commutative_relation_check(S, pairs, 6)
    assert len(rep.disagreements) == 1
    bad = rep.disagreements[0]
    assert bad["fraction"] is True and bad["commutative"] is False
    assert len(rep.agreements) == 2


def test_commutative_relation_agrees_for_commutative_ring():
    R = commutative_polynomials(["x", "y"])
    x, y = NCPoly.gen("x"), NCPoly.gen("y")
    S = OreSet(R, [x])
    pairs = [((x, y), (x * x, x * y)), ((x, y), (x, x)), ((x, 0), (1, 0))]
    rep = commutative_relation_check(S, pairs, 6)
    assert rep.all_agree
