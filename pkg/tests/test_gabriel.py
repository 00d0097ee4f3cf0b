from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncloc.gabriel import (
    FgModule,
    FilterSpec,
    ModuleMap,
    check_axioms,
    colon,
    deligne_limit,
    gabriel_Q,
    in_filter,
    in_sigma,
    intersection_member,
    torsion_sigma,
)
from ncloc.ring_core import ZZ, PolynomialRingQ
from ncloc.ring_core.polys import UPoly

F2 = FilterSpec(ZZ, [2])


def test_in_filter_examples():
    assert in_filter(8, F2)
    assert not in_filter(0, F2)
    assert not in_filter(6, F2)
    assert in_filter(1, F2) and in_filter(-4, F2)


def test_colon_examples():
    assert colon(ZZ, 12, 8) == 3
    assert colon(ZZ, 0, 0) == 1
    assert colon(ZZ, 0, 3) == 0


def test_torsion_of_z8_plus_z3():
    rep = torsion_sigma(FgModule(ZZ, [8, 3]), F2)
    assert rep.describe() == "ZZ/(8)"
    assert rep.generators == [(1, 0)]
    assert rep.quotient.describe() == "ZZ/(3)"
    assert rep.idempotent and rep.quotient_torsion_free


def test_torsion_of_free_is_zero():
    assert torsion_sigma(FgModule.free(ZZ, 2), F2).describe() == "0"


def test_everything_is_torsion_when_s_kills_m():
    rep = torsion_sigma(FgModule(ZZ, [6]), FilterSpec(ZZ, [6]))
    assert rep.describe() == "ZZ/(6)"
    assert rep.quotient.describe() == "0"


@given(st.lists(st.sampled_from([0, 2, 3, 4, 6, 8, 9, 12]), min_size=1, max_size=3),
       st.sampled_from([2, 3, 6]))
def test_torsion_matches_direct_definition(invs, s):
    M, F = FgModule(ZZ, invs), FilterSpec(ZZ, [s])
    rep = torsion_sigma(M, F)
    assert rep.quotient_torsion_free
    for m in M.elements(height=3):
        # m is torsion exactly when its image in M / sigma(M) vanishes
        assert in_sigma(M, F, m) == rep.quotient.is_zero(rep.project(m))


def test_gabriel_q_of_z_at_two():
    G = gabriel_Q(FgModule.free(ZZ), F2)
    assert G.description == "ZZ[1/2]"
    assert G.witness["agrees"]
    c = G.cls(3, (1,))
    frac = G.to_fraction(c)
    # the map 2^3 -> 1 corresponds to 1/8
    assert frac.denom == 8 and tuple(frac.elem) == (1,)
    assert G.colimit.eq(G.cls(1, (4,)), G.cls(0, (2,)))


def test_gabriel_q_kills_torsion():
    assert gabriel_Q(FgModule(ZZ, [8]), F2).description == "0"


def test_gabriel_q_trivial_filter():
    G = gabriel_Q(FgModule(ZZ, [0, 4]), FilterSpec(ZZ, [1]))
    assert G.description == "ZZ + ZZ/(4)"


def test_deligne_polynomial():
    P = PolynomialRingQ("x")
    D = deligne_limit(UPoly.x(), FgModule.free(P))
    assert D.description == "QQ[x][1/x]"
    assert D.agrees_with_gabriel


def test_deligne_zero_and_mixed():
    assert deligne_limit(3, FgModule(ZZ, [])).description == "0"
    D = deligne_limit(3, FgModule(ZZ, [0, 3]))
    assert D.description == "ZZ[1/3]"
    assert D.agrees_with_gabriel


def test_deligne_naturality():
    src, dst = FgModule(ZZ, [0, 3]), FgModule(ZZ, [0, 9])
    phi = ModuleMap(src, dst, ((1, 0), (0, 3)))
    assert deligne_limit(3, src, naturality_map=phi).natural is True


def test_module_map_rejects_bad_images():
    with pytest.raises(ValueError):
        ModuleMap(FgModule(ZZ, [3]), FgModule(ZZ, [0]), ((1,),))


@pytest.mark.parametrize("s", [2, 3, 6])
def test_filter_axioms_window(s):
    rep = check_axioms(FilterSpec(ZZ, [s]).contains, ZZ, range(61))
    assert rep.all_hold, rep.counterexamples


def test_axioms_detect_non_filter():
    # nonzero even numbers: not upward closed, since (2) is inside (1)
    rep = check_axioms(lambda d: d != 0 and d % 2 == 0, ZZ, range(61))
    assert not rep.results["F1"] and not rep.results["F3"]


def test_intersection_of_filters():
    member = intersection_member(FilterSpec(ZZ, [2]), FilterSpec(ZZ, [3]))
    assert member(1) and not member(6) and not member(4)
    assert check_axioms(member, ZZ, range(61)).all_hold


def test_polynomial_filter():
    P = PolynomialRingQ("x")
    x = UPoly.x()
    F = FilterSpec(P, [x])
    assert in_filter(x * x * Fraction(3), F)
    assert not in_filter(x + 1, F)
