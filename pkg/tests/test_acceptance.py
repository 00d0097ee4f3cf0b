"""Acceptance checks, one per criterion.

Each criterion is a plain function that raises AssertionError on failure.
Under pytest every criterion is its own test and a final summary test
prints one PASS/FAIL line per criterion.  The file can also be run
directly: ``python3 tests/test_acceptance.py``.
"""

import json
import random
import re
import subprocess
import sys
import time
from pathlib import Path

import pytest

from ncloc.cli.syntax import format_job, parse_job
from ncloc.cohn import MatrixSigma, cohn_presentation, laurent_setup, random_closure_check, sigma_torsion
from ncloc.diffcalc import (
    Derivation,
    PoissonStructure,
    check_localized_bracket,
    check_localized_derivation,
    extend_derivation,
    extend_poisson,
    partial,
    sample_fractions,
)
from ncloc.errors import QDetMissing, Undefined
from ncloc.gabriel import FgModule, FilterSpec, check_axioms, deligne_limit, gabriel_Q, torsion_sigma
from ncloc.ore import (
    CentralSet,
    CommutativeModuleLocalization,
    ModuleLocalization,
    OreFraction,
    OreSet,
    PresentedModule,
    counterexample_nonexistence,
    cover_exactness,
    frac_eq,
    fraction_law_check,
    mod_action,
    mod_eq,
)
from ncloc.quasidet import HOLDS, identity_suite, inv_via_qdet, qdet, random_mat2_matrix
from ncloc.rewrite import NCPoly, commutative_polynomials, counterexample_ring, overlap_ambiguities, q_plane
from ncloc.ring_core import QQ, ZZ, PolynomialRingQ, RMatrix
from ncloc.ring_core.polys import UPoly

ROOT = Path(__file__).resolve().parent.parent
RESULTS: dict = {}

# --- 1 ---------------------------------------------------------------------------

SUITE_FAMILIES = ("inverse", "row_homological", "column_homological", "row_laplace", "column_laplace",
                  "jacobi", "quasitelescoping")


def criterion_1():
    start = time.perf_counter()
    for n in (3, 4):
        for k in range(25):
            rep = identity_suite(random_mat2_matrix(n, 1000 * n + k), SUITE_FAMILIES, seed=k,
                                 jacobi_sizes=(0, 1, 2))
            for fam, status in rep.statuses().items():
                assert status == HOLDS, f"n={n} seed={k}: {fam} is {status}"
            assert rep.families["jacobi"].checked > 0
    elapsed = time.perf_counter() - start
    assert elapsed < 60, f"took {elapsed:.1f} s"
    return f"50 matrices, {elapsed:.1f} s"


# --- 2 ---------------------------------------------------------------------------

def criterion_2():
    I2 = RMatrix.identity(QQ, 2)
    for i, j in ((1, 2), (2, 1)):
        with pytest.raises(Undefined):
            qdet(I2, i, j)
    with pytest.raises(QDetMissing):
        inv_via_qdet(I2)
    return "two undefined entries, inversion refused"


# --- 3 ---------------------------------------------------------------------------

def criterion_3():
    start = time.perf_counter()
    assert overlap_ambiguities(counterexample_ring()) == []
    for n in range(1, 7):
        rec = counterexample_nonexistence(n, 8)
        assert not rec.solvable and rec.solution_space_dim == 0, f"n={n}"
    rec = counterexample_nonexistence(2, 4, (1, 1, 1))
    assert rec.solvable
    elapsed = time.perf_counter() - start
    assert elapsed < 120
    return f"n=1..6 dimension 0, (1,1,1) solvable at n=2, {elapsed:.1f} s"


# --- 4 ---------------------------------------------------------------------------

def criterion_4():
    QP = q_plane(2)
    a, b = NCPoly.gen("a"), NCPoly.gen("b")
    start = time.perf_counter()
    rep = fraction_law_check(OreSet(QP, [a, b]), samples=200, seed=0)
    elapsed = time.perf_counter() - start
    assert rep.all_hold, rep.as_dict()["failures"]
    assert all(v >= 200 for v in rep.checked.values())
    assert elapsed < 60
    return f"200 samples, {elapsed:.1f} s"


# --- 5 ---------------------------------------------------------------------------

def _qplane_module_pairs(count, seed):
    """R/Rb + R over the q-plane with S = powers of b.

    b a^i = 2^-i a^i b, so b kills R/Rb; R is a domain, so (u, v) is
    torsion exactly when v = 0.
    """
    QP = q_plane(2)
    b = NCPoly.gen("b")
    S = OreSet(QP, [b])
    M = PresentedModule(QP, 2, [[b, NCPoly.zero()]])
    # projection onto the free summand separates non-torsion classes
    L = ModuleLocalization(S, M, separators=[[NCPoly.zero(), NCPoly.one()]])
    rng = random.Random(seed)
    words = QP.basis_words(2)

    def elem(allow_zero=True):
        r = NCPoly.zero()
        for _ in range(rng.randint(0 if allow_zero else 1, 2)):
            r = r + NCPoly.word(*rng.choice(words), coeff=rng.randint(-3, 3) or 1)
        return QP.normal_form(r)

    def bpow(k):
        return NCPoly.word(*("b",) * k)

    checked = 0
    for _ in range(count):
        s, t = bpow(rng.randint(0, 2)), bpow(rng.randint(0, 2))
        r, u, v = elem(False), elem(), elem()
        f = OreFraction.make(S, s, r)
        m = L.fraction(t, [u, v])
        # torsion criterion
        assert L.is_zero(L.of([u, v])) == v.is_zero()
        # action formula on 1^-1 m: s^-1 r . m = s^-1 (r m)
        assert mod_eq(mod_action(f, L.of([u, v])), L.fraction(s, [QP.normal_form(r * u), QP.normal_form(r * v)]))
        # s (s^-1 r . m) = r m
        lhs = mod_action(OreFraction.of(S, s), mod_action(f, m))
        assert mod_eq(lhs, mod_action(OreFraction.of(S, r), m))
        # independence of the representative of m
        m2 = L.fraction(QP.normal_form(b * t), [QP.normal_form(b * u), QP.normal_form(b * v)])
        assert mod_eq(mod_action(f, m), mod_action(f, m2))
        checked += 1
    return checked


def _z_module_pairs(count, seed):
    """ZZ/8 + ZZ/3 + ZZ with S = powers of 2: torsion is exactly the ZZ/8 part."""
    M = FgModule(ZZ, [8, 3, 0])
    S = CentralSet(ZZ, [2])
    L = CommutativeModuleLocalization(S, M)
    rng = random.Random(seed)
    checked = 0
    for _ in range(count):
        s, t = 2 ** rng.randint(0, 3), 2 ** rng.randint(0, 3)
        r = rng.randint(-9, 9)
        m = M.element([rng.randint(0, 7), rng.randint(0, 2), rng.randint(-5, 5)])
        f = OreFraction.make(S, s, r)
        x = L.fraction(t, m)
        assert L.is_zero(L.of(m)) == (m[1] == 0 and m[2] == 0)
        assert L.eq(L.act(f, L.of(m)), L.fraction(s, M.scale(r, m)))
        assert L.eq(L.act(OreFraction.of(S, s), L.act(f, x)), L.act(OreFraction.of(S, r), x))
        assert L.eq(L.act(f, x), L.act(f, L.fraction(2 * t, M.scale(2, m))))
        checked += 1
    return checked


def criterion_5():
    n1 = _qplane_module_pairs(100, 5)
    n2 = _z_module_pairs(100, 5)
    G = gabriel_Q(FgModule(ZZ, [8, 3, 0]), FilterSpec(ZZ, [2]))
    assert G.witness["agrees"]
    return f"{n1} q-plane pairs, {n2} ZZ-module pairs"


# --- 6 ---------------------------------------------------------------------------

def criterion_6():
    QX = commutative_polynomials(["x"])
    x = NCPoly.gen("x")
    SX = OreSet(QX, [x])
    rep = check_localized_derivation(extend_derivation(partial(QX, "x"), SX), sample_fractions(SX, 10, seed=11))
    assert rep.ok and rep.leibniz_checked == 100

    QP = q_plane(2)
    a, b = NCPoly.gen("a"), NCPoly.gen("b")
    SB = OreSet(QP, [b])
    rep = check_localized_derivation(extend_derivation(Derivation(QP, {"a": a, "b": 0}), SB),
                                     sample_fractions(SB, 10, seed=12))
    assert rep.ok and rep.leibniz_checked == 100

    QPQ = commutative_polynomials(["p", "q"])
    p, q = NCPoly.gen("p"), NCPoly.gen("q")
    SQ = OreSet(QPQ, [q])
    B = extend_poisson(PoissonStructure(QPQ, {("q", "p"): 1}), SQ)
    prep = check_localized_bracket(B, sample_fractions(SQ, 8, seed=13), triples=100, seed=13)
    assert prep.ok, prep.failures[:3]
    assert prep.jacobi_checked == 100 and prep.antisymmetry_checked > 0
    assert frac_eq(B(OreFraction.make(SQ, q, 1), OreFraction.of(SQ, p)), OreFraction.make(SQ, q * q, -1))
    return "Leibniz 100+100, Jacobi 100, {q^-1,p} = -q^-2"


# --- 7 ---------------------------------------------------------------------------

def criterion_7():
    F2 = FilterSpec(ZZ, [2])
    G = gabriel_Q(FgModule.free(ZZ), F2)
    assert G.description == "ZZ[1/2]" and G.witness["agrees"]
    frac = G.to_fraction(G.cls(2, (1,)))
    assert frac.denom == 4 and tuple(frac.elem) == (1,)
    T = torsion_sigma(FgModule(ZZ, [8, 3]), F2)
    assert T.describe() == "ZZ/(8)" and T.generators == [(1, 0)] and T.quotient.describe() == "ZZ/(3)"

    P = PolynomialRingQ("x")
    instances = [
        (2, FgModule.free(ZZ)),
        (2, FgModule(ZZ, [8, 3])),
        (3, FgModule(ZZ, [0, 3])),
        (6, FgModule(ZZ, [0, 4, 9, 5])),
        (UPoly.x(), FgModule.free(P)),
        (UPoly.x(), FgModule(P, [0, UPoly.x() * UPoly.x()])),
    ]
    for f, M in instances:
        D = deligne_limit(f, M)
        G = gabriel_Q(M, FilterSpec(M.base, [f]))
        assert D.agrees_with_gabriel and D.description == G.description, (f, M)
    for s in (2, 3, 6):
        rep = check_axioms(FilterSpec(ZZ, [s]).contains, ZZ, range(61))
        assert rep.all_hold, rep.counterexamples
    return f"{len(instances)} Deligne instances, axioms for d <= 60"


# --- 8 ---------------------------------------------------------------------------

def criterion_8():
    for invs in ([0], [6], [0, 4]):
        rep = cover_exactness(FgModule(ZZ, invs), [[2], [3]])
        assert rep.exact and rep.injective and rep.middle_exact, invs
        assert set(rep.pairs) == {(0, 1), (1, 0)}
    return "ZZ, ZZ/6, ZZ + ZZ/4"


# --- 9 ---------------------------------------------------------------------------

def criterion_9():
    Rx, _, _ = laurent_setup()
    x = NCPoly.gen("x")
    pres = cohn_presentation(Rx, MatrixSigma(Rx, [RMatrix.from_rows(Rx, [[x]])]))
    assert pres.confluent
    for d in range(5):
        words = pres.ring.basis_words(d)
        assert all(len(set(w)) <= 1 for w in words)
        # x^k for k <= d and x_inv^k for 1 <= k <= d
        assert len(words) == 2 * d + 1

    rep = random_closure_check(20, seed=0)
    assert rep.ok and rep.verified == 40

    M = FgModule(ZZ, [2, 3])
    res = sigma_torsion(M, MatrixSigma(ZZ, [RMatrix.from_rows(ZZ, [[2]])]), 3)
    assert {tuple(m) for m in res.elements} == {(0, 0), (1, 0)}
    assert all(c.verify(M) for c in res.certificates.values())
    return "Laurent normal forms, 20 closure instances, Z/2 summand"


# --- 10 --------------------------------------------------------------------------

TIMING = re.compile(r'\s*"elapsed_ms": [0-9.eE+-]+,?\n')


def _run_demo(out: Path) -> str:
    subprocess.run([sys.executable, "-m", "ncloc.cli.main", "run", str(ROOT / "jobs" / "demo.job"),
                    "--json", str(out)], check=False, capture_output=True)
    return TIMING.sub("\n", out.read_text())


def criterion_10(tmp: Path):
    first, second = _run_demo(tmp / "a.json"), _run_demo(tmp / "b.json")
    assert first == second
    assert json.loads((tmp / "a.json").read_text())["summary"]["ok"] > 0
    jobs = sorted(p for p in (ROOT / "jobs").glob("*.job") if p.name[:2].isdigit())
    assert len(jobs) == 20
    for path in jobs:
        job = parse_job(path.read_text())
        assert parse_job(format_job(job)) == job, path.name
    return "identical demo reports, 20 job files round-trip"


# --- driver ----------------------------------------------------------------------

CRITERIA = {
    1: ("quasideterminant identity suite", criterion_1),
    2: ("identity matrix negative case", criterion_2),
    3: ("counterexample reproduction", criterion_3),
    4: ("Ore fraction laws on the q-plane", criterion_4),
    5: ("module localization", criterion_5),
    6: ("derivations and Poisson brackets", criterion_6),
    7: ("Gabriel filters and localization", criterion_7),
    8: ("globalization cover exactness", criterion_8),
    9: ("Cohn localization", criterion_9),
    10: ("CLI determinism and round trip", criterion_10),
}


def _call(k, tmp):
    fn = CRITERIA[k][1]
    return fn(tmp) if k == 10 else fn()


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, tmp_path):
    try:
        RESULTS[k] = ("PASS", _call(k, tmp_path))
    except Exception as exc:
        RESULTS[k] = ("FAIL", f"{type(exc).__name__}: {exc}")
        raise


def test_summary(capsys):
    lines = [f"criterion {k:2d} {RESULTS.get(k, ('FAIL', 'not run'))[0]}  {CRITERIA[k][0]}: "
             f"{RESULTS.get(k, ('FAIL', 'not run'))[1]}" for k in sorted(CRITERIA)]
    with capsys.disabled():
        print("\n" + "\n".join(lines))
    assert all(RESULTS.get(k, ("FAIL",))[0] == "PASS" for k in CRITERIA)


if __name__ == "__main__":
    import tempfile

    failed = False
    for k in sorted(CRITERIA):
        with tempfile.TemporaryDirectory() as d:
            try:
                print(f"criterion {k:2d} PASS  {CRITERIA[k][0]}: {_call(k, Path(d))}")
            except Exception as exc:
                failed = True
                print(f"criterion {k:2d} FAIL  {CRITERIA[k][0]}: {type(exc).__name__}: {exc}")
    sys.exit(1 if failed else 0)
