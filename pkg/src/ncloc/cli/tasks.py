"""Task dispatch: each job task becomes one report record."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..errors import Inconclusive, LevelFailure, NclocError, NoWitnessWithinBound, NotConservative, QDetMissing, Undefined
from ..rewrite.ncpoly import NCPoly
from ..rewrite.system import PresentedRing
from ..ring_core.matrices import RMatrix
from ..ring_core.polys import RationalFunction, UPoly
from ..ring_core.rings import QQ, ZZ, MatrixRing, PolynomialRingQ, RationalFunctionField
from .syntax import Ident, JobFile, ListV, Num, Poly, RingDef, Task, format_value

OK, FAIL, INCONCLUSIVE = "ok", "fail", "inconclusive"


class TaskError(Exception):
    """A problem with the task itself (unknown ring, bad argument)."""


# --- JSON-safe values ----------------------------------------------------------

def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return str(Fraction(x))
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    if hasattr(x, "as_dict"):
        return jsonable(x.as_dict())
    return str(x)


# --- argument helpers ------------------------------------------------------------

def arg(task: Task, pos: int, key: str, default=..., ):
    v = task.kw(key)
    if v is None and pos is not None and pos < len(task.args):
        v = task.args[pos]
    if v is None:
        if default is ...:
            raise TaskError(f"missing argument '{key}'")
        return default
    return v


def as_int(v, what="integer") -> int:
    if isinstance(v, int):
        return v
    if isinstance(v, Num) and v.value.denominator == 1:
        return int(v.value)
    raise TaskError(f"expected {what}, got {format_value(v)}")


def as_name(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, Ident):
        return v.name
    raise TaskError(f"expected a name, got {format_value(v)}")


def as_list(v) -> list:
    if isinstance(v, ListV):
        return list(v.items)
    raise TaskError(f"expected a list, got {format_value(v)}")


def as_bool(v) -> bool:
    if isinstance(v, bool):
        return v
    if isinstance(v, Ident) and v.name in ("true", "false"):
        return v.name == "true"
    raise TaskError(f"expected true or false, got {format_value(v)}")


def terms_of(v) -> list:
    if isinstance(v, Num):
        return [(v.value, ())]
    if isinstance(v, Ident):
        return [(Fraction(1), (v.name,))]
    if isinstance(v, Poly):
        return list(v.terms)
    raise TaskError(f"expected a ring element, got {format_value(v)}")


def to_nc(v, R: PresentedRing) -> NCPoly:
    out = NCPoly.zero()
    for c, w in terms_of(v):
        bad = set(w) - set(R.generators)
        if bad:
            raise TaskError(f"{', '.join(sorted(bad))} not a generator of {R.name}")
        out = out + NCPoly.word(*w).scale(c)
    return R.normal_form(out)


def to_upoly(v, var: str = "x") -> UPoly:
    out = UPoly((), var)
    for c, w in terms_of(v):
        if any(g != var for g in w):
            raise TaskError(f"only the variable {var} is allowed here")
        out = out + UPoly([0] * len(w) + [c], var)
    return out


def to_base(v, base):
    if base is ZZ:
        vals = terms_of(v)
        if any(w for _, w in vals) or any(c.denominator != 1 for c, _ in vals):
            raise TaskError(f"expected an integer, got {format_value(v)}")
        return int(sum(c for c, _ in vals))
    return base.coerce(to_upoly(v, base.var))


# --- ring registry ---------------------------------------------------------------

def _builtin_presented() -> dict[str, Callable[[], PresentedRing]]:
    from ..rewrite import examples as ex

    return {
        "qplane": lambda: ex.q_plane(),
        "counterexample": lambda: ex.counterexample_ring((1, 2, 3)),
        "counterexample111": lambda: ex.counterexample_ring((1, 1, 1)),
        "Qx": lambda: ex.commutative_polynomials(["x"]),
        "Qxy": lambda: ex.commutative_polynomials(["x", "y"]),
        "Qpq": lambda: ex.commutative_polynomials(["p", "q"]),
        "truncated": lambda: ex.q_plane_truncated(),
    }


BASES = {"ZZ": lambda: ZZ, "Qx": lambda: PolynomialRingQ("x")}
ENTRY_RINGS = {"QQ": lambda: QQ, "Mat2": lambda: MatrixRing(2), "Qt": lambda: RationalFunctionField("x")}


class Context:
    def __init__(self, job: JobFile, seed: int = 0, bound: int | None = None):
        self.job = job
        self.seed = seed
        self.bound = bound
        self._rings: dict[str, PresentedRing] = {}
        self._builtins = _builtin_presented()

    def presented(self, v) -> PresentedRing:
        name = as_name(v)
        if name in self._rings:
            return self._rings[name]
        rd = self.job.ring(name)
        if rd is not None:
            R = build_ring(rd)
        elif name in self._builtins:
            R = self._builtins[name]()
        else:
            raise TaskError(f"unknown ring {name}")
        self._rings[name] = R
        return R

    def base(self, v):
        name = as_name(v)
        if name not in BASES:
            raise TaskError(f"unknown ring {name} (bases: {', '.join(BASES)})")
        return BASES[name]()

    def entries(self, v):
        name = as_name(v)
        if name not in ENTRY_RINGS:
            raise TaskError(f"unknown ring {name} (entry rings: {', '.join(ENTRY_RINGS)})")
        return ENTRY_RINGS[name]()

    def task_seed(self, task: Task) -> int:
        v = task.kw("seed")
        return self.seed if v is None else as_int(v)

    def task_bound(self, task: Task, default: int | None, pos: int | None = None) -> int | None:
        v = task.kw("bound")
        if v is None and pos is not None and pos < len(task.args):
            v = task.args[pos]
        if v is not None:
            return as_int(v)
        return self.bound if self.bound is not None else default


def build_ring(rd: RingDef) -> PresentedRing:
    rules = []
    for lead, rep in rd.rels:
        bad = (set(lead) | {g for _, w in rep.terms for g in w}) - set(rd.gens)
        if bad:
            raise TaskError(f"ring {rd.name}: unknown generators {sorted(bad)}")
        p = NCPoly.zero()
        for c, w in rep.terms:
            p = p + NCPoly.word(*w).scale(c)
        rules.append((lead, p))
    precedence = tuple(rd.order) if rd.order else None
    try:
        return PresentedRing(rd.name, rd.gens, rules, precedence=precedence, weights=dict(rd.weights),
                             degrees=dict(rd.degs), domain=rd.domain)
    except (ValueError, NclocError) as exc:
        raise TaskError(f"ring {rd.name}: {exc}") from None


# --- matrices ----------------------------------------------------------------------

def matrix_entry(v, ring):
    if isinstance(ring, MatrixRing):
        rows = [[_frac(x) for x in as_list(r)] for r in as_list(v)]
        return ring(rows)
    if isinstance(ring, RationalFunctionField):
        return ring(RationalFunction(to_upoly(v, ring.var), 1, ring.var))
    return ring(_frac(v))


def _frac(v) -> Fraction:
    if isinstance(v, Num):
        return v.value
    raise TaskError(f"expected a rational number, got {format_value(v)}")


def matrix_literal(v, ring) -> RMatrix:
    rows = [as_list(r) for r in as_list(v)]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise TaskError("matrix literal must be a nonempty rectangular list of rows")
    return RMatrix.from_rows(ring, [[matrix_entry(x, ring) for x in r] for r in rows])


def nc_matrix(v, R: PresentedRing) -> RMatrix:
    rows = [as_list(r) for r in as_list(v)]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise TaskError("matrix literal must be a nonempty rectangular list of rows")
    return RMatrix.from_rows(R, [[to_nc(x, R) for x in r] for r in rows])


def base_matrix(v, base) -> RMatrix:
    rows = [as_list(r) for r in as_list(v)]
    return RMatrix.from_rows(base, [[to_base(x, base) for x in r] for r in rows])


def fraction_arg(v, S, R):
    from ..ore.fractions import OreFraction

    items = as_list(v)
    if len(items) != 2:
        raise TaskError("a fraction is written [denominator, numerator]")
    return OreFraction.make(S, to_nc(items[0], R), to_nc(items[1], R))


def oreset(task: Task, R: PresentedRing, key="S"):
    from ..ore.oreset import OreSet

    gens = [to_nc(g, R) for g in as_list(arg(task, None, key))]
    return OreSet(R, gens)


# --- task implementations --------------------------------------------------------------
# each returns (status, witness, bound, details)

def t_normal_form(task, ctx):
    R = ctx.presented(arg(task, 0, "ring"))
    p = to_nc(arg(task, 1, "p"), R)
    return OK, R.format(p), None, {}


def t_ambiguities(task, ctx):
    from ..rewrite.system import overlap_ambiguities

    R = ctx.presented(arg(task, 0, "ring"))
    bound = ctx.task_bound(task, None, 1)
    amb = overlap_ambiguities(R, bound)
    bad = ["*".join(a.word) for a in amb if not a.resolvable]
    details = {"ambiguities": [{"word": "*".join(a.word), "kind": a.kind, "resolvable": a.resolvable} for a in amb]}
    status = OK if not bad else FAIL
    witness = "no ambiguities" if not amb else (f"{len(amb)} ambiguities, all resolvable" if not bad
                                                 else "unresolvable: " + ", ".join(bad))
    return status, witness, bound, details


def t_basis(task, ctx):
    R = ctx.presented(arg(task, 0, "ring"))
    deg = as_int(arg(task, 1, "degree"))
    words = ["*".join(w) if w else "1" for w in R.basis_words(deg)]
    return OK, f"{len(words)} words", deg, {"words": words}


def t_ore_witness(task, ctx):
    R = ctx.presented(arg(task, 0, "ring"))
    S = oreset(task, R)
    s, r = to_nc(arg(task, None, "s"), R), to_nc(arg(task, None, "r"), R)
    bound = ctx.task_bound(task, 4)
    sp, rp = S.witness(s, r, bound)
    return OK, f"s'={R.format(sp)}, r'={R.format(rp)}", bound, {}


def t_ore_check(task, ctx):
    from ..ore.oreset import check_predicates

    R = ctx.presented(arg(task, 0, "ring"))
    S = oreset(task, R)
    A = [to_nc(a, R) for a in as_list(arg(task, None, "A"))]
    bound = ctx.task_bound(task, 4)
    rep = check_predicates(S, A, bound)
    verdict = {"lOre(S1,A)": rep.lOre_S1_A, "slOre(S1,A)": rep.slOre_S1_A, "lOre(S,A)": rep.lOre_S_A}
    status = OK if all(verdict.values()) else INCONCLUSIVE
    return status, verdict, bound, rep.as_dict()


def t_counterexample(task, ctx):
    from ..ore.counterexample import counterexample_nonexistence

    n = as_int(arg(task, 0, "n"))
    degP = as_int(arg(task, 1, "bound"))
    ex = tuple(as_int(e) for e in as_list(arg(task, None, "exponents", ListV((Num(Fraction(1)), Num(Fraction(2)), Num(Fraction(3)))))))
    rec = counterexample_nonexistence(n, degP, ex)
    if rec.solvable:
        witness = f"solution P = {rec.solution}"
    else:
        witness = f"solution space dimension {rec.solution_space_dim}"
    return OK, witness, degP, rec.as_dict()


def t_frac(task, ctx):
    from ..ore.fractions import frac_add, frac_eq, frac_mul

    R = ctx.presented(arg(task, 0, "ring"))
    S = oreset(task, R)
    op = as_name(arg(task, None, "op", Ident("mul")))
    x = fraction_arg(arg(task, None, "x"), S, R)
    y = fraction_arg(arg(task, None, "y"), S, R)
    bound = ctx.task_bound(task, None)
    if op == "mul":
        res = frac_mul(x, y, bound)
    elif op == "add":
        res = frac_add(x, y, bound)
    elif op == "eq":
        return OK, frac_eq(x, y, bound), bound, {}
    else:
        raise TaskError(f"unknown fraction operation {op}")
    d, n = res.pair()
    return OK, f"({d})^-1 ({n})", bound, {"denominator": d, "numerator": n}


def t_frac_laws(task, ctx):
    from ..ore.laws import fraction_law_check

    R = ctx.presented(arg(task, 0, "ring"))
    S = oreset(task, R)
    n = as_int(arg(task, None, "samples", Num(Fraction(50))))
    rep = fraction_law_check(S, n, ctx.task_seed(task), bound=ctx.task_bound(task, None))
    return (OK if rep.all_hold else FAIL), ("all laws hold" if rep.all_hold else "law violated"), rep.bound, rep.as_dict()


def t_filtered_ore(task, ctx):
    from ..ore.filtered import FiltrationSpec, filtered_ore_check

    R = ctx.presented(arg(task, 0, "ring"))
    S = oreset(task, R)
    bound = ctx.task_bound(task, 8)
    elems = task.kw("A")
    elems = [to_nc(a, R) for a in as_list(elems)] if elems is not None else None
    floor = as_int(arg(task, None, "floor"))
    try:
        reps = filtered_ore_check(FiltrationSpec(R, floor=floor), S, elems, bound)
    except LevelFailure as exc:
        return INCONCLUSIVE, str(exc), bound, {"level": exc.level}
    ok = all(r.verified for r in reps)
    return (OK if ok else INCONCLUSIVE), f"{sum(r.verified for r in reps)}/{len(reps)} verified", bound, \
        {"reports": [r.as_dict() for r in reps]}


def t_comm_relation(task, ctx):
    from ..ore.commutative import commutative_relation_check

    R = ctx.presented(arg(task, 0, "ring"))
    S = oreset(task, R)
    pairs = []
    for p in as_list(arg(task, None, "pairs")):
        items = as_list(p)
        if len(items) != 4:
            raise TaskError("each pair is [s, r, s2, r2]")
        s1, r1, s2, r2 = (to_nc(x, R) for x in items)
        pairs.append(((s1, r1), (s2, r2)))
    bound = ctx.task_bound(task, None)
    rep = commutative_relation_check(S, pairs, bound)
    status = INCONCLUSIVE if rep.inconclusive else OK
    return status, {"agreements": len(rep.agreements), "disagreements": len(rep.disagreements)}, rep.bound, {
        "agreements": rep.agreements, "disagreements": rep.disagreements, "inconclusive": rep.inconclusive}


def t_cover(task, ctx):
    from ..gabriel.fgmodule import FgModule
    from ..ore.globalization import cover_exactness

    base = ctx.base(arg(task, None, "base", Ident("ZZ")))
    M = FgModule(base, [to_base(d, base) for d in as_list(arg(task, 0, "module"))])
    covers = []
    for c in as_list(arg(task, 1, "covers")):
        gens = as_list(c) if isinstance(c, ListV) else [c]
        covers.append([to_base(g, base) for g in gens])
    try:
        rep = cover_exactness(M, covers)
    except NotConservative as exc:
        return FAIL, f"not conservative: {exc}", None, {}
    return (OK if rep.exact else FAIL), ("exact" if rep.exact else "not exact"), rep.bound, rep.as_dict()


def t_qdet(task, ctx):
    from ..quasidet import qdet

    ring = ctx.entries(arg(task, 0, "ring"))
    A = matrix_literal(arg(task, 1, "matrix"), ring)
    i, j = as_int(arg(task, 2, "i")), as_int(arg(task, 3, "j"))
    try:
        return OK, str(qdet(A, i, j)), None, {"defined": True}
    except Undefined as exc:
        return OK, "undefined", None, {"defined": False, "reason": str(exc)}


def t_inverse(task, ctx):
    from ..quasidet import inv_via_qdet
    from ..ring_core.matrices import inverse

    ring = ctx.entries(arg(task, 0, "ring"))
    A = matrix_literal(arg(task, 1, "matrix"), ring)
    try:
        B = inv_via_qdet(A)
    except QDetMissing as exc:
        return OK, f"quasideterminant |A|_{exc.i}{exc.j} missing", None, {"missing": [exc.i, exc.j]}
    flat = inverse(A)
    agree = [[str(B.at(p, q)) for q in range(B.cols)] for p in range(B.rows)]
    same = all(B.at(p, q) == flat.at(p, q) for p in range(B.rows) for q in range(B.cols))
    return (OK if same else FAIL), agree, None, {"matches_flat_inverse": same}


def t_cramer(task, ctx):
    from ..quasidet import cramer_left, cramer_right

    ring = ctx.entries(arg(task, 0, "ring"))
    A = matrix_literal(arg(task, 1, "matrix"), ring)
    rhs = [matrix_entry(x, ring) for x in as_list(arg(task, 2, "rhs"))]
    side = as_name(arg(task, None, "side", Ident("left")))
    sol = cramer_left(A, rhs) if side == "left" else cramer_right(A, rhs)
    values = [None if v is None else str(v) for v in sol.values]
    return (OK if sol.consistent else FAIL), values, None, {"consistent": sol.consistent}


def t_suite(task, ctx):
    from ..quasidet import applicable_families, identity_suite
    from ..quasidet.generate import random_mat2_matrix, random_rational_matrix

    source = arg(task, 0, "source", Ident("random"))
    if isinstance(source, ListV):
        ring = ctx.entries(arg(task, None, "ring", Ident("QQ")))
        mats = [matrix_literal(source, ring)]
    else:
        if as_name(source) != "random":
            raise TaskError("suite source is 'random' or a matrix literal")
        n = as_int(arg(task, None, "n", Num(Fraction(3))))
        entry = as_name(arg(task, None, "entry", Ident("mat2")))
        reps = as_int(arg(task, None, "reps", Num(Fraction(1))))
        seed = ctx.task_seed(task)
        if entry == "mat2":
            mats = [random_mat2_matrix(n, seed + k) for k in range(reps)]
        elif entry == "rational":
            mats = [random_rational_matrix(n, seed + k) for k in range(reps)]
        else:
            raise TaskError(f"unknown entry kind {entry} (mat2 or rational)")
    totals: dict = {}
    violated = []
    for k, A in enumerate(mats):
        rep = identity_suite(A, applicable_families(A.ring), seed=k)
        for fam, st in rep.statuses().items():
            totals.setdefault(fam, {}).setdefault(st, 0)
            totals[fam][st] += 1
            if st == "violated":
                violated.append(f"matrix {k}: {fam}")
    status = FAIL if violated else OK
    witness = "all identities ok" if not violated else f"{len(violated)} violations"
    return status, witness, None, {"matrices": len(mats), "families": totals, "violations": violated}


def t_cohn(task, ctx):
    from ..cohn import MatrixSigma, cohn_presentation

    R = ctx.presented(arg(task, 0, "ring"))
    sigma = MatrixSigma(R, [nc_matrix(m, R) for m in as_list(arg(task, 1, "sigma"))])
    P = cohn_presentation(R, sigma, complete_system=as_bool(arg(task, None, "complete", Ident("true"))))
    details = P.summary()
    deg = task.kw("basis")
    if deg is not None and P.ring is not None:
        details["basis"] = ["*".join(w) if w else "1" for w in P.ring.basis_words(as_int(deg))]
    return (OK if P.confluent else INCONCLUSIVE), ("confluent" if P.confluent else "not confluent within bounds"), None, details


def t_qdet_first(task, ctx):
    from ..cohn import MatrixSigma, qdet_first_presentation

    R = ctx.presented(arg(task, 0, "ring"))
    sigma = MatrixSigma(R, [nc_matrix(m, R) for m in as_list(arg(task, 1, "sigma"))])
    P = qdet_first_presentation(R, sigma, seed=ctx.task_seed(task),
                                complete_system=as_bool(arg(task, None, "complete", Ident("false"))))
    return OK, {k: len(v) for k, v in P.stages.items()}, None, P.summary()


def t_closure(task, ctx):
    from ..cohn import random_closure_check

    reps = as_int(arg(task, 0, "reps", Num(Fraction(20))))
    rep = random_closure_check(reps, ctx.task_seed(task))
    return (OK if rep.ok else FAIL), f"{rep.verified} certificates verified", None, rep.as_dict()


def t_sigma_torsion(task, ctx):
    from ..cohn import MatrixSigma, sigma_torsion
    from ..gabriel.fgmodule import FgModule

    base = ctx.base(arg(task, None, "base", Ident("ZZ")))
    M = FgModule(base, [to_base(d, base) for d in as_list(arg(task, 0, "module"))])
    sigma = MatrixSigma(base, [base_matrix(m, base) for m in as_list(arg(task, 1, "sigma"))])
    depth = as_int(arg(task, None, "depth", Num(Fraction(3))))
    res = sigma_torsion(M, sigma, depth)
    return OK, [M.format(m) for m in res.elements], depth, res.as_dict(M)


def _fractions(task, ctx, R, S, key):
    v = task.kw(key)
    return [] if v is None else [fraction_arg(x, S, R) for x in as_list(v)]


def t_derivation(task, ctx):
    from ..diffcalc import Derivation, check_localized_derivation, extend_derivation, sample_fractions

    R = ctx.presented(arg(task, 0, "ring"))
    S = oreset(task, R)
    images = as_list(arg(task, None, "d"))
    if len(images) != len(R.generators):
        raise TaskError("d lists one image per generator")
    d = Derivation(R, {g: to_nc(v, R) for g, v in zip(R.generators, images)})
    D = extend_derivation(d, S, ctx.task_bound(task, None))
    values = {}
    for x in _fractions(task, ctx, R, S, "at"):
        dd, nn = D(x).pair()
        values[str(x)] = f"({dd})^-1 ({nn})"
    details: dict = {"values": values}
    n = as_int(arg(task, None, "samples", Num(Fraction(0))))
    status = OK
    if n:
        rep = check_localized_derivation(D, sample_fractions(S, n, ctx.task_seed(task)))
        details["checks"] = {"well_defined": rep.well_defined_checked, "leibniz": rep.leibniz_checked,
                             "failures": rep.well_defined_failures + rep.leibniz_failures}
        status = OK if rep.ok else FAIL
    return status, values or "checked", D.bound, details


def t_poisson(task, ctx):
    from ..diffcalc import PoissonStructure, check_localized_bracket, extend_poisson, sample_fractions

    R = ctx.presented(arg(task, 0, "ring"))
    S = oreset(task, R)
    table = {}
    for entry in as_list(arg(task, None, "bracket")):
        items = as_list(entry)
        if len(items) != 3:
            raise TaskError("bracket entries are [x, y, value]")
        table[(as_name(items[0]), as_name(items[1]))] = to_nc(items[2], R)
    B = extend_poisson(PoissonStructure(R, table), S, ctx.task_bound(task, None))
    values = {}
    pairs = task.kw("at")
    for p in as_list(pairs) if pairs is not None else []:
        f, g = (fraction_arg(x, S, R) for x in as_list(p))
        dd, nn = B(f, g).pair()
        values[f"{{{f}, {g}}}"] = f"({dd})^-1 ({nn})"
    details: dict = {"values": values}
    n = as_int(arg(task, None, "triples", Num(Fraction(0))))
    status = OK
    if n:
        rep = check_localized_bracket(B, sample_fractions(S, 6, ctx.task_seed(task)), triples=n, seed=ctx.task_seed(task))
        details["checks"] = rep.as_dict()
        status = OK if rep.ok else FAIL
    return status, values or "checked", B.bound, details


def t_diff_ore(task, ctx):
    from ..diffcalc import central_calculus, differential_ore_check, q_plane_calculus

    R = ctx.presented(arg(task, 0, "ring"))
    S = oreset(task, R)
    calc = as_name(arg(task, None, "calculus", Ident("central")))
    if calc == "central":
        C = central_calculus(R)
    elif calc == "qplane":
        C = q_plane_calculus(R, _frac(arg(task, None, "q", Num(Fraction(2)))))
    else:
        raise TaskError(f"unknown calculus {calc} (central or qplane)")
    bound = ctx.task_bound(task, 3)
    rep = differential_ore_check(C, S, bound)
    return (OK if rep.satisfied else INCONCLUSIVE), rep.as_dict()["witnesses"], bound, rep.as_dict()


def _filter(task, ctx, base):
    from ..gabriel.filters import FilterSpec

    return FilterSpec(base, [to_base(g, base) for g in as_list(arg(task, None, "S"))])


def t_in_filter(task, ctx):
    from ..gabriel.filters import in_filter

    base = ctx.base(arg(task, None, "base", Ident("ZZ")))
    F = _filter(task, ctx, base)
    J = to_base(arg(task, 0, "J"), base)
    return OK, in_filter(J, F), None, {}


def t_torsion(task, ctx):
    from ..gabriel.fgmodule import FgModule
    from ..gabriel.localize import torsion_sigma

    base = ctx.base(arg(task, None, "base", Ident("ZZ")))
    M = FgModule(base, [to_base(d, base) for d in as_list(arg(task, 0, "module"))])
    rep = torsion_sigma(M, _filter(task, ctx, base))
    ok = rep.idempotent and rep.quotient_torsion_free
    return (OK if ok else FAIL), rep.describe(), None, {
        "generators": [M.format(g) for g in rep.generators], "quotient": rep.quotient.describe(),
        "idempotent": rep.idempotent, "quotient_torsion_free": rep.quotient_torsion_free}


def t_gabriel_q(task, ctx):
    from ..gabriel.fgmodule import FgModule
    from ..gabriel.localize import gabriel_Q

    base = ctx.base(arg(task, None, "base", Ident("ZZ")))
    M = FgModule(base, [to_base(d, base) for d in as_list(arg(task, 0, "module"))])
    n_max = as_int(arg(task, None, "n_max", Num(Fraction(12))))
    G = gabriel_Q(M, _filter(task, ctx, base), n_max)
    ok = all(v for v in G.witness.values() if isinstance(v, bool))
    return (OK if ok else FAIL), G.description, n_max, {"comparison": G.witness}


def t_deligne(task, ctx):
    from ..gabriel.fgmodule import FgModule
    from ..gabriel.localize import deligne_limit

    base = ctx.base(arg(task, None, "base", Ident("ZZ")))
    f = to_base(arg(task, 0, "f"), base)
    M = FgModule(base, [to_base(d, base) for d in as_list(arg(task, 1, "module"))])
    n_max = as_int(arg(task, None, "n_max", Num(Fraction(12))))
    D = deligne_limit(f, M, n_max)
    return (OK if D.agrees_with_gabriel else FAIL), D.description, n_max, {
        "agrees_with_gabriel": D.agrees_with_gabriel, "natural": D.natural}


def t_filter_axioms(task, ctx):
    from ..gabriel.filters import check_axioms

    base = ctx.base(arg(task, None, "base", Ident("ZZ")))
    if base is not ZZ:
        raise TaskError("filter-axioms samples divisors over ZZ")
    F = _filter(task, ctx, base)
    dmax = as_int(arg(task, None, "dmax", Num(Fraction(60))))
    rep = check_axioms(F.contains, base, range(0, dmax + 1))
    return (OK if rep.all_hold else FAIL), rep.results, dmax, {"window": rep.window,
                                                                 "counterexamples": rep.counterexamples}


HANDLERS: dict[str, Callable] = {
    "normal-form": t_normal_form,
    "ambiguities": t_ambiguities,
    "basis": t_basis,
    "ore-witness": t_ore_witness,
    "ore-check": t_ore_check,
    "counterexample": t_counterexample,
    "frac": t_frac,
    "frac-laws": t_frac_laws,
    "filtered-ore": t_filtered_ore,
    "comm-relation": t_comm_relation,
    "cover": t_cover,
    "qdet": t_qdet,
    "inverse": t_inverse,
    "cramer": t_cramer,
    "suite": t_suite,
    "cohn": t_cohn,
    "qdet-first": t_qdet_first,
    "closure": t_closure,
    "sigma-torsion": t_sigma_torsion,
    "derivation": t_derivation,
    "poisson": t_poisson,
    "diff-ore": t_diff_ore,
    "in-filter": t_in_filter,
    "torsion": t_torsion,
    "gabriel-q": t_gabriel_q,
    "deligne": t_deligne,
    "filter-axioms": t_filter_axioms,
}


@dataclass
class Report:
    tasks: list

    @property
    def any_fail(self) -> bool:
        return any(t["status"] == FAIL for t in self.tasks)

    def as_dict(self) -> dict:
        counts = {s: sum(t["status"] == s for t in self.tasks) for s in (OK, FAIL, INCONCLUSIVE)}
        return {"tasks": self.tasks, "summary": counts}


def run_task(task: Task, ctx: Context) -> dict:
    from .syntax import format_task

    start = time.perf_counter()
    rec: dict = {"kind": task.kind, "task": format_task(task)}
    try:
        handler = HANDLERS.get(task.kind)
        if handler is None:
            raise TaskError(f"unknown task kind {task.kind}")
        status, witness, bound, details = handler(task, ctx)
        rec.update(status=status, bound=bound, witness=jsonable(witness), details=jsonable(details))
    except (NoWitnessWithinBound, Inconclusive) as exc:
        rec.update(status=INCONCLUSIVE, bound=getattr(exc, "bound", None), witness=str(exc), details={})
    except Exception as exc:  # noqa: BLE001 - every task error goes into the report
        rec.update(status=FAIL, bound=None, witness=None, details={}, error=f"{type(exc).__name__}: {exc}")
    rec["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return rec


def run(job: JobFile, seed: int = 0, bound: int | None = None) -> Report:
    ctx = Context(job, seed, bound)
    return Report([run_task(t, ctx) for t in job.tasks])
