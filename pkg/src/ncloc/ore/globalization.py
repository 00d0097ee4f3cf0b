"""Exactness of 0 -> M -> prod Q_l M -> prod Q_m Q_n M for a cover.

M is a finitely generated module over ZZ or QQ[x] and each Q_l is the
localization at a multiplicative set generated by finitely many base
elements.  All maps are diagonal in Smith coordinates, so the sequence
is exact iff it is exact on every cyclic summand; each summand is
checked separately and the per-summand evidence is kept in the report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from ..errors import NotConservative
from .oreset import CentralSet


@dataclass
class CoverReport:
    module: str
    covers: list
    pairs: list
    conservative: bool
    injective: bool
    middle_exact: bool
    kernel_of_iota: list = field(default_factory=list)
    summands: list = field(default_factory=list)
    bound: int | None = None

    @property
    def exact(self) -> bool:
        return self.injective and self.middle_exact

    def as_dict(self) -> dict:
        return {
            "module": self.module,
            "covers": self.covers,
            "pairs": [list(p) for p in self.pairs],
            "conservative": self.conservative,
            "injective": self.injective,
            "middle_exact": self.middle_exact,
            "exact": self.exact,
            "summands": self.summands,
            "bound": self.bound,
        }


def _as_set(base, c) -> CentralSet:
    if isinstance(c, CentralSet):
        return c
    gens = getattr(c, "generators", c)
    return CentralSet(base, list(gens))


def _coprime_part(sets: Sequence[CentralSet], d):
    """Part of d sharing no prime with any of the given sets."""
    b = d
    for S in sets:
        b = S.saturation_part(b)[1]
    return b


def _common_part(sets: Sequence[CentralSet], d):
    """Part of d built from primes that divide a generator of every set."""
    g = d
    for S in sets:
        g = S.saturation_part(g)[0]
    return g


def cover_exactness(M, covers: Sequence, *, height: int = 6) -> CoverReport:
    """Check the globalization sequence for the module M and the given cover.

    ``height`` bounds the box of numerators used on free summands and on
    torsion summands over QQ[x] (coefficients in -1..1 there).  Torsion
    summands over ZZ are enumerated completely.  Raises NotConservative
    when some nonzero element of M dies in every localization.
    """
    R = M.base
    sets = [_as_set(R, c) for c in covers]
    k = len(sets)
    pairs = [(a, b) for a in range(k) for b in range(k) if a != b]
    names = [S.name for S in sets]
    report = CoverReport(M.describe(), names, pairs, True, True, True, bound=height)
    if not M.invariants:
        return report
    if not sets:
        raise NotConservative("empty cover of a nonzero module")

    for i, d in enumerate(M.invariants):
        common = _common_part(sets, d) if not R.is_zero(d) else R.zero_value()
        if not R.is_zero(d) and not R.is_unit(common):
            report.conservative = False
            raise NotConservative(
                f"coordinate {i} of {M.describe()}: elements killed by {R.format(common)} vanish in every localization"
            )

    for i, d in enumerate(M.invariants):
        if R.is_zero(d):
            info = _free_summand(R, sets, pairs, height)
        else:
            info = _torsion_summand(R, sets, pairs, d, height)
        info["coordinate"] = i
        report.summands.append(info)
        report.injective &= info["injective"]
        report.middle_exact &= info["middle_exact"]
    return report


def _free_summand(R, sets, pairs, height: int) -> dict:
    """Summand R: localizations sit inside Frac(R), so ker d is the diagonal.

    A kernel element is then one fraction x lying in every S_l^-1 R, and
    exactness asks that x be in R.  The structural test: no prime of R
    divides a generator of every set.  The box test tries x = a / s for
    numerators of size <= height and s among the first closure elements
    of the first set.
    """
    prod_all = R.one_value()
    for S in sets:
        prod_all = R.mul(prod_all, S.product())
    common = _common_part(sets, prod_all)
    structural = R.is_unit(common)
    box_ok = True
    witness = None
    if R.ring_id == "ZZ":
        for s in sets[0].elements(4):
            for a in range(1, height + 1):
                g = R.gcd(a, s)
                num, den = R.exact_div(a, g), R.exact_div(s, g)
                in_all = all(S.contains(den) for S in sets)
                if in_all and not R.is_unit(den):
                    box_ok = False
                    witness = f"{num}/{den}"
                    break
            if not box_ok:
                break
    return {
        "kind": "free",
        "injective": True,
        "middle_exact": structural and box_ok,
        "structural": structural,
        "box_ok": box_ok,
        "non_integral_kernel_element": witness,
    }


def _crt(R, residues, moduli):
    """x with x = r_l mod b_l for all l, or None if incompatible."""
    x, m = R.zero_value(), R.one_value()
    for r, b in zip(residues, moduli):
        if R.is_unit(b):
            continue
        g, u, _ = R.xgcd(m, b)
        diff = R.sub(r, x)
        if not R.divides(g, diff):
            return None
        t = R.mul(R.exact_div(diff, g), u)
        lcm = R.exact_div(R.mul(m, b), g)
        x = R.divmod(R.add(x, R.mul(m, t)), lcm)[1]
        m = lcm
    return x


def _residues(R, b, height):
    if R.is_unit(b):
        return [R.zero_value()]
    if R.ring_id == "ZZ":
        return list(range(b))
    # QQ[x]: polynomials of degree < deg b with coefficients in -1..1
    from ..ring_core.polys import UPoly

    n = b.degree
    return [UPoly(c, b.var) for c in product((-1, 0, 1), repeat=n)]


def _torsion_summand(R, sets, pairs, d, height: int) -> dict:
    """Summand R/(d): Q_l(R/(d)) = R/(b_l) with b_l the part of d prime to S_l."""
    b = [_coprime_part([S], d) for S in sets]
    b_pair = {(m, n): _coprime_part([sets[m], sets[n]], d) for m, n in pairs}

    def red(x, mod):
        return R.zero_value() if R.is_unit(mod) else R.divmod(x, mod)[1]

    exhaustive = R.ring_id == "ZZ"
    # kernel of d: tuples with x_n - x_m = 0 in every Q_m Q_n
    kernel = []
    for xs in product(*[_residues(R, bl, height) for bl in b]):
        if all(R.is_zero(red(R.sub(xs[n], xs[m]), b_pair[(m, n)])) for m, n in pairs):
            kernel.append(xs)
    preimages_ok = True
    for xs in kernel:
        m = _crt(R, xs, b)
        if m is None or any(not R.eq(red(m, bl), red(x, bl)) for x, bl in zip(xs, b)):
            preimages_ok = False
            break
    # the image of iota always lies in the kernel; check on all of R/(d) over ZZ
    image_in_kernel = True
    zero_kernel = []
    if exhaustive:
        for m in range(d):
            xs = [red(m, bl) for bl in b]
            if not all(R.is_zero(red(R.sub(xs[n], xs[mm]), b_pair[(mm, n)])) for mm, n in pairs):
                image_in_kernel = False
            if all(R.is_zero(x) for x in xs) and m != 0:
                zero_kernel.append(m)
    # injectivity: the moduli b_l must have lcm d
    lcm = R.one_value()
    for bl in b:
        lcm = R.exact_div(R.mul(lcm, bl), R.gcd(lcm, bl))
    injective = R.eq(R.canonical(lcm), R.canonical(d)) and not zero_kernel
    return {
        "kind": "torsion",
        "invariant": R.format(d),
        "localized_moduli": [R.format(x) for x in b],
        "pair_moduli": {f"{m},{n}": R.format(v) for (m, n), v in b_pair.items()},
        "kernel_size": len(kernel),
        "exhaustive": exhaustive,
        "injective": injective,
        "middle_exact": preimages_ok and image_in_kernel,
        "kernel_of_iota": zero_kernel,
    }
