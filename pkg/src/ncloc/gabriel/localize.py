"""Torsion, the Gabriel localization Q_L and the Deligne colimit."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..ore.modules import CommutativeModuleLocalization
from .fgmodule import FgModule, ModuleMap
from .filters import FilterSpec

N_MAX = 12
STABLE_STEPS = 3


@dataclass
class TorsionReport:
    module: FgModule
    generators: list            # generators of sigma(M) in M's coordinates
    quotient: FgModule          # M / sigma(M)
    torsion: FgModule           # sigma(M) as an abstract module
    idempotent: bool
    quotient_torsion_free: bool
    positions: tuple = ()       # M coordinates that survive in the quotient

    def project(self, m) -> tuple:
        m = self.module.element(m)
        return self.quotient.element(m[i] for i in self.positions)

    def lift(self, v) -> tuple:
        M = self.module
        out = list(M.zero())
        for i, c in zip(self.positions, v):
            out[i] = c
        return M.element(out)

    def describe(self) -> str:
        return self.torsion.describe()


def _s_split(F: FilterSpec, d):
    """d = a b with a S-smooth and b coprime to S (both canonical)."""
    return F.S.saturation_part(d)


def torsion_sigma(M: FgModule, F: FilterSpec, *, verify: bool = True) -> TorsionReport:
    """sigma_L(M) = {m : s m = 0 for some s in S}.

    In coordinate i with invariant d = a b (a the S-part), the torsion
    elements are the multiples of b, forming a copy of R/(a).  Free
    coordinates contribute nothing.
    """
    R = M.base
    gens, tors_invs, quot_invs, positions = [], [], [], []
    for i, d in enumerate(M.invariants):
        if R.is_zero(d):
            quot_invs.append(d)
            positions.append(i)
            continue
        a, b = _s_split(F, d)
        e = [R.zero_value()] * M.ngens
        e[i] = b
        if not R.is_unit(a):
            gens.append(M.element(e))
            tors_invs.append(a)
        if not R.is_unit(b):
            quot_invs.append(b)
            positions.append(i)
    torsion = FgModule(R, tors_invs)
    quotient = FgModule(R, quot_invs)
    rep = TorsionReport(M, gens, quotient, torsion, True, True, tuple(positions))
    if verify:
        again = torsion_sigma(torsion, F, verify=False)
        rep.idempotent = again.torsion == torsion
        rep.quotient_torsion_free = not torsion_sigma(quotient, F, verify=False).generators
    return rep


def in_sigma(M: FgModule, F: FilterSpec, m) -> bool:
    """Direct definition: some s in S kills m (exact via the annihilator)."""
    R = M.base
    ann = M.annihilator(m)
    if R.is_zero(ann):
        return False
    return R.is_unit(F.S.saturation_part(ann)[1])


@dataclass
class ColimitClass:
    """Class of f in Hom((s^n), N) represented by its value v = f(s^n)."""

    n: int
    value: tuple

    def __str__(self):
        return f"[{self.n}; {self.value}]"


@dataclass
class ColimitModule:
    """colim_n Hom((s^n), N) with connecting maps v -> s v.

    Each level is identified with N via f -> f(s^n).  When s acts
    injectively on N, classes are kept with the smallest possible n.
    """

    N: FgModule
    s: Any
    n_max: int
    description: str
    stabilized_at: int | None
    steps: list = field(default_factory=list)

    def _div_s(self, v):
        """Some w with s w = v in N, or None (unique when s acts injectively)."""
        R, N = self.N.base, self.N
        out = []
        for i, (d, c) in enumerate(zip(N.invariants, v)):
            if R.is_zero(d):
                q, r = R.divmod(c, self.s)
                if not R.is_zero(r):
                    return None
                out.append(q)
            else:
                g, x, _ = R.xgcd(self.s, d)
                if not R.divides(g, c):
                    return None
                out.append(R.mul(x, R.exact_div(c, g)))
        w = N.element(out)
        return w if N.eq(N.scale(self.s, w), v) else None

    def cls(self, n: int, v) -> ColimitClass:
        v = self.N.element(v)
        while n > 0:
            w = self._div_s(v)
            if w is None or not self._injective():
                break
            v, n = w, n - 1
        return ColimitClass(n, v)

    def _injective(self) -> bool:
        R = self.N.base
        return all(R.is_zero(d) or R.is_unit(R.gcd(d, self.s)) for d in self.N.invariants)

    def lift(self, c: ColimitClass, n: int):
        """Value at level n >= c.n, i.e. s^(n - c.n) v."""
        v = c.value
        for _ in range(n - c.n):
            v = self.N.scale(self.s, v)
        return v

    def add(self, x: ColimitClass, y: ColimitClass) -> ColimitClass:
        n = max(x.n, y.n)
        return self.cls(n, self.N.add(self.lift(x, n), self.lift(y, n)))

    def scale(self, r, x: ColimitClass) -> ColimitClass:
        return self.cls(x.n, self.N.scale(r, x.value))

    def eq(self, x: ColimitClass, y: ColimitClass) -> bool:
        """Equal in the colimit: agree after pushing far enough."""
        n = max(x.n, y.n)
        a, b = self.lift(x, n), self.lift(y, n)
        for _ in range(self.n_max + 1):
            if self.N.eq(a, b):
                return True
            a, b = self.N.scale(self.s, a), self.N.scale(self.s, b)
        return self.N.eq(a, b)


def _describe_localized(N: FgModule, F: FilterSpec) -> str:
    R = N.base
    parts = []
    rank = N.free_rank
    if rank:
        inverted = [g for g in F.generators if not R.is_unit(g)]
        ring = R.ring_id
        if inverted:
            ring += "[" + ",".join("1/" + R.format(g) for g in inverted) + "]"
        parts.append(ring + (f"^{rank}" if rank > 1 else ""))
    for d in N.torsion_invariants:
        a, b = F.S.saturation_part(d)
        if not R.is_unit(b):
            parts.append(f"{R.ring_id}/({R.format(b)})")
    return " + ".join(parts) if parts else "0"


def _colimit(N: FgModule, F: FilterSpec, n_max: int) -> ColimitModule:
    R = N.base
    s = F.product()
    steps = []
    stable_run, stabilized = 0, None
    for n in range(n_max):
        # connecting map Hom((s^n), N) -> Hom((s^(n+1)), N) is v -> s v on N
        injective = all(R.is_zero(d) or R.is_unit(R.gcd(d, s)) for d in N.invariants)
        surjective = all(not R.is_zero(d) and R.is_unit(R.gcd(d, s)) for d in N.invariants)
        steps.append({"n": n, "injective": injective, "surjective": surjective})
        stable_run = stable_run + 1 if (injective and surjective) else 0
        if stable_run >= STABLE_STEPS:
            stabilized = n - STABLE_STEPS + 1
            break
    return ColimitModule(N, s, n_max, _describe_localized(N, F), stabilized, steps)


@dataclass
class GabrielQ:
    M: FgModule
    F: FilterSpec
    torsion: TorsionReport
    colimit: ColimitModule
    witness: dict

    @property
    def description(self) -> str:
        return self.colimit.description

    def cls(self, n: int, m) -> ColimitClass:
        """Class of the map s^n -> image of m in M / sigma(M)."""
        return self.colimit.cls(n, self.torsion.project(m))

    def to_fraction(self, c: ColimitClass):
        """f -> f(s^n) / s^n as an element of S^-1 M."""
        L = CommutativeModuleLocalization(self.F.S, self.M)
        R = self.M.base
        s_n = R.one_value()
        for _ in range(c.n):
            s_n = R.mul(s_n, self.colimit.s)
        # any lift works: lifts differ by S-torsion, which dies in S^-1 M
        return L.fraction(s_n, self.torsion.lift(c.value))


def gabriel_Q(M: FgModule, F: FilterSpec, n_max: int = N_MAX) -> GabrielQ:
    """Q_L(M) = colim Hom((s^n), M / sigma(M)) with the S^-1 comparison."""
    tors = torsion_sigma(M, F)
    col = _colimit(tors.quotient, F, n_max)
    G = GabrielQ(M, F, tors, col, {})
    G.witness = compare_with_fractions(G)
    return G


def compare_with_fractions(G: GabrielQ, levels: int = 3) -> dict:
    """Check f -> f(s^n)/s^n against S^-1 M on generators at several levels.

    Compatibility: classes (n, v) and (n+1, s v) must map to equal
    fractions, sums must map to sums, and the map must be injective on
    the checked classes (zero class iff zero fraction).
    """
    L = CommutativeModuleLocalization(G.F.S, G.M)
    M, col = G.M, G.colimit
    ok = True
    checked = 0
    gens = M.gens() or [M.zero()]
    for n in range(levels):
        for g in gens:
            c = G.cls(n, g)
            frac = G.to_fraction(c)
            frac_direct = L.fraction(_pow(M.base, col.s, n), g)
            if not L.eq(frac, frac_direct):
                ok = False
            zero_class = col.eq(c, ColimitClass(0, col.N.zero()))
            if zero_class != L.is_zero(frac_direct):
                ok = False
            for h in gens:
                c2 = G.cls(n + 1, h)
                total = col.add(c, c2)
                f_sum = L.add(frac_direct, L.fraction(_pow(M.base, col.s, n + 1), h))
                if not L.eq(G.to_fraction(total), f_sum):
                    ok = False
            checked += 1
    return {"checked": checked, "agrees": ok}


def _pow(R, s, n):
    p = R.one_value()
    for _ in range(n):
        p = R.mul(p, s)
    return p


@dataclass
class DeligneLimit:
    f: Any
    M: FgModule
    colimit: ColimitModule
    agrees_with_gabriel: bool
    natural: bool | None

    @property
    def description(self) -> str:
        return self.colimit.description


def deligne_limit(f, M: FgModule, n_max: int = N_MAX, *, naturality_map: ModuleMap | None = None) -> DeligneLimit:
    """colim_n Hom((f^n), M) computed on M itself (no torsion quotient).

    The result is compared with gabriel_Q for S = powers of f: both must
    have the same description and the classes of (n, m) must correspond.
    """
    R = M.base
    f = R.coerce(f)
    F = FilterSpec(R, [f])
    col = _colimit(M, F, n_max)
    G = gabriel_Q(M, F, n_max)
    agrees = col.description == G.description
    for n in range(3):
        for g in M.gens():
            a = col.cls(n, g)
            b = G.cls(n, g)
            # through S^-1 M: [n; m] -> m / f^n on both sides
            L = CommutativeModuleLocalization(F.S, M)
            fa = L.fraction(_pow(R, f, a.n), a.value)
            if not L.eq(fa, G.to_fraction(b)):
                agrees = False
    natural = None
    if naturality_map is not None:
        natural = _naturality(f, naturality_map, n_max)
    return DeligneLimit(f, M, col, agrees, natural)


def _naturality(f, phi: ModuleMap, n_max: int) -> bool:
    """colim(phi)[n; m] = [n; phi(m)] must match S^-1 phi on fractions."""
    R = phi.src.base
    F = FilterSpec(R, [f])
    src, dst = _colimit(phi.src, F, n_max), _colimit(phi.dst, F, n_max)
    Ls = CommutativeModuleLocalization(F.S, phi.src)
    Ld = CommutativeModuleLocalization(F.S, phi.dst)
    for n in range(3):
        for g in phi.src.gens():
            c = src.cls(n, g)
            image = dst.cls(c.n, phi(c.value))
            frac_src = Ls.fraction(_pow(R, f, c.n), c.value)
            pushed = Ld.fraction(frac_src.denom, phi(frac_src.elem))
            if not Ld.eq(Ld.fraction(_pow(R, f, image.n), image.value), pushed):
                return False
    return True
