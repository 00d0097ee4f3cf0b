"""Bounded search for the Sigma-torsion submodule of a module over ZZ or QQ[x].

An element m is Sigma-torsion when m = u_i for some column u over M with
A u = 0 and A in the closure of Sigma.  Members of the closure are
enumerated up to the closure depth.  Because the base is commutative
and M is given in Smith coordinates, A u = 0 splits into one congruence
system per coordinate, and each system is solved by enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from ..gabriel.fgmodule import FgModule
from ..ring_core.linalg import nullspace
from ..ring_core.matrices import RMatrix
from .sigma import MatrixSigma, block_upper, diag_blocks, identity

VECTOR_LIMIT = 20000


@dataclass(frozen=True)
class TorsionCertificate:
    A: RMatrix
    u: tuple        # module elements
    index: int      # 0-based

    def verify(self, M: FgModule) -> bool:
        for p in range(self.A.rows):
            acc = M.zero()
            for q in range(self.A.cols):
                acc = M.add(acc, M.scale(self.A.at(p, q).value, self.u[q]))
            if not M.is_zero(acc):
                return False
        return True

    @property
    def element(self):
        return self.u[self.index]


@dataclass
class TorsionResult:
    module: str
    elements: list
    certificates: dict
    members_checked: int
    bounds: dict
    absent_coordinates: list = field(default_factory=list)
    closed: bool = True
    notes: list = field(default_factory=list)

    def as_dict(self, M: FgModule | None = None) -> dict:
        fmt = M.format if M is not None else str
        return {
            "module": self.module,
            "elements": [fmt(m) for m in self.elements],
            "members_checked": self.members_checked,
            "bounds": self.bounds,
            "bounded_absence": self.absent_coordinates,
            "closed": self.closed,
            "notes": self.notes,
        }


def _residues(R, d, height):
    if R.ring_id == "ZZ":
        return list(range(abs(d)))
    from ..ring_core.polys import UPoly

    return [UPoly(c, d.var) for c in product((-1, 0, 1), repeat=d.degree)]


def _coordinate_solutions(M: FgModule, c: int, A: RMatrix, height: int, notes: list):
    """All u in (R/d_c)^n with A u = 0 (a finite list, possibly truncated)."""
    R = M.base
    d = M.invariants[c]
    n = A.rows
    a = [[A.at(p, q).value for q in range(n)] for p in range(n)]
    if R.is_zero(d):
        if R.ring_id != "ZZ":
            notes.append(f"coordinate {c}: free over {R.ring_id}, only the zero solution is used")
            return [tuple(R.zero_value() for _ in range(n))]
        basis = nullspace([[Fraction(x) for x in row] for row in a], n)
        sols = {tuple(0 for _ in range(n))}
        for v in basis:
            den = 1
            for x in v:
                den = den * x.denominator // _gcd(den, x.denominator)
            iv = tuple(int(x * den) for x in v)
            for k in range(-height, height + 1):
                sols.add(tuple(k * x for x in iv))
        return sorted(sols)
    res = _residues(R, d, height)
    if len(res) ** n > VECTOR_LIMIT:
        notes.append(f"coordinate {c}: {len(res)}^{n} candidate vectors exceed the limit, skipped")
        return [tuple(R.zero_value() for _ in range(n))]
    out = []
    for u in product(res, repeat=n):
        ok = True
        for p in range(n):
            acc = R.zero_value()
            for q in range(n):
                acc = R.add(acc, R.mul(a[p][q], u[q]))
            if not R.is_zero(R.divmod(acc, d)[1]):
                ok = False
                break
        if ok:
            out.append(u)
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _key(M: FgModule, m):
    return tuple(str(x) for x in M.element(m))


def combine_certificates(M: FgModule, c1: TorsionCertificate, c2: TorsionCertificate, r) -> TorsionCertificate:
    """Certificate for m + r m' from [[A, -A r], [0, B]] after padding to a common index."""
    base = c1.A.ring
    p = max(c1.index, c2.index)

    def pad(cert, before, total):
        after = total - before - cert.A.rows
        blocks = ([identity(base, before)] if before else []) + [cert.A] + ([identity(base, after)] if after else [])
        zeros = (M.zero(),)
        return diag_blocks(*blocks), zeros * before + tuple(cert.u) + zeros * after

    s1, s2 = p - c1.index, p - c2.index
    total = max(c1.A.rows + s1, c2.A.rows + s2)
    A, u = pad(c1, s1, total)
    B, v = pad(c2, s2, total)
    rr = base(r)
    C = A.map(lambda e: -(e * rr))
    big = block_upper(A, C, B)
    w = tuple(M.add(x, M.scale(r, y)) for x, y in zip(u, v)) + v
    cert = TorsionCertificate(big, w, p)
    if not cert.verify(M):
        raise AssertionError("combined torsion certificate does not verify")
    return cert


def sigma_torsion(M: FgModule, sigma: MatrixSigma, bound: int | None = None, *, max_size: int = 4,
                  height: int = 8, scalars: Sequence | None = None, fillers: Sequence = (0, 1)) -> TorsionResult:
    """Certified Sigma-torsion elements of M found within the bounds.

    ``bound`` is the closure depth (default: sigma's); ``fillers`` are the
    values tried in off-diagonal blocks of composed members.  The found set is
    closed under m + r m' for the given base scalars, each combination
    being re-certified by a block construction.
    """
    R = M.base
    depth = sigma.closure_depth if bound is None else bound
    notes: list = []
    members = sigma.members(depth, max_size, fillers)
    certs: dict = {}
    for A in members:
        per_coord = [_coordinate_solutions(M, c, A, height, notes) for c in range(M.ngens)]
        for i in range(A.rows):
            # values of component i reachable in each coordinate, with a witness vector
            options = []
            for c, sols in enumerate(per_coord):
                opts = {}
                for u in sols:
                    opts.setdefault(str(u[i]), u)
                options.append(list(opts.values()))
            for choice in product(*options):
                u = tuple(M.element([choice[c][q] for c in range(M.ngens)]) for q in range(A.rows))
                cert = TorsionCertificate(A, u, i)
                k = _key(M, cert.element)
                if k not in certs:
                    if not cert.verify(M):
                        raise AssertionError("enumerated torsion certificate does not verify")
                    certs[k] = cert
    scalars = list(scalars) if scalars is not None else ([1, -1, 2] if R.ring_id == "ZZ" else [1, -1])
    closed = True
    for _ in range(4):
        items = list(certs.values())
        new = {}
        for c1 in items:
            for c2 in items:
                for r in scalars:
                    m = M.add(c1.element, M.scale(r, c2.element))
                    k = _key(M, m)
                    if k not in certs and k not in new:
                        new[k] = combine_certificates(M, c1, c2, r)
        if not new:
            break
        closed = False
        certs.update(new)
        if M.is_finite:
            closed = True
    elements = [c.element for c in certs.values()]
    absent = [c for c in range(M.ngens) if all(R.is_zero(M.element(m)[c]) for m in elements)]
    return TorsionResult(
        M.describe(), elements, certs, len(members),
        {"closure_depth": depth, "max_size": max_size, "height": height, "fillers": list(fillers)},
        absent, closed, sorted(set(notes)),
    )


def preradical_check(M: FgModule, sigma: MatrixSigma, bound: int | None = None, **kw) -> dict:
    """The image of M in M / (found torsion) admits no new certificate within the same bounds."""
    R = M.base
    found = sigma_torsion(M, sigma, bound, **kw)
    rows = []
    for c, d in enumerate(M.invariants):
        rows.append([d if k == c else R.zero_value() for k in range(M.ngens)])
    for m in found.elements:
        rows.append(list(M.element(m)))
    Q = FgModule.from_presentation(R, rows, M.ngens) if M.ngens else M
    again = sigma_torsion(Q, sigma, bound, **kw) if Q.ngens else None
    nonzero = [] if again is None else [m for m in again.elements if not Q.is_zero(m)]
    return {"torsion": found, "quotient": Q.describe(), "quotient_torsion": len(nonzero), "holds": not nonzero}


def permutation_matrix(base, perm: Sequence[int]) -> RMatrix:
    """P with (P v)_p = v_{perm[p]} (0-based)."""
    n = len(perm)
    return RMatrix(base, n, n, tuple(base(1 if perm[p] == q else 0) for p in range(n) for q in range(n)))


def transform_certificate(M: FgModule, cert: TorsionCertificate, A: RMatrix, w: Sequence[int], w2: Sequence[int]) -> TorsionCertificate:
    """A Sigma'-certificate for w A w2 becomes a Sigma-certificate for A.

    With A' = W A W2 and A' u = 0 we get A (W2 u) = 0, and u_i sits at the
    position p of W2 u with w2[p] = i.
    """
    base = A.ring
    W2 = permutation_matrix(base, w2)
    u2 = []
    for p in range(W2.rows):
        acc = M.zero()
        for q in range(W2.cols):
            acc = M.add(acc, M.scale(W2.at(p, q).value, cert.u[q]))
        u2.append(acc)
    p = list(w2).index(cert.index)
    out = TorsionCertificate(RMatrix(base, A.rows, A.cols, A.entries), tuple(u2), p)
    if not out.verify(M) or not M.eq(out.element, cert.element):
        raise AssertionError("transformed certificate does not verify")
    return out
