"""Components of solutions of f(A) x = f(b) with A in the multiplicative closure of Sigma.

Every component carries its system (A, b, index) over the source ring.
Sums and products are re-certified with the block-triangular systems
from the subring argument: [[A, -A + B], [0, B]] for x_i + y_i and
[[B, -diag(c) P_i], [0, A]] for y_j x_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import NotInvertible, TargetNotInverting
from ..ring_core.matrices import RMatrix, inverse
from ..ring_core.rings import RingElement
from .sigma import EvaluationMap, MatrixSigma, block_upper, diag_blocks, identity


@dataclass(frozen=True)
class ClosureElement:
    A: RMatrix          # over the source ring, a member of the closure
    b: tuple            # column over the source ring
    index: int          # 0-based component
    value: RingElement  # the component in the target

    def verify(self, f: EvaluationMap, sigma: MatrixSigma | None = None, depth: int | None = None) -> bool:
        if sigma is not None and not sigma.contains(self.A, depth):
            return False
        x = _solve(f, self.A, self.b)
        return x[self.index] == self.value


def _solve(f: EvaluationMap, A: RMatrix, b: Sequence) -> list[RingElement]:
    fA = f.apply_matrix(A)
    try:
        inv = inverse(fA)
    except NotInvertible:
        raise TargetNotInverting(f"f(A) is singular for A = {A}") from None
    fb = RMatrix(f.target, len(b), 1, tuple(f.apply(v) for v in b))
    return list((RMatrix(f.target, inv.rows, inv.cols, inv.entries) @ fb).entries)


def rational_closure_solve(f: EvaluationMap, sigma: MatrixSigma, A: RMatrix, b: Sequence) -> list[ClosureElement]:
    """x = f(A)^-1 f(b), one certified closure element per component."""
    A = RMatrix(A.ring, A.rows, A.cols, A.entries)
    if not sigma.contains(A):
        raise ValueError("A is not in the multiplicative closure of Sigma (within the closure depth)")
    b = tuple(sigma.base(v) if not isinstance(v, RingElement) else v for v in b)
    if len(b) != A.rows:
        raise ValueError("right-hand side has the wrong length")
    x = _solve(f, A, b)
    return [ClosureElement(A, b, i, v) for i, v in enumerate(x)]


def _pad(el: ClosureElement, before: int, total: int) -> ClosureElement:
    """diag(I_before, A, I_after) with b padded by zeros; the index moves by ``before``."""
    base = el.A.ring
    after = total - before - el.A.rows
    blocks = []
    if before:
        blocks.append(identity(base, before))
    blocks.append(el.A)
    if after:
        blocks.append(identity(base, after))
    A = diag_blocks(*blocks)
    zero = base.zero()
    b = (zero,) * before + el.b + (zero,) * after
    return ClosureElement(A, b, el.index + before, el.value)


def _align(x: ClosureElement, y: ClosureElement):
    p = max(x.index, y.index)
    sx, sy = p - x.index, p - y.index
    total = max(x.A.rows + sx, y.A.rows + sy)
    return _pad(x, sx, total), _pad(y, sy, total)


def closure_sum(x: ClosureElement, y: ClosureElement, f: EvaluationMap) -> ClosureElement:
    x, y = _align(x, y)
    A, B = x.A, y.A
    M = block_upper(A, B - A, B)
    rhs = tuple(bx + by for bx, by in zip(x.b, y.b)) + y.b
    sol = _solve(f, M, rhs)
    out = ClosureElement(M, rhs, x.index, sol[x.index])
    if out.value != x.value + y.value:
        raise AssertionError("sum block system did not reproduce x_i + y_i")
    return out


def closure_product(y: ClosureElement, x: ClosureElement, f: EvaluationMap) -> ClosureElement:
    """The component y_j x_i from [[B, -diag(c) P_i], [0, A]] (w; x) = (0; b)."""
    base = y.A.ring
    B, c, j = y.A, y.b, y.index
    A, b, i = x.A, x.b, x.index
    m, n = B.rows, A.rows
    C = RMatrix(base, m, n, tuple(-c[p] if q == i else base.zero() for p in range(m) for q in range(n)))
    M = block_upper(B, C, A)
    rhs = (base.zero(),) * m + b
    sol = _solve(f, M, rhs)
    out = ClosureElement(M, rhs, j, sol[j])
    if out.value != y.value * x.value:
        raise AssertionError("product block system did not reproduce y_j x_i")
    return out


@dataclass
class ClosureCheck:
    instances: int
    seed: int
    verified: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verified == 2 * self.instances and not self.failures

    def as_dict(self) -> dict:
        return {"instances": self.instances, "seed": self.seed, "verified": self.verified,
                "failures": list(self.failures)}


def laurent_setup():
    """Q[x] into Q(x) with Sigma generated by [x], [x + 1] and [[x, 1], [0, x + 1]]."""
    from ..rewrite.examples import commutative_polynomials
    from ..rewrite.ncpoly import NCPoly
    from ..ring_core.rings import RationalFunctionField

    Rx = commutative_polynomials(["x"])
    x = NCPoly.gen("x")
    gens = [[[x]], [[x + 1]], [[x, 1], [0, x + 1]]]
    sigma = MatrixSigma(Rx, [RMatrix.from_rows(Rx, g) for g in gens])
    F = RationalFunctionField("x")
    return Rx, sigma, EvaluationMap(Rx, F, {"x": F.gen()})


def random_closure_check(instances: int = 20, seed: int = 0) -> ClosureCheck:
    """Random pairs of closure elements; sum and product certificates must verify."""
    import random

    from ..rewrite.ncpoly import NCPoly

    rng = random.Random(seed)
    Rx, sigma, f = laurent_setup()
    x = NCPoly.gen("x")
    out = ClosureCheck(instances, seed)

    def rand_poly():
        return Rx.normal_form(sum((NCPoly.const(rng.randint(-3, 3)) * (x ** k if k else NCPoly.one())
                                   for k in range(3)), NCPoly.zero()))

    def rand_element():
        A = rng.choice(sigma.generators)
        if rng.random() < 0.4:
            B = rng.choice(sigma.generators)
            C = RMatrix(Rx, A.rows, B.rows, tuple(Rx(rand_poly()) for _ in range(A.rows * B.rows)))
            A = block_upper(A, C, B)
        b = [rand_poly() for _ in range(A.rows)]
        els = rational_closure_solve(f, sigma, A, b)
        return rng.choice(els)

    depth = sigma.closure_depth + 3
    for k in range(instances):
        u, v = rand_element(), rand_element()
        for label, build in (("sum", lambda: closure_sum(u, v, f)), ("product", lambda: closure_product(v, u, f))):
            try:
                c = build()
                if c.verify(f, sigma, depth):
                    out.verified += 1
                else:
                    out.failures.append(f"instance {k}: {label} certificate not in the closure")
            except AssertionError as exc:
                out.failures.append(f"instance {k}: {label}: {exc}")
    return out
