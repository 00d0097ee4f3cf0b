"""Registered presentations used throughout tests and the CLI."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..ring_core.polys import RationalFunction
from .ncpoly import NCPoly
from .system import PresentedRing

DEFAULT_Q = Fraction(2)


def q_plane(q=DEFAULT_Q, *, symbolic: bool = False) -> PresentedRing:
    """Quantum plane ab = q ba, rewritten as ab -> q ba.

    With ``symbolic=True`` the parameter is the rational function q in
    the coefficient field Q(q) instead of a fixed rational.
    """
    if symbolic:
        q = RationalFunction.var("q")
        name = "qplane_q"
    else:
        q = Fraction(q)
        if q in (0, 1, -1):
            raise ValueError("the quantum plane needs q different from 0 and +-1")
        name = f"qplane_{q}".replace("/", "_")
    return PresentedRing(name, ("a", "b"), [(("a", "b"), NCPoly.word("b", "a", coeff=q))], domain=True)


def counterexample_ring(exponents: Sequence[int] = (1, 2, 3), name: str | None = None) -> PresentedRing:
    """Ring on z1, z2, z3, D with D^e1 z1 = z2 z3 D, D^e2 z2 = z3 z1 D, D^e3 z3 = z1 z2 D.

    The relations are oriented from right to left.  Weights w(D) = 1 and
    w(z_i) = max(exponents) + 1 make every rule decrease a weighted
    degree-lex order even though z1 z2 D -> D^3 z3 lengthens words.
    """
    e1, e2, e3 = (int(e) for e in exponents)
    if min(e1, e2, e3) < 1:
        raise ValueError("exponents must be positive")
    wz = max(e1, e2, e3) + 1
    rules = [
        (("z2", "z3", "D"), NCPoly.word(*(("D",) * e1 + ("z1",)))),
        (("z3", "z1", "D"), NCPoly.word(*(("D",) * e2 + ("z2",)))),
        (("z1", "z2", "D"), NCPoly.word(*(("D",) * e3 + ("z3",)))),
    ]
    name = name or f"counterexample_{e1}{e2}{e3}"
    return PresentedRing(
        name,
        ("z1", "z2", "z3", "D"),
        rules,
        weights={"z1": wz, "z2": wz, "z3": wz, "D": 1},
    )


def commutative_polynomials(variables: Sequence[str], name: str | None = None) -> PresentedRing:
    """Q[x1, ..., xn] as a presented ring (rules x_j x_i -> x_i x_j for i < j)."""
    variables = tuple(variables)
    rules = []
    for i, xi in enumerate(variables):
        for xj in variables[i + 1:]:
            rules.append(((xj, xi), NCPoly.word(xi, xj)))
    # precedence with the last variable largest keeps x_j x_i above x_i x_j
    return PresentedRing(
        name or "QQ[" + ",".join(variables) + "]",
        variables,
        rules,
        precedence=tuple(reversed(variables)),
        domain=True,
    )


def free_algebra(generators: Sequence[str], name: str | None = None) -> PresentedRing:
    return PresentedRing(name or "free<" + ",".join(generators) + ">", tuple(generators), [], domain=True)


def truncated_polynomials(var: str = "t", order: int = 3) -> PresentedRing:
    """Q[t]/(t^order), filtered with deg t = -1, so F_{-order} = 0."""
    return PresentedRing(
        f"QQ[{var}]/({var}^{order})",
        (var,),
        [((var,) * order, NCPoly.zero())],
        degrees={var: -1},
    )


def q_plane_truncated(q=DEFAULT_Q) -> PresentedRing:
    """Quantum plane with a central t adjoined and t^2 = 0; deg a = deg b = 0, deg t = -1."""
    q = Fraction(q)
    rules = [
        (("a", "b"), NCPoly.word("b", "a", coeff=q)),
        (("t", "a"), NCPoly.word("a", "t")),
        (("t", "b"), NCPoly.word("b", "t")),
        (("t", "t"), NCPoly.zero()),
    ]
    return PresentedRing(
        "qplane_t2",
        ("a", "b", "t"),
        rules,
        precedence=("t", "a", "b"),
        degrees={"a": 0, "b": 0, "t": -1},
    )
