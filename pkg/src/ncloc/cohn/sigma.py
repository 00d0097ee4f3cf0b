"""Sets of square matrices closed under upper block-triangular composition.

Membership in the multiplicative closure of the generators is tested by
splitting a matrix into upper block-triangular form recursively, up to
``closure_depth`` splits.  Enumeration of members uses off-diagonal
blocks from a small list of filler values.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping, Sequence

from ..ring_core.matrices import RMatrix
from ..ring_core.rings import Ring, RingElement
from ..rewrite.ncpoly import NCPoly, as_poly
from ..rewrite.system import PresentedRing


def _plain(M: RMatrix) -> RMatrix:
    return RMatrix(M.ring, M.rows, M.cols, M.entries)


def block_upper(A: RMatrix, C: RMatrix | None, B: RMatrix) -> RMatrix:
    """[[A, C], [0, B]] with default labels."""
    ring = A.ring
    n, m = A.rows, B.rows
    if C is None:
        C = RMatrix.zeros(ring, n, m)
    if (C.rows, C.cols) != (n, m):
        raise ValueError("off-diagonal block has the wrong shape")
    rows = []
    for p in range(n):
        rows.append([A.at(p, q) for q in range(n)] + [C.at(p, q) for q in range(m)])
    for p in range(m):
        rows.append([ring.zero()] * n + [B.at(p, q) for q in range(m)])
    return RMatrix(ring, n + m, n + m, tuple(e for r in rows for e in r))


def diag_blocks(*blocks: RMatrix) -> RMatrix:
    out = blocks[0]
    for b in blocks[1:]:
        out = block_upper(out, None, b)
    return out


def identity(ring: Ring, n: int) -> RMatrix:
    return RMatrix.identity(ring, n)


class MatrixSigma:
    """Generators of an upper multiplicative set of matrices over ``base``."""

    def __init__(self, base: Ring, generators: Sequence, closure_depth: int = 3, name: str | None = None):
        self.base = base
        gens = []
        for g in generators:
            if isinstance(g, RMatrix):
                M = g
            else:
                M = RMatrix.from_rows(base, g)
            if not M.is_square:
                raise ValueError("Sigma generators must be square")
            if M.ring != base:
                raise ValueError("generator over a different ring")
            gens.append(_plain(M))
        self.generators = tuple(gens)
        self.closure_depth = closure_depth
        self.name = name or "Sigma{" + "; ".join(str(g) for g in self.generators) + "}"

    def _is_basic(self, M: RMatrix) -> bool:
        M = _plain(M)
        return M == identity(self.base, M.rows) or any(
            (g.rows == M.rows and g == M) for g in self.generators
        )

    def contains(self, M: RMatrix, depth: int | None = None) -> bool:
        """Membership, using at most ``depth`` block splits (default closure_depth)."""
        if not M.is_square:
            return False
        depth = self.closure_depth if depth is None else depth
        if self._is_basic(M):
            return True
        if depth <= 0:
            return False
        M = _plain(M)
        n = M.rows
        for k in range(1, n):
            lower_left = all(M.at(p, q).is_zero() for p in range(k, n) for q in range(k))
            if not lower_left:
                continue
            A = M.submatrix(range(1, k + 1), range(1, k + 1))
            B = M.submatrix(range(k + 1, n + 1), range(k + 1, n + 1))
            if self.contains(A, depth - 1) and self.contains(B, depth - 1):
                return True
        return False

    def members(self, depth: int | None = None, max_size: int = 4, fillers: Sequence = (0,)) -> list[RMatrix]:
        """Members of size <= max_size built with at most ``depth`` compositions.

        Off-diagonal blocks take every combination of the filler values.
        """
        depth = self.closure_depth if depth is None else depth
        base = self.base
        seen: dict = {}

        def add(M):
            seen.setdefault(M, None)

        add(identity(base, 1))
        for g in self.generators:
            if g.rows <= max_size:
                add(g)
        for _ in range(depth):
            current = list(seen)
            for A in current:
                for B in current:
                    n, m = A.rows, B.rows
                    if n + m > max_size:
                        continue
                    for vals in product(fillers, repeat=n * m):
                        C = RMatrix(base, n, m, tuple(base(v) for v in vals))
                        add(block_upper(A, C, B))
            if len(seen) == len(current):
                break
        return list(seen)


class EvaluationMap:
    """A ring map f defined by the images of generators (or of the variable).

    Sources are presented rings, ZZ, QQ or QQ[x]; the target is any ring
    of the package.  ``apply`` works on payload values and RingElements.
    """

    def __init__(self, source: Ring, target: Ring, images: Mapping[str, object] | None = None):
        self.source = source
        self.target = target
        self.images = {k: target(v) if not isinstance(v, RingElement) else v for k, v in (images or {}).items()}

    def _scalar(self, c) -> RingElement:
        return self.target(c)

    def apply(self, x) -> RingElement:
        if isinstance(x, RingElement):
            x = x.value
        T = self.target
        if isinstance(self.source, PresentedRing):
            p = as_poly(x)
            acc = T.zero()
            for w, c in p.items():
                term = self._scalar(c)
                for g in w:
                    term = term * self.images[g]
                acc = acc + term
            return acc
        if hasattr(x, "coeffs"):     # UPoly
            var = self.images.get(x.var)
            acc = T.zero()
            power = T.one()
            for c in x.coeffs:
                acc = acc + self._scalar(c) * power
                power = power * var if var is not None else power
            return acc
        return self._scalar(x)

    def apply_matrix(self, A: RMatrix) -> RMatrix:
        return RMatrix(self.target, A.rows, A.cols, tuple(self.apply(e) for e in A.entries))

    def respects(self, relations: Iterable) -> bool:
        """All given relations (source elements meant to be zero) map to zero."""
        return all(self.apply(r).is_zero() for r in relations)

    def respects_presentation(self) -> bool:
        if not isinstance(self.source, PresentedRing):
            return True
        return self.respects(NCPoly.word(*r.lead) - r.replacement for r in self.source.system.rules)
