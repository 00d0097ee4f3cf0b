"""Exception types shared across the package."""

from __future__ import annotations


class NclocError(Exception):
    """Base class for all package errors."""


class NotInvertible(NclocError):
    pass


class MixedRings(NclocError):
    """Raised when two operands live in different rings."""


class NonTerminating(NclocError):
    """A normal form computation exceeded its rewrite step budget."""


class BadOrder(NclocError):
    """A rewrite rule does not decrease the declared word order."""


class NoWitnessWithinBound(NclocError):
    """Bounded search found nothing.  This is not a disproof."""

    def __init__(self, message: str, bound: int):
        super().__init__(f"{message} (bound {bound})")
        self.bound = bound


class Inconclusive(NclocError):
    def __init__(self, message: str, bound: int):
        super().__init__(f"{message} (bound {bound})")
        self.bound = bound


class Undefined(NclocError):
    """A quasideterminant whose defining formula has no value."""


class QDetMissing(NclocError):
    def __init__(self, i, j):
        super().__init__(f"quasideterminant |A|_{{{i},{j}}} is missing or not invertible")
        self.i = i
        self.j = j


class LevelFailure(NclocError):
    def __init__(self, level: int, bound: int):
        super().__init__(f"no filtered Ore witness at level {level} (bound {bound})")
        self.level = level
        self.bound = bound


class NotConservative(NclocError):
    pass


class TargetNotInverting(NclocError):
    pass
