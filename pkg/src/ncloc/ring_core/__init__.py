"""Exact ring arithmetic shared by every other module."""

from ..errors import MixedRings, NotInvertible
from .linalg import ColumnEchelon, field_determinant, nullspace, rational_inverse, smith_normal_form, solve_sparse
from .matrices import BlockMatrix, RMatrix, block_inverse, flatten, inverse, unflatten
from .polys import RationalFunction, UPoly, poly_gcd, poly_xgcd
from .rings import (
    QQ,
    ZZ,
    IntegerRing,
    IntegersMod,
    MatrixRing,
    PolynomialRingQ,
    RationalField,
    RationalFunctionField,
    Ring,
    RingElement,
    inv,
)

__all__ = [
    "BlockMatrix", "ColumnEchelon", "IntegerRing", "IntegersMod", "MatrixRing", "MixedRings",
    "NotInvertible", "PolynomialRingQ", "QQ", "RMatrix", "RationalField", "RationalFunction",
    "RationalFunctionField", "Ring", "RingElement", "UPoly", "ZZ", "block_inverse",
    "field_determinant", "flatten", "inv", "inverse", "nullspace", "poly_gcd", "poly_xgcd",
    "rational_inverse", "smith_normal_form", "solve_sparse", "unflatten",
]
