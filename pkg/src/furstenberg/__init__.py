"""Exact finite-field algebra for Furstenberg-set dimension bounds."""

from .errors import (
    FieldMismatchError,
    FieldZeroDivisionError,
    FurstError,
    GuardError,
    NotFiniteDimensionalError,
    PreconditionError,
    UsageError,
)
from .field import FieldElement, FieldSpec, extend, extension_for, field_make, parse_field
from .polyring import Polynomial, parse_polynomial
from .zerodim import PointSet, QuotientAlgebra, hd_algebra, quotient_dim, vanishing_algebra

__all__ = [
    "FieldElement", "FieldSpec", "FieldMismatchError", "FieldZeroDivisionError", "FurstError",
    "GuardError", "NotFiniteDimensionalError", "PointSet", "Polynomial", "PreconditionError",
    "QuotientAlgebra", "UsageError", "extend", "extension_for", "field_make", "hd_algebra",
    "parse_field", "parse_polynomial", "quotient_dim", "vanishing_algebra",
]
