"""Exception hierarchy shared by every module."""

import os


class FurstError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(FurstError, ValueError):
    """Bad arguments: mismatched arities, invalid parameters, malformed input."""


class FieldMismatchError(UsageError):
    """Operands live in different fields."""


class FieldZeroDivisionError(FurstError, ZeroDivisionError):
    """Division by the zero element of a finite field."""


class GuardError(FurstError):
    """A desk-scale enumeration or size guard was exceeded."""


class NotFiniteDimensionalError(FurstError):
    """A quotient failed to become finite-dimensional below the degree cap."""


class PreconditionError(FurstError):
    """A theorem check was called on input that does not meet its hypotheses."""


def guard(value, limit, what):
    """Raise GuardError when ``value`` exceeds ``limit``.

    The environment variable ``FURST_MAX_GUARD`` replaces every default limit
    when set to an integer.
    """
    override = os.environ.get("FURST_MAX_GUARD")
    if override:
        try:
            limit = int(float(override))
        except ValueError:
            raise UsageError(f"FURST_MAX_GUARD must be an integer, got {override!r}")
    if value > limit:
        raise GuardError(f"{what}: {value} exceeds guard {limit} (set FURST_MAX_GUARD to override)")
