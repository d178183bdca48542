"""Exception hierarchy for superstat."""

from __future__ import annotations


class SuperstatError(Exception):
    """Base class for all superstat errors."""


class CapacityError(SuperstatError):
    """A size cap (basis enumeration, brute force, exact mode) was exceeded."""


class PreconditionError(SuperstatError, ValueError):
    """An operation was called outside its admissible parameter range."""


class DomainError(SuperstatError, ValueError):
    """A numerical argument lies outside the domain of the function."""


class DimensionError(SuperstatError, ValueError):
    """Operator and vector live on different Fock spaces."""


class PoleError(SuperstatError, ArithmeticError):
    """A denominator Pochhammer symbol vanished before the series terminated."""


class InexactAdditionError(SuperstatError, ArithmeticError):
    """Two surds with incommensurable radicands cannot be added exactly."""


class ConsistencyError(SuperstatError):
    """Two routes that must agree produced different values."""
