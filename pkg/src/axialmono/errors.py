"""Shared exception types."""


class DomainError(ValueError):
    """Argument outside the mathematical domain (e.g. r <= 0)."""


class UnsupportedOrderError(ValueError):
    """Bessel order outside the supported range (negative orders)."""


class ParityError(ValueError):
    """Radial series violates the even/odd exponent discipline."""


class TruncationError(ValueError):
    """Series truncation too short for the requested operation."""


class IntegralityError(ArithmeticError):
    """A coefficient that must be an integer is not one."""
