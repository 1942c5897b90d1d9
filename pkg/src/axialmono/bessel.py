"""Bessel functions of the first and second kind for the orders this
package needs: alpha = k + m/2, i.e. nonnegative integers and
half-integers.

Orders are carried exactly as ``twice_alpha`` so integer and
half-integer cases never suffer float ambiguity.  Evaluation is
delegated to scipy.special; the test suite holds the independent
oracles (an exact-rational ascending series for J, the closed J-based
forms for half-integer Y, and a high-precision limit evaluation for
integer Y) together with the recurrence and derivative identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from scipy import special as _sp

from .errors import DomainError, UnsupportedOrderError

__all__ = ["Order", "bessel_j", "bessel_y", "z_family", "j_values", "y_values"]


@dataclass(frozen=True)
class Order:
    """Bessel order alpha encoded exactly as twice_alpha / 2."""

    twice_alpha: int

    def __post_init__(self):
        if not isinstance(self.twice_alpha, int):
            raise TypeError("twice_alpha must be an int")

    @property
    def alpha(self) -> float:
        return self.twice_alpha / 2

    @property
    def is_integer(self) -> bool:
        return self.twice_alpha % 2 == 0

    def shifted(self, delta: int) -> "Order":
        """Order alpha + delta for integer delta."""
        return Order(self.twice_alpha + 2 * delta)

    @classmethod
    def from_k_m(cls, k: int, m: int) -> "Order":
        """The order k + m/2 used by the closed-form radial profiles."""
        return cls(2 * k + m)

    @classmethod
    def parse(cls, text: str) -> "Order":
        """Accepts '2', '3/2' or '1.5'."""
        frac = Fraction(text)
        if frac.denominator not in (1, 2):
            raise ValueError(f"order {text!r} is neither integer nor half-integer")
        return cls(int(frac * 2))

    def __str__(self):
        if self.is_integer:
            return str(self.twice_alpha // 2)
        return f"{self.twice_alpha}/2"


def _check_order(order: Order) -> Order:
    if not isinstance(order, Order):
        order = Order(int(order) * 2)
    if order.twice_alpha < 0:
        raise UnsupportedOrderError(f"negative order {order} not supported")
    return order


def bessel_j(order: Order, t: float) -> float:
    """J_alpha(t) for t >= 0 (t = 0 by continuity)."""
    order = _check_order(order)
    t = float(t)
    if t < 0:
        raise DomainError(f"bessel_j needs t >= 0, got {t}")
    if t == 0.0:
        return 1.0 if order.twice_alpha == 0 else 0.0
    return float(_sp.jv(order.alpha, t))


def bessel_y(order: Order, t: float) -> float:
    """Y_alpha(t) for strictly positive t."""
    order = _check_order(order)
    t = float(t)
    if t <= 0:
        raise DomainError(f"bessel_y needs t > 0, got {t}")
    return float(_sp.yv(order.alpha, t))


def z_family(kind: str, order: Order, t: float) -> float:
    """Dispatch to J or Y by kind."""
    if kind == "J":
        return bessel_j(order, t)
    if kind == "Y":
        return bessel_y(order, t)
    raise ValueError(f"kind must be 'J' or 'Y', got {kind!r}")


def j_values(order: Order, t):
    """Vectorized J_alpha over an array of strictly positive arguments."""
    import numpy as np

    order = _check_order(order)
    t = np.asarray(t, dtype=np.float64)
    if np.any(t <= 0):
        raise DomainError("j_values needs t > 0 everywhere")
    return _sp.jv(order.alpha, t)


def y_values(order: Order, t):
    """Vectorized Y_alpha over an array of strictly positive arguments."""
    import numpy as np

    order = _check_order(order)
    t = np.asarray(t, dtype=np.float64)
    if np.any(t <= 0):
        raise DomainError("y_values needs t > 0 everywhere")
    return _sp.yv(order.alpha, t)
