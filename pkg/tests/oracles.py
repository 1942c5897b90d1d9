"""Independent reference computations used by the test suite.

Nothing here imports evaluation code from the package under test; each
oracle is a separate computation path so that agreement is meaningful:

* J by its ascending power series in exact rational arithmetic (one
  float conversion at the very end).  Valid for integer orders >= 0 and
  for half-integer orders of either sign; negative half-integer orders
  feed the closed form Y_{n+1/2} = (-1)**(n+1) J_{-n-1/2}.
* Integer-order Y by the defining limit (J_nu cos(nu pi) - J_{-nu}) /
  sin(nu pi) evaluated at nu = n +/- 1e-18 in 60-digit arithmetic and
  averaged (the symmetric average kills the O(delta) term).
* The one-sided axial pair (A, B) by high-order ODE integration of the
  first-order system the pair must satisfy.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "j_series_exact",
    "y_half_integer",
    "y_integer_limit",
    "j_half_closed",
    "y_half_closed",
    "axial_pair_profiles",
]


def _gamma_half_frac(q: int) -> Fraction:
    """Gamma(q + 1/2) / sqrt(pi) as an exact rational, any integer q."""
    if q >= 0:
        return Fraction(math.factorial(2 * q),
                        4 ** q * math.factorial(q))
    p = -q
    return Fraction((-4) ** p * math.factorial(p),
                    math.factorial(2 * p))


def j_series_exact(twice_alpha: int, t: float, terms: int | None = None) -> float:
    """J_alpha(t) by the ascending series, exact until the final float.

    twice_alpha even requires alpha >= 0; odd twice_alpha (half-integer
    order) may be negative.  The float argument is converted exactly to
    a rational, so the only approximation is the series truncation and
    one correctly-rounded conversion at the end.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if terms is None:
        terms = max(60, int(2 * float(t)) + 50)
    half = Fraction(float(t)) / 2
    h2 = half * half
    if twice_alpha % 2 == 0:
        a = twice_alpha // 2
        if a < 0:
            raise ValueError("negative integer orders not supported")
        if half == 0:
            return 1.0 if a == 0 else 0.0
        acc = Fraction(0)
        power = Fraction(1)
        for s in range(terms):
            acc += Fraction((-1) ** s, math.factorial(s) * math.factorial(s + a)) * power
            power *= h2
        return float(acc * half ** a)
    # half-integer order: Gamma(s + alpha + 1) = Gamma((s + q0) + 1/2)
    q0 = (twice_alpha + 1) // 2
    acc = Fraction(0)
    power = Fraction(1)
    for s in range(terms):
        gam = _gamma_half_frac(s + q0)
        acc += Fraction((-1) ** s) / (math.factorial(s) * gam) * power
        power *= h2
    # half ** alpha = half ** ((twice_alpha - 1) // 2) * sqrt(half)
    int_part = (twice_alpha - 1) // 2
    return (float(acc) / math.sqrt(math.pi)
            * float(half ** int_part) * math.sqrt(float(half)))


def y_half_integer(twice_alpha: int, t: float) -> float:
    """Y_{n+1/2}(t) = (-1)**(n+1) J_{-n-1/2}(t), via the exact J series."""
    if twice_alpha % 2 == 0 or twice_alpha < 0:
        raise ValueError("need a positive half-integer order")
    n = (twice_alpha - 1) // 2
    return (-1) ** (n + 1) * j_series_exact(-twice_alpha, t)


def y_integer_limit(n: int, t: float) -> float:
    """Y_n(t) by the defining limit in high-precision arithmetic."""
    import mpmath as mp

    if n < 0:
        raise ValueError("need n >= 0")
    with mp.workdps(60):
        tt = mp.mpf(t)

        def y_of(nu):
            return ((mp.besselj(nu, tt) * mp.cospi(nu) - mp.besselj(-nu, tt))
                    / mp.sinpi(nu))

        delta = mp.mpf(10) ** -18
        return float((y_of(n + delta) + y_of(n - delta)) / 2)


def j_half_closed(twice_alpha: int, t: float) -> float:
    """Trigonometric closed forms for J_{1/2} and J_{3/2} (cross-checks)."""
    if twice_alpha == 1:
        return math.sqrt(2 / (math.pi * t)) * math.sin(t)
    if twice_alpha == 3:
        return math.sqrt(2 / (math.pi * t)) * (math.sin(t) / t - math.cos(t))
    raise ValueError("only orders 1/2 and 3/2 have stored closed forms")


def y_half_closed(twice_alpha: int, t: float) -> float:
    """Trigonometric closed forms for Y_{1/2} and Y_{3/2}."""
    if twice_alpha == 1:
        return -math.sqrt(2 / (math.pi * t)) * math.cos(t)
    if twice_alpha == 3:
        return -math.sqrt(2 / (math.pi * t)) * (math.cos(t) / t + math.sin(t))
    raise ValueError("only orders 1/2 and 3/2 have stored closed forms")


def axial_pair_profiles(k: int, m: int, r_lo: float = 0.4, r_hi: float = 5.5,
                        r0: float = 1.0, init=(1.0, 0.5)):
    """Profiles (A, B) of the one-sided axial pair system, by ODE
    integration of  a' = -b,  b' = a - ((2k+m-1)/r) b  from r0 outward
    in both directions, with A = exp(x0) a(r), B = exp(x0) b(r)."""
    from scipy.integrate import solve_ivp

    c = 2 * k + m - 1

    def rhs(r, y):
        a, b = y
        return [-b, a - c / r * b]

    opts = dict(method="DOP853", rtol=1e-12, atol=1e-14, dense_output=True)
    up = solve_ivp(rhs, (r0, r_hi), list(init), **opts)
    down = solve_ivp(rhs, (r0, r_lo), list(init), **opts)
    if not (up.success and down.success):
        raise RuntimeError("ODE oracle integration failed")

    def pick(r):
        return up.sol(r) if r >= r0 else down.sol(r)

    def profile_a(x0, r):
        return math.exp(x0) * float(pick(r)[0])

    def profile_b(x0, r):
        return math.exp(x0) * float(pick(r)[1])

    return profile_a, profile_b
