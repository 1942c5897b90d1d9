"""Axial two-sided monogenic machinery: closed-form radial profiles,
residuals of the coupled first-order systems, assembly of the full
function F, numeric Dirac residuals, and grid verification.

The ansatz is

    F(x) = A(x0,r) P + B(x0,r) x P + C(x0,r) P x + D(x0,r) x P x

with P a homogeneous two-sided monogenic l-vector polynomial of degree
k and x the vector variable, r = |x|.  Left and right monogenicity of F
are each equivalent to a four-equation first-order system in (x0, r);
imposing both forces B = C and yields an overdetermined combined system
for the triple (A1, A2, A3) = (A, B=C, D).  With the separable choice
A_j = exp(x0) a_j(r) the combined system has Bessel closed forms.

Residual evaluators exist in two flavors: float callables of (x0, r)
with 5-point central finite differences, and exact x0-power-series
profiles (:class:`ProfileSeries`) where every equation is evaluated in
rational arithmetic with no tolerance at all.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bessel import Order, bessel_j, bessel_y, j_values, y_values
from .clifford import Multivector
from .errors import DomainError
from .kernels import MAX_DIM, gp_floats_batch, tables
from .polynomials import PolyMV
from .series import RadialSeries, lambda_coeff

__all__ = [
    "ClosedFormParams",
    "AxialQuad",
    "AxialTriple",
    "ProfileSeries",
    "lambda_coeff",
    "fd5",
    "a1_closed",
    "a2_closed",
    "a3_closed",
    "closed_profile_triple",
    "closed_profile_quad",
    "residual_axial_left",
    "residual_system_I",
    "residual_system_II",
    "residual_system_combined",
    "residual_system_combined_rel",
    "residual_system_radial",
    "residual_system_radial_rel",
    "residual_system_I_series",
    "residual_system_II_series",
    "residual_system_combined_series",
    "assemble_F",
    "assemble_F_batch",
    "dirac_residual_numeric",
    "dirac_residual_norms_batch",
    "ResidualReport",
    "verify_grid",
    "DIRAC_FD_STEP",
    "RADIAL_FD_STEP",
]

# 5-point stencils have O(h^4) truncation error; these base steps put
# the residual floor near 1e-9 in double precision.
DIRAC_FD_STEP = 1e-3
RADIAL_FD_STEP = 1e-4


def fd5(f, x: float, h: float) -> float:
    """5-point central difference d f / d x at x with step h."""
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def _step(coord: float, base: float) -> float:
    return base * max(1.0, abs(coord))


def _r_step(r: float, base: float) -> float:
    # keep the widest stencil point strictly inside r > 0
    return min(_step(r, base), r / 3.0)


def _check_r(r: float) -> float:
    r = float(r)
    if r <= 0:
        raise DomainError(f"need r > 0, got {r}")
    return r


# ---------------------------------------------------------------------
# closed-form radial profiles
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedFormParams:
    """Parameters (m, k, l, C1, C2) selecting one closed-form solution.

    C1 weights the first-kind branch, C2 the second-kind branch; both
    zero is allowed and gives the zero solution.
    """

    m: int
    k: int
    l: int
    c1: float = 1.0
    c2: float = 0.0

    def __post_init__(self):
        for name in ("m", "k", "l"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an int")
        if not 2 <= self.m <= MAX_DIM:
            raise ValueError(f"m must be in 2..{MAX_DIM}, got {self.m}")
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if not 0 <= self.l <= self.m:
            raise ValueError(f"l must be in 0..{self.m}, got {self.l}")
        object.__setattr__(self, "c1", float(self.c1))
        object.__setattr__(self, "c2", float(self.c2))

    @property
    def order(self) -> Order:
        return Order.from_k_m(self.k, self.m)

    @property
    def lam(self) -> int:
        return lambda_coeff(self.m, self.k, self.l)

    def to_json_dict(self) -> dict:
        return {"m": self.m, "k": self.k, "l": self.l,
                "c1": self.c1, "c2": self.c2}


def _weighted_bessel(order: Order, r: float, c1: float, c2: float) -> float:
    """r**(-alpha) * (c1 J_alpha(r) + c2 Y_alpha(r))."""
    val = 0.0
    if c1:
        val += c1 * bessel_j(order, r)
    if c2:
        val += c2 * bessel_y(order, r)
    if val == 0.0:
        return 0.0
    return r ** (-order.alpha) * val


def a2_closed(p: ClosedFormParams, r: float) -> float:
    """a2(r) = r**-(k+m/2) (C1 J_{k+m/2}(r) + C2 Y_{k+m/2}(r))."""
    r = _check_r(r)
    return _weighted_bessel(p.order, r, p.c1, p.c2)


def a3_closed(p: ClosedFormParams, r: float) -> float:
    """a3(r): same shape as a2 with the order raised by one."""
    r = _check_r(r)
    return _weighted_bessel(p.order.shifted(1), r, p.c1, p.c2)


def a1_closed(p: ClosedFormParams, r: float) -> float:
    """a1 = lambda * a2 - r**2 * a3 with lambda = lambda_coeff(m, k, l)."""
    r = _check_r(r)
    return p.lam * a2_closed(p, r) - r * r * a3_closed(p, r)


def _weighted_bessel_values(order: Order, r: np.ndarray, c1: float, c2: float):
    val = np.zeros_like(r)
    if c1:
        val = val + c1 * j_values(order, r)
    if c2:
        val = val + c2 * y_values(order, r)
    return r ** (-order.alpha) * val


def _closed_profiles_values(p: ClosedFormParams, r: np.ndarray,
                            scale=(1.0, 1.0, 1.0)):
    """Vectorized (a1, a2, a3) at an array of radii, with optional
    per-profile scale factors (fault injection for mutation tests)."""
    a2 = _weighted_bessel_values(p.order, r, p.c1, p.c2)
    a3 = _weighted_bessel_values(p.order.shifted(1), r, p.c1, p.c2)
    a1 = p.lam * a2 - r * r * a3
    return scale[0] * a1, scale[1] * a2, scale[2] * a3


# ---------------------------------------------------------------------
# profile containers
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class AxialQuad:
    """Four real profiles (A, B, C, D) of (x0, r) as float callables."""

    a: object
    b: object
    c: object
    d: object


@dataclass(frozen=True)
class AxialTriple:
    """Three real profiles (A1, A2, A3) of (x0, r) as float callables."""

    a1: object
    a2: object
    a3: object


def closed_profile_triple(p: ClosedFormParams,
                          scale=(1.0, 1.0, 1.0)) -> AxialTriple:
    """The separable profiles A_j(x0, r) = exp(x0) a_j(r)."""
    s1, s2, s3 = (float(s) for s in scale)
    return AxialTriple(
        a1=lambda x0, r: math.exp(x0) * s1 * a1_closed(p, r),
        a2=lambda x0, r: math.exp(x0) * s2 * a2_closed(p, r),
        a3=lambda x0, r: math.exp(x0) * s3 * a3_closed(p, r),
    )


def closed_profile_quad(p: ClosedFormParams,
                        scale=(1.0, 1.0, 1.0)) -> AxialQuad:
    """The same profiles arranged as (A, B, C, D) with B = C."""
    t = closed_profile_triple(p, scale)
    return AxialQuad(a=t.a1, b=t.a2, c=t.a2, d=t.a3)


# ---------------------------------------------------------------------
# float residuals (finite differences)
# ---------------------------------------------------------------------


def _d_x0(g, x0: float, r: float, base: float) -> float:
    return fd5(lambda t: g(t, r), x0, _step(x0, base))


def _d_r(g, x0: float, r: float, base: float) -> float:
    return fd5(lambda t: g(x0, t), r, _r_step(r, base))


def residual_axial_left(a, b, k: int, m: int, at,
                        h: float = RADIAL_FD_STEP):
    """Residuals of the one-sided axial pair system at (x0, r):

        rho1 = d_x0 A - d_r B - ((2k+m-1)/r) B
        rho2 = d_x0 B + d_r A
    """
    x0, r = at
    r = _check_r(r)
    rho1 = _d_x0(a, x0, r, h) - _d_r(b, x0, r, h) - (2 * k + m - 1) / r * b(x0, r)
    rho2 = _d_x0(b, x0, r, h) + _d_r(a, x0, r, h)
    return rho1, rho2


def residual_system_I(q: AxialQuad, m: int, k: int, l: int, at,
                      h: float = RADIAL_FD_STEP):
    """Residuals of the left-monogenicity system at (x0, r), in order:

        d_x0 A - r d_r B - (2k+m) B - (-1)**(l+1) (2l-m) C
        d_x0 B + (1/r) d_r A - (-1)**l (2l-m) D
        d_x0 C - r d_r D - (2k+m+2) D
        d_x0 D + (1/r) d_r C
    """
    x0, r = at
    r = _check_r(r)
    s = 2 * l - m
    sl = (-1) ** l
    e1 = (_d_x0(q.a, x0, r, h) - r * _d_r(q.b, x0, r, h)
          - (2 * k + m) * q.b(x0, r) - (-sl) * s * q.c(x0, r))
    e2 = (_d_x0(q.b, x0, r, h) + _d_r(q.a, x0, r, h) / r
          - sl * s * q.d(x0, r))
    e3 = (_d_x0(q.c, x0, r, h) - r * _d_r(q.d, x0, r, h)
          - (2 * k + m + 2) * q.d(x0, r))
    e4 = _d_x0(q.d, x0, r, h) + _d_r(q.c, x0, r, h) / r
    return e1, e2, e3, e4


def residual_system_II(q: AxialQuad, m: int, k: int, l: int, at,
                       h: float = RADIAL_FD_STEP):
    """Residuals of the right-monogenicity system at (x0, r), in order:

        d_x0 A - r d_r C - (2k+m) C - (-1)**(l+1) (2l-m) B
        d_x0 C + (1/r) d_r A - (-1)**l (2l-m) D
        d_x0 B - r d_r D - (2k+m+2) D
        d_x0 D + (1/r) d_r B
    """
    x0, r = at
    r = _check_r(r)
    s = 2 * l - m
    sl = (-1) ** l
    e1 = (_d_x0(q.a, x0, r, h) - r * _d_r(q.c, x0, r, h)
          - (2 * k + m) * q.c(x0, r) - (-sl) * s * q.b(x0, r))
    e2 = (_d_x0(q.c, x0, r, h) + _d_r(q.a, x0, r, h) / r
          - sl * s * q.d(x0, r))
    e3 = (_d_x0(q.b, x0, r, h) - r * _d_r(q.d, x0, r, h)
          - (2 * k + m + 2) * q.d(x0, r))
    e4 = _d_x0(q.d, x0, r, h) + _d_r(q.b, x0, r, h) / r
    return e1, e2, e3, e4


def _combined_terms(t: AxialTriple, m: int, k: int, l: int, at, h: float):
    x0, r = at
    r = _check_r(r)
    lam = lambda_coeff(m, k, l)
    sl = (-1) ** l
    d0a1 = _d_x0(t.a1, x0, r, h)
    d0a2 = _d_x0(t.a2, x0, r, h)
    d0a3 = _d_x0(t.a3, x0, r, h)
    dra1 = _d_r(t.a1, x0, r, h)
    dra2 = _d_r(t.a2, x0, r, h)
    dra3 = _d_r(t.a3, x0, r, h)
    return (
        (d0a1, -r * dra2, -lam * t.a2(x0, r)),
        (d0a2, dra1 / r, -sl * (2 * l - m) * t.a3(x0, r)),
        (d0a2, -r * dra3, -(2 * k + m + 2) * t.a3(x0, r)),
        (d0a3, dra2 / r),
    )


def residual_system_combined(t: AxialTriple, m: int, k: int, l: int, at,
                             h: float = RADIAL_FD_STEP):
    """Residuals of the combined (overdetermined) system at (x0, r):

        d_x0 A1 - r d_r A2 - lambda A2
        d_x0 A2 + (1/r) d_r A1 - (-1)**l (2l-m) A3
        d_x0 A2 - r d_r A3 - (2k+m+2) A3
        d_x0 A3 + (1/r) d_r A2
    """
    return tuple(sum(terms) for terms in _combined_terms(t, m, k, l, at, h))


def residual_system_combined_rel(t: AxialTriple, m: int, k: int, l: int, at,
                                 h: float = RADIAL_FD_STEP):
    """Combined-system residuals normalized per equation by
    max(1, largest |term|); see residual_system_radial_rel."""
    out = []
    for terms in _combined_terms(t, m, k, l, at, h):
        denom = max(1.0, max(abs(v) for v in terms))
        out.append(sum(terms) / denom)
    return tuple(out)


def _radial_terms(p: ClosedFormParams, r: float, h: float, scale):
    """Per-equation additive terms of the radial system at r.

    Returns four term tuples; each equation's residual is the sum of
    its terms and its natural scale is the largest term magnitude.
    """
    r = _check_r(r)
    s1, s2, s3 = scale
    hr = _r_step(r, h)
    a1 = s1 * a1_closed(p, r)
    a2 = s2 * a2_closed(p, r)
    a3 = s3 * a3_closed(p, r)
    a1p = fd5(lambda t: s1 * a1_closed(p, t), r, hr)
    a2p = fd5(lambda t: s2 * a2_closed(p, t), r, hr)
    a3p = fd5(lambda t: s3 * a3_closed(p, t), r, hr)
    lam = p.lam
    sl = (-1) ** p.l
    return (
        (a1, -r * a2p, -lam * a2),
        (a2, a1p / r, -sl * (2 * p.l - p.m) * a3),
        (a2, -r * a3p, -(2 * p.k + p.m + 2) * a3),
        (a3, a2p / r),
    )


def residual_system_radial(p: ClosedFormParams, r: float,
                           h: float = RADIAL_FD_STEP,
                           scale=(1.0, 1.0, 1.0)):
    """Residuals of the radial system obtained from the separable ansatz:

        a1 - r a2' - lambda a2
        a2 + a1'/r - (-1)**l (2l-m) a3
        a2 - r a3' - (2k+m+2) a3
        a3 + a2'/r

    Derivatives by 5-point central differences.
    """
    return tuple(sum(terms) for terms in _radial_terms(p, r, h, scale))


def residual_system_radial_rel(p: ClosedFormParams, r: float,
                               h: float = RADIAL_FD_STEP,
                               scale=(1.0, 1.0, 1.0)):
    """Radial-system residuals normalized per equation by
    max(1, largest |term|).

    Equal to the raw residuals whenever every term is O(1); for
    second-kind profiles at high order the terms reach 1e4..1e5 near
    r = 1/2 and the double-precision FD floor scales with them, so the
    normalized quantity is the meaningful accuracy measure.
    """
    out = []
    for terms in _radial_terms(p, r, h, scale):
        denom = max(1.0, max(abs(t) for t in terms))
        out.append(sum(terms) / denom)
    return tuple(out)


# ---------------------------------------------------------------------
# exact series profiles
# ---------------------------------------------------------------------


class ProfileSeries:
    """Profile of (x0, r) as a finite x0-power series with exact radial
    rows: sum_{n < nrows} x0**n / n! * rows[n](r).

    All operations are exact; d_x0 drops the last row (its successor is
    unknown), so equality checks compare on the common row range.
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(rows)
        if not rows:
            raise ValueError("need at least one row")
        for row in rows:
            if not isinstance(row, RadialSeries):
                raise TypeError("rows must be RadialSeries")
        self.rows = rows

    @classmethod
    def from_table(cls, table: dict, j: int, n_max: int) -> "ProfileSeries":
        """Extract profile j from a series-solver table."""
        return cls(table[(j, n)] for n in range(n_max + 1))

    @classmethod
    def constant(cls, value, nrows: int = 1, trunc: int = 0) -> "ProfileSeries":
        rows = [RadialSeries.constant(value, trunc=trunc)]
        rows += [RadialSeries.zero(trunc=trunc) for _ in range(nrows - 1)]
        return cls(rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return all(row.is_zero() for row in self.rows)

    def d_x0(self) -> "ProfileSeries":
        if self.nrows < 2:
            raise ValueError("cannot differentiate a single-row profile in x0")
        return ProfileSeries(self.rows[1:])

    def d_r(self) -> "ProfileSeries":
        return ProfileSeries(row.derivative() for row in self.rows)

    def div_r(self) -> "ProfileSeries":
        return ProfileSeries(row.div_r() for row in self.rows)

    def mul_r(self) -> "ProfileSeries":
        return ProfileSeries(row.mul_r() for row in self.rows)

    def scale(self, s) -> "ProfileSeries":
        return ProfileSeries(row.scale(s) for row in self.rows)

    def __add__(self, other):
        if not isinstance(other, ProfileSeries):
            return NotImplemented
        n = min(self.nrows, other.nrows)
        return ProfileSeries(self.rows[i] + other.rows[i] for i in range(n))

    def __sub__(self, other):
        if not isinstance(other, ProfileSeries):
            return NotImplemented
        n = min(self.nrows, other.nrows)
        return ProfileSeries(self.rows[i] - other.rows[i] for i in range(n))

    def __neg__(self):
        return ProfileSeries(-row for row in self.rows)

    def add_const(self, value) -> "ProfileSeries":
        """Add a constant function of (x0, r): only row 0 changes."""
        rows = list(self.rows)
        rows[0] = rows[0] + RadialSeries.constant(value, trunc=rows[0].trunc)
        return ProfileSeries(rows)

    def evaluate(self, x0: float, r: float) -> float:
        acc = 0.0
        for n, row in enumerate(self.rows):
            acc += float(x0) ** n / math.factorial(n) * row.evaluate(float(r))
        return acc

    def __eq__(self, other):
        if not isinstance(other, ProfileSeries):
            return NotImplemented
        return self.rows == other.rows

    def __repr__(self):
        return f"ProfileSeries({self.nrows} rows)"


def residual_system_I_series(a: ProfileSeries, b: ProfileSeries,
                             c: ProfileSeries, d: ProfileSeries,
                             m: int, k: int, l: int):
    """Exact residual profiles of the left-monogenicity system."""
    s = 2 * l - m
    sl = (-1) ** l
    e1 = a.d_x0() - b.d_r().mul_r() - b.scale(2 * k + m) - c.scale(-sl * s)
    e2 = b.d_x0() + a.d_r().div_r() - d.scale(sl * s)
    e3 = c.d_x0() - d.d_r().mul_r() - d.scale(2 * k + m + 2)
    e4 = d.d_x0() + c.d_r().div_r()
    return e1, e2, e3, e4


def residual_system_II_series(a: ProfileSeries, b: ProfileSeries,
                              c: ProfileSeries, d: ProfileSeries,
                              m: int, k: int, l: int):
    """Exact residual profiles of the right-monogenicity system."""
    s = 2 * l - m
    sl = (-1) ** l
    e1 = a.d_x0() - c.d_r().mul_r() - c.scale(2 * k + m) - b.scale(-sl * s)
    e2 = c.d_x0() + a.d_r().div_r() - d.scale(sl * s)
    e3 = b.d_x0() - d.d_r().mul_r() - d.scale(2 * k + m + 2)
    e4 = d.d_x0() + b.d_r().div_r()
    return e1, e2, e3, e4


def residual_system_combined_series(a1: ProfileSeries, a2: ProfileSeries,
                                    a3: ProfileSeries,
                                    m: int, k: int, l: int):
    """Exact residual profiles of the combined system."""
    lam = lambda_coeff(m, k, l)
    sl = (-1) ** l
    e1 = a1.d_x0() - a2.d_r().mul_r() - a2.scale(lam)
    e2 = a2.d_x0() + a1.d_r().div_r() - a3.scale(sl * (2 * l - m))
    e3 = a2.d_x0() - a3.d_r().mul_r() - a3.scale(2 * k + m + 2)
    e4 = a3.d_x0() + a2.d_r().div_r()
    return e1, e2, e3, e4


# ---------------------------------------------------------------------
# assembly of F
# ---------------------------------------------------------------------


def _check_inner(p: ClosedFormParams, inner: PolyMV):
    if inner.m != p.m:
        raise ValueError(f"inner polynomial has m={inner.m}, expected {p.m}")
    if inner.is_zero():
        raise ValueError("inner polynomial must be nonzero")
    if not inner.is_homogeneous(p.k):
        raise ValueError(f"inner polynomial is not homogeneous of degree {p.k}")
    if not inner.is_grade_pure(p.l):
        raise ValueError(f"inner polynomial is not {p.l}-vector valued")


def assemble_F(p: ClosedFormParams, inner: PolyMV, x,
               scale=(1.0, 1.0, 1.0)) -> Multivector:
    """Evaluate F = exp(x0) (a1 P + a2 x P + a2 P x + a3 x P x) at the
    point x = (x0, x1, ..., xm); float multivector result.

    ``scale`` multiplies (a1, a2, a3) individually; (1,1,1) is the true
    solution, anything else is deliberate fault injection.
    """
    _check_inner(p, inner)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (p.m + 1,):
        raise ValueError(f"need a point of length {p.m + 1}")
    xv = x[1:]
    r = float(np.linalg.norm(xv))
    if r == 0.0:
        raise DomainError("F is undefined on the axis x_vec = 0")
    s1, s2, s3 = scale
    a1 = s1 * a1_closed(p, r)
    a2 = s2 * a2_closed(p, r)
    a3 = s3 * a3_closed(p, r)
    pv = inner.evaluate(xv)
    xm = Multivector.from_vector(p.m, [float(c) for c in xv], exact=False)
    xp = xm * pv
    px = pv * xm
    xpx = xp * xm
    out = pv * a1 + xp * a2 + px * a2 + xpx * a3
    return out * math.exp(float(x[0]))


def assemble_F_batch(p: ClosedFormParams, inner: PolyMV, points,
                     scale=(1.0, 1.0, 1.0)) -> np.ndarray:
    """Vectorized assemble_F over (B, m+1) points; (B, 2**m) output."""
    _check_inner(p, inner)
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != p.m + 1:
        raise ValueError(f"need points of shape (B, {p.m + 1})")
    xv = points[:, 1:]
    r = np.linalg.norm(xv, axis=1)
    if np.any(r == 0.0):
        raise DomainError("F is undefined on the axis x_vec = 0")
    a1, a2, a3 = _closed_profiles_values(p, r, scale)
    tab = tables(p.m)
    pv = inner.evaluate_batch(xv)
    xm = np.zeros_like(pv)
    for j in range(p.m):
        xm[:, 1 << j] = xv[:, j]
    xp = gp_floats_batch(xm, pv, tab)
    px = gp_floats_batch(pv, xm, tab)
    xpx = gp_floats_batch(xp, xm, tab)
    out = a1[:, None] * pv + a2[:, None] * (xp + px) + a3[:, None] * xpx
    return np.exp(points[:, 0])[:, None] * out


# ---------------------------------------------------------------------
# numeric Dirac residuals
# ---------------------------------------------------------------------


def dirac_residual_numeric(evaluator, x, h: float = DIRAC_FD_STEP):
    """Left and right generalized Cauchy-Riemann residuals at a point.

    evaluator maps a point of R^{m+1} to a float Multivector; partials
    are 5-point central differences with per-axis step h*max(1,|x_i|).

        left  = d_x0 F + sum_j e_j (d_xj F)
        right = d_x0 F + sum_j (d_xj F) e_j
    """
    x = np.asarray(x, dtype=np.float64)
    partials = []
    for i in range(x.shape[0]):
        hi = _step(x[i], h)
        shifts = []
        for off in (-2.0, -1.0, 1.0, 2.0):
            xs = x.copy()
            xs[i] += off * hi
            shifts.append(evaluator(xs))
        d = (shifts[0] - shifts[1] * 8.0 + shifts[2] * 8.0 - shifts[3]) * (1.0 / (12 * hi))
        partials.append(d)
    m = partials[0].m
    left = partials[0]
    right = partials[0]
    for j in range(1, len(partials)):
        ej = Multivector.generator(m, j, exact=False)
        left = left + ej * partials[j]
        right = right + partials[j] * ej
    return left, right


def dirac_residual_norms_batch(p: ClosedFormParams, inner: PolyMV, points,
                               h: float = DIRAC_FD_STEP,
                               scale=(1.0, 1.0, 1.0)):
    """Per-point (left_norm, right_norm, f_norm) over a batch of points.

    The whole 5-point stencil across all axes is evaluated as one large
    batch; this is the hot path of grid verification.
    """
    points = np.asarray(points, dtype=np.float64)
    npts, ncoord = points.shape
    m = p.m
    tab = tables(m)
    steps = h * np.maximum(1.0, np.abs(points))  # (B, m+1)
    offsets = (-2.0, -1.0, 1.0, 2.0)
    stencil = []
    for i in range(ncoord):
        for off in offsets:
            shifted = points.copy()
            shifted[:, i] += off * steps[:, i]
            stencil.append(shifted)
    big = np.concatenate(stencil, axis=0)
    vals = assemble_F_batch(p, inner, big, scale)
    vals = vals.reshape(ncoord, len(offsets), npts, -1)
    # (f(-2h) - 8 f(-h) + 8 f(h) - f(2h)) / (12 h), per axis
    derivs = (vals[:, 0] - 8.0 * vals[:, 1] + 8.0 * vals[:, 2] - vals[:, 3])
    derivs = derivs / (12.0 * steps.T[:, :, None])
    left = derivs[0].copy()
    right = derivs[0].copy()
    for j in range(m):
        ej = np.zeros((npts, 1 << m))
        ej[:, 1 << j] = 1.0
        left = left + gp_floats_batch(ej, derivs[j + 1], tab)
        right = right + gp_floats_batch(derivs[j + 1], ej, tab)
    f0 = assemble_F_batch(p, inner, points, scale)
    return (np.linalg.norm(left, axis=1),
            np.linalg.norm(right, axis=1),
            np.linalg.norm(f0, axis=1))


# ---------------------------------------------------------------------
# grid verification
# ---------------------------------------------------------------------


@dataclass
class ResidualReport:
    """Residual summary of a verification sweep; JSON/CSV serializable."""

    params: dict
    grid: dict
    threshold: float
    system_threshold: float
    n_elements: int
    max_left: float
    max_right: float
    mean_left: float
    mean_right: float
    max_system: float
    mean_system: float
    passed: bool
    points: list
    system_points: list

    def to_json_dict(self) -> dict:
        return {
            "params": self.params,
            "grid": self.grid,
            "threshold": self.threshold,
            "system_threshold": self.system_threshold,
            "n_elements": self.n_elements,
            "max_left": self.max_left,
            "max_right": self.max_right,
            "mean_left": self.mean_left,
            "mean_right": self.mean_right,
            "max_system": self.max_system,
            "mean_system": self.mean_system,
            "passed": self.passed,
            "points": self.points,
            "system_points": self.system_points,
        }

    def to_csv(self) -> str:
        from ._jsonfmt import format_csv

        header = ["elem", "x0"]
        mdim = self.params.get("m", 0)
        header += [f"x{j}" for j in range(1, mdim + 1)]
        header += ["fnorm", "left", "right"]
        rows = []
        for pt in self.points:
            row = [pt["elem"], *pt["x"], pt["fnorm"], pt["left"], pt["right"]]
            rows.append(row)
        return format_csv(header, rows)


def _grid_points(x0_range, r_range, nx: int, nr: int):
    if nx < 2 or nr < 2:
        raise ValueError("grid counts must be >= 2")
    x0_lo, x0_hi = (float(v) for v in x0_range)
    r_lo, r_hi = (float(v) for v in r_range)
    if r_lo <= 0:
        raise ValueError(f"r range must stay in r > 0, got r_min = {r_lo}")
    if x0_hi < x0_lo or r_hi < r_lo:
        raise ValueError("ranges must be increasing")
    x0s = np.linspace(x0_lo, x0_hi, nx)
    rs = np.linspace(r_lo, r_hi, nr)
    return x0s, rs


def _directions(m: int, count: int, seed: int = 0) -> np.ndarray:
    """Deterministic generic unit vectors in R^m, one per grid point."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((count, m))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def verify_grid(p: ClosedFormParams, elements, x0_range, r_range,
                nx: int, nr: int, h: float = DIRAC_FD_STEP,
                threshold: float = 1e-6, system_threshold: float = 1e-6,
                scale=(1.0, 1.0, 1.0), threads: int | None = None,
                keep_points: bool = True) -> ResidualReport:
    """Residual sweep of the assembled F for every basis element over an
    (x0, r) grid; each grid point is lifted to R^{m+1} along a fixed
    pseudo-random direction (seeded, so reports are reproducible).

    Dirac residual norms are relative to max(1, |F|) at the point;
    system residuals are absolute values of the combined-system
    equations on the separable closed-form profiles.
    """
    x0s, rs = _grid_points(x0_range, r_range, nx, nr)
    pairs = [(x0, r) for x0 in x0s for r in rs]
    dirs = _directions(p.m, len(pairs))
    points = np.array([[x0, *(r * u)] for (x0, r), u in zip(pairs, dirs)])

    elements = list(elements)
    if threads is None:
        threads = int(os.environ.get("AXIAL_THREADS", "1") or "1")
    threads = max(1, threads)

    def run_element(inner):
        ln, rn, fn = dirac_residual_norms_batch(p, inner, points, h, scale)
        denom = np.maximum(1.0, fn)
        return ln / denom, rn / denom, fn

    if elements:
        if threads > 1 and len(elements) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(run_element, elements))
        else:
            results = [run_element(inner) for inner in elements]
    else:
        results = []

    point_records = []
    all_left, all_right = [], []
    for idx, (ln, rn, fn) in enumerate(results):
        all_left.append(ln)
        all_right.append(rn)
        if keep_points:
            for (pt, lv, rv, fv) in zip(points, ln, rn, fn):
                point_records.append({
                    "elem": idx,
                    "x": [float(c) for c in pt],
                    "fnorm": float(fv),
                    "left": float(lv),
                    "right": float(rv),
                })

    triple = closed_profile_triple(p, scale)
    system_records = []
    sys_vals = []
    for x0, r in pairs:
        res = residual_system_combined_rel(triple, p.m, p.k, p.l, (x0, r))
        res = [abs(float(v)) for v in res]
        sys_vals.extend(res)
        if keep_points:
            system_records.append({"x0": float(x0), "r": float(r),
                                   "system": res})

    if results:
        left_cat = np.concatenate(all_left)
        right_cat = np.concatenate(all_right)
        max_left = float(left_cat.max())
        max_right = float(right_cat.max())
        mean_left = float(left_cat.mean())
        mean_right = float(right_cat.mean())
    else:
        max_left = max_right = mean_left = mean_right = 0.0
    max_system = float(max(sys_vals)) if sys_vals else 0.0
    mean_system = float(np.mean(sys_vals)) if sys_vals else 0.0
    passed = (max_left <= threshold and max_right <= threshold
              and max_system <= system_threshold)

    return ResidualReport(
        params=p.to_json_dict(),
        grid={"x0_range": [float(x0s[0]), float(x0s[-1])],
              "r_range": [float(rs[0]), float(rs[-1])],
              "nx": int(nx), "nr": int(nr), "h": float(h)},
        threshold=float(threshold),
        system_threshold=float(system_threshold),
        n_elements=len(elements),
        max_left=max_left,
        max_right=max_right,
        mean_left=mean_left,
        mean_right=mean_right,
        max_system=max_system,
        mean_system=mean_system,
        passed=bool(passed),
        points=point_records,
        system_points=system_records,
    )
