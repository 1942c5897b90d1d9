"""Exact radial power series and the power-series solver for the
coupled first-order system of the axial profiles.

A :class:`RadialSeries` is a finite series in r with exact rational
coefficients and a faithfulness bound ``trunc``: coefficients of
exponents up to ``trunc`` are meaningful, anything higher is dropped.
Differentiation lowers the bound by one, multiplying by r raises it,
dividing by r lowers it; no rounding ever occurs.

The solver iterates the three recurrences

    A_{2,n+1} = -A_{2,n-1}'' - ((2k+m+1)/r) A_{2,n-1}'
    A_{3,n+1} = -(1/r) A_{2,n}'
    A_{1,n+1} = r A_{2,n}' + lambda * A_{2,n}

starting from the rows at n = 0 plus the extra seed A_{2,1}, and the
x0-profile is recovered as sum_n x0^n/n! * A_{j,n}(r).  The same
recurrence applied formally to an unevaluated seed yields the integer
coefficient table of the even rows.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import IntegralityError, ParityError, TruncationError

__all__ = [
    "RadialSeries",
    "lambda_coeff",
    "series_step",
    "series_solve",
    "evaluate_table",
    "cnj_extract",
    "bessel_seed_series",
    "seed_scale",
]


def lambda_coeff(m: int, k: int, l: int) -> int:
    """Coupling coefficient (2k+m) + (-1)**(l+1) * (2l-m) of the first equation."""
    return (2 * k + m) + (-1) ** (l + 1) * (2 * l - m)


class RadialSeries:
    """Finite power series in r with exact rational coefficients."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs: dict, trunc: int | None = None):
        clean = {}
        for e, c in coeffs.items():
            e = int(e)
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if not isinstance(c, Rational):
                raise TypeError("coefficients must be rational")
            if c:
                clean[e] = Fraction(c)
        if trunc is None:
            trunc = max(clean, default=0)
        if trunc < 0:
            raise TruncationError("series truncation exhausted")
        self.coeffs = {e: c for e, c in clean.items() if e <= trunc}
        self.trunc = int(trunc)

    @classmethod
    def zero(cls, trunc: int = 0) -> "RadialSeries":
        return cls({}, trunc=trunc)

    @classmethod
    def constant(cls, value, trunc: int = 0) -> "RadialSeries":
        return cls({0: Fraction(value)}, trunc=trunc)

    def is_zero(self) -> bool:
        return not self.coeffs

    def parity(self) -> str:
        """'even', 'odd', 'zero' or 'mixed' exponent support."""
        if not self.coeffs:
            return "zero"
        residues = {e % 2 for e in self.coeffs}
        if residues == {0}:
            return "even"
        if residues == {1}:
            return "odd"
        return "mixed"

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RadialSeries):
            return NotImplemented
        trunc = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return RadialSeries(out, trunc=trunc)

    def __sub__(self, other):
        if not isinstance(other, RadialSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return RadialSeries({e: -c for e, c in self.coeffs.items()}, trunc=self.trunc)

    def scale(self, s) -> "RadialSeries":
        return RadialSeries({e: c * Fraction(s) for e, c in self.coeffs.items()},
                            trunc=self.trunc)

    def __eq__(self, other):
        if not isinstance(other, RadialSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return f"RadialSeries(0; trunc={self.trunc})"
        body = " + ".join(f"{c}*r^{e}" for e, c in sorted(self.coeffs.items()))
        return f"RadialSeries({body}; trunc={self.trunc})"

    # -- calculus -----------------------------------------------------

    def derivative(self) -> "RadialSeries":
        return RadialSeries({e - 1: c * e for e, c in self.coeffs.items() if e},
                            trunc=self.trunc - 1)

    def div_r(self) -> "RadialSeries":
        """Divide by r; requires no constant term."""
        if 0 in self.coeffs:
            raise ParityError("cannot divide a series with a constant term by r")
        return RadialSeries({e - 1: c for e, c in self.coeffs.items()},
                            trunc=self.trunc - 1)

    def mul_r(self) -> "RadialSeries":
        return RadialSeries({e + 1: c for e, c in self.coeffs.items()},
                            trunc=self.trunc + 1)

    def restrict(self, trunc: int) -> "RadialSeries":
        return RadialSeries(self.coeffs, trunc=min(self.trunc, trunc))

    # -- evaluation ---------------------------------------------------

    def evaluate(self, r):
        """Evaluate at r; exact when r is rational, float otherwise."""
        if isinstance(r, Rational):
            r = Fraction(r)
            return sum((c * r ** e for e, c in self.coeffs.items()), Fraction(0))
        r = float(r)
        return float(sum(float(c) * r ** e for e, c in sorted(self.coeffs.items())))

    # -- serialization ------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "trunc": self.trunc,
            "coeffs": {str(e): str(self.coeffs[e]) for e in sorted(self.coeffs)},
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "RadialSeries":
        return cls({int(e): Fraction(c) for e, c in d["coeffs"].items()},
                   trunc=int(d["trunc"]))


def _require_even(s: RadialSeries, what: str):
    if s.parity() not in ("even", "zero"):
        raise ParityError(f"{what} must be an even series, got {s.parity()}")


def _a2_advance(a2_prev: RadialSeries, m: int, k: int) -> RadialSeries:
    c = 2 * k + m + 1
    d1 = a2_prev.derivative()
    return (-d1.derivative()) + d1.div_r().scale(-c)


def _a3_from(a2_curr: RadialSeries) -> RadialSeries:
    return a2_curr.derivative().div_r().scale(-1)


def _a1_from(a2_curr: RadialSeries, m: int, k: int, l: int) -> RadialSeries:
    return a2_curr.derivative().mul_r() + a2_curr.scale(lambda_coeff(m, k, l))


def series_step(a2_prev: RadialSeries, a2_curr: RadialSeries,
                m: int, k: int, l: int):
    """One recurrence step: rows (n-1, n) of A_2 give row n+1 of all three.

    Returns ``(A_{1,n+1}, A_{2,n+1}, A_{3,n+1})``.
    """
    _require_even(a2_prev, "A_{2,n-1}")
    _require_even(a2_curr, "A_{2,n}")
    return (
        _a1_from(a2_curr, m, k, l),
        _a2_advance(a2_prev, m, k),
        _a3_from(a2_curr),
    )


def series_solve(a1_0: RadialSeries, a2_0: RadialSeries, a3_0: RadialSeries,
                 a2_1: RadialSeries, n_steps: int, m: int, k: int, l: int) -> dict:
    """Full coefficient table {(j, n): A_{j,n}} for n <= n_steps.

    Seeds are the n = 0 rows of all three profiles plus the extra
    A_{2,1} row demanded by the second-order recurrence in A_2.
    """
    if n_steps < 1:
        raise ValueError("need at least one step")
    needed = 2 * n_steps + 2
    for name, s in (("A_{2,0}", a2_0), ("A_{2,1}", a2_1)):
        if s.trunc < needed:
            raise TruncationError(
                f"{name} truncation {s.trunc} too short for {n_steps} steps "
                f"(need >= {needed})")
    _require_even(a2_0, "A_{2,0}")
    _require_even(a2_1, "A_{2,1}")
    table = {(1, 0): a1_0, (2, 0): a2_0, (3, 0): a3_0, (2, 1): a2_1}
    table[(1, 1)] = _a1_from(a2_0, m, k, l)
    table[(3, 1)] = _a3_from(a2_0)
    for n in range(1, n_steps):
        a1n, a2n, a3n = series_step(table[(2, n - 1)], table[(2, n)], m, k, l)
        table[(1, n + 1)] = a1n
        table[(2, n + 1)] = a2n
        table[(3, n + 1)] = a3n
    return table


def evaluate_table(table: dict, n_steps: int, x0, r):
    """Partial sums sum_{n<=N} x0^n/n! A_{j,n}(r); returns (F1, F2, F3).

    Exact when both arguments are rational.
    """
    exact = isinstance(x0, Rational) and isinstance(r, Rational)
    out = []
    for j in (1, 2, 3):
        if exact:
            acc = Fraction(0)
            for n in range(n_steps + 1):
                acc += Fraction(x0) ** n / math.factorial(n) * table[(j, n)].evaluate(Fraction(r))
        else:
            acc = 0.0
            for n in range(n_steps + 1):
                acc += float(x0) ** n / math.factorial(n) * table[(j, n)].evaluate(float(r))
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------
# J-branch seed
# ---------------------------------------------------------------------


def bessel_seed_series(m: int, k: int, trunc: int) -> RadialSeries:
    """Even-series seed proportional to r**(-alpha) J_alpha(r), alpha = k + m/2.

    Normalized to constant term 1; the exact coefficients are
    (-1)**s / (4**s s! (alpha+1)_s).  Multiplying by :func:`seed_scale`
    recovers the unnormalized closed-form radial profile.
    """
    twice_alpha = 2 * k + m
    coeffs = {}
    term = Fraction(1)
    for s in range(trunc // 2 + 1):
        if s:
            term *= Fraction(-1, 4) / s / Fraction(twice_alpha + 2 * s, 2)
        coeffs[2 * s] = term
    return RadialSeries(coeffs, trunc=trunc)


def seed_scale(m: int, k: int) -> float:
    """2**alpha * Gamma(alpha+1): ratio between r**(-alpha) J_alpha(r)
    and the normalized seed series."""
    alpha = (2 * k + m) / 2
    return 2.0 ** alpha * math.gamma(alpha + 1.0)


# ---------------------------------------------------------------------
# integer coefficient table of the even rows
# ---------------------------------------------------------------------


def _formal_derivative(terms: dict) -> dict:
    """d/dr of sum c * f^(d)(r) / r^p with f left symbolic."""
    out: dict[tuple[int, int], Fraction] = {}
    for (d, p), c in terms.items():
        out[(d + 1, p)] = out.get((d + 1, p), Fraction(0)) + c
        if p:
            out[(d, p + 1)] = out.get((d, p + 1), Fraction(0)) - c * p
    return {key: c for key, c in out.items() if c}


def _formal_div_r(terms: dict) -> dict:
    return {(d, p + 1): c for (d, p), c in terms.items()}


def cnj_extract(n: int, m: int, k: int) -> list[int]:
    """Integer coefficients c_{n,j}, j = 1..2n, of the even-row expansion

        A_{2,2n} = sum_j c_{n,j} * A_{2,0}^{(2n-j+1)} / r^{j-1}.

    The recurrence is applied n times to a symbolic seed; a non-integer
    coefficient would falsify the integrality claim and raises instead
    of being rounded.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if m < 2:
        raise ValueError("need dimension m >= 2")
    if k < 0:
        raise ValueError("need degree k >= 0")
    c_coef = 2 * k + m + 1
    terms: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
    for _ in range(n):
        d1 = _formal_derivative(terms)
        nxt: dict[tuple[int, int], Fraction] = {}
        for key, c in _formal_derivative(d1).items():
            nxt[key] = nxt.get(key, Fraction(0)) - c
        for key, c in _formal_div_r(d1).items():
            nxt[key] = nxt.get(key, Fraction(0)) - c * c_coef
        terms = {key: c for key, c in nxt.items() if c}
    out = [0] * (2 * n)
    for (d, p), c in terms.items():
        if d + p != 2 * n or not 1 <= d <= 2 * n:
            raise IntegralityError(
                f"unexpected formal term f^({d})/r^{p} in row 2n={2 * n}")
        if c.denominator != 1:
            raise IntegralityError(
                f"non-integer coefficient {c} at f^({d})/r^{p}, n={n}, m={m}, k={k}")
        out[2 * n - d] = int(c)  # j - 1 = 2n - d
    return out


def formal_row_apply(n: int, m: int, k: int, seed: RadialSeries) -> RadialSeries:
    """Evaluate the formal even-row expansion on a concrete seed series."""
    cs = cnj_extract(n, m, k)
    out = RadialSeries.zero(trunc=seed.trunc)
    for j, c in enumerate(cs, start=1):
        if not c:
            continue
        term = seed
        for _ in range(2 * n - j + 1):
            term = term.derivative()
        for _ in range(j - 1):
            term = term.div_r()
        out = out + term.scale(c)
    return out
