"""Shared helpers for the test suite.

Random objects are built with explicitly seeded generators so every run
exercises the same inputs; exact (Fraction) coefficients keep the algebraic
identity checks free of rounding noise.
"""

from __future__ import annotations

import random
from fractions import Fraction

from axialmono import Multivector, PolyMV, dirac_left, sandwich_sum, x_vector
from axialmono.axial import ProfileSeries
from axialmono.series import bessel_seed_series, lambda_coeff, series_solve


def rand_fraction(rng: random.Random, lo: int = -9, hi: int = 9) -> Fraction:
    num = rng.randint(lo, hi)
    den = rng.randint(1, 9)
    return Fraction(num, den)


def rand_multivector(rng: random.Random, m: int, max_terms: int = 3) -> Multivector:
    """Sparse exact multivector with a few random blades."""
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        coeffs[rng.randrange(1 << m)] = rand_fraction(rng)
    return Multivector(m, coeffs)


def rand_polymv(
    rng: random.Random,
    m: int,
    max_degree: int = 3,
    max_terms: int = 4,
    max_blades: int = 2,
) -> PolyMV:
    """Random polynomial with multivector coefficients, exact arithmetic."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * m
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(m)] += 1
        coeffs = {}
        for _ in range(rng.randint(1, max_blades)):
            coeffs[rng.randrange(1 << m)] = rand_fraction(rng)
        terms[tuple(exps)] = Multivector(m, coeffs)
    return PolyMV(m, terms)


def coeff_sandwich(f: PolyMV) -> PolyMV:
    """Apply sum_j e_j (.) e_j to every coefficient of ``f``."""
    out = PolyMV.zero(f.m)
    for exps, mv in f.terms.items():
        out = out + PolyMV.monomial(f.m, exps, sandwich_sum(mv))
    return out


def leibniz_residuals(f: PolyMV) -> tuple[PolyMV, PolyMV]:
    """Residuals of the two product rules for the vector variable.

    Rule 1:  D(x f) + m f + 2 sum_j x_j d_j f + x D(f) = 0
    Rule 2:  D(f x) - D(f) x - sum_j e_j f e_j       = 0
    where D is the left Dirac operator and x the vector variable.
    """
    m = f.m
    xv = x_vector(m)
    lr1 = dirac_left(xv * f) + m * f + x_vector(m) * dirac_left(f)
    for j in range(1, m + 1):
        lr1 = lr1 + 2 * (PolyMV.coordinate(m, j) * f.partial(j))
    lr2 = dirac_left(f * xv) - dirac_left(f) * xv - coeff_sandwich(f)
    return lr1, lr2


def series_quad(m: int, k: int, l: int, trunc: int = 26, n_steps: int = 6):
    """Exact series profiles (A, B, C, D) with B = C for the separable seed."""
    s = bessel_seed_series(m, k, trunc)
    sp = s.derivative()
    a1 = sp.mul_r() + s.scale(lambda_coeff(m, k, l))
    a3 = -sp.div_r()
    table = series_solve(a1, s, a3, s, n_steps, m, k, l)
    A = ProfileSeries.from_table(table, 1, n_steps)
    B = ProfileSeries.from_table(table, 2, n_steps)
    D = ProfileSeries.from_table(table, 3, n_steps)
    return A, B, B, D
