"""Tests for Bessel evaluation: frozen reference values, an independent
series/limit oracle contract, and the classical identities.

Frozen constants below were produced by the oracle implementations in
``oracles.py`` (exact rational ascending series for J, the half-integer
reflection formula and an arbitrary-precision limit for Y) and are embedded
at 17 significant digits.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from axialmono import (
    DomainError,
    Order,
    UnsupportedOrderError,
    bessel_j,
    bessel_y,
    z_family,
)
from axialmono.bessel import j_values, y_values

from oracles import (
    j_half_closed,
    j_series_exact,
    y_half_closed,
    y_half_integer,
    y_integer_limit,
)

# Frozen oracle outputs (17 significant digits).
J1_AT_1 = 0.4400505857449335
J2_AT_2 = 0.35283402861563773
J2_AT_2_OVER_4 = 0.088208507153909432
J_HALF_AT_HALF_PI = 0.63661977236758138   # equals 2/pi
J_3HALF_AT_2 = 0.4912937786871624
J0_AT_50 = 0.055812327669251816
Y0_AT_1 = 0.088256964215676956
Y1_AT_2 = -0.10703243154093754
Y_HALF_AT_PI = 0.45015815807855297        # equals sqrt(2)/pi up to 1 ulp


def close(a: float, b: float, rel: float = 1e-14) -> bool:
    return abs(a - b) <= rel * max(1.0, abs(b))


class TestFrozenValues:
    def test_first_kind(self):
        assert close(bessel_j(Order(2), 1.0), J1_AT_1)
        assert close(bessel_j(Order(4), 2.0), J2_AT_2)
        assert close(bessel_j(Order(4), 2.0) / 4.0, J2_AT_2_OVER_4)
        assert close(bessel_j(Order(1), math.pi / 2), J_HALF_AT_HALF_PI)
        assert close(bessel_j(Order(3), 2.0), J_3HALF_AT_2)
        assert close(bessel_j(Order(0), 50.0), J0_AT_50)

    def test_second_kind(self):
        assert close(bessel_y(Order(0), 1.0), Y0_AT_1)
        assert close(bessel_y(Order(2), 2.0), Y1_AT_2)
        assert close(bessel_y(Order(1), math.pi), Y_HALF_AT_PI)
        # Y_{1/2}(pi/2) vanishes
        assert abs(bessel_y(Order(1), math.pi / 2)) < 1e-15

    def test_math_constants(self):
        assert J_HALF_AT_HALF_PI == pytest.approx(2.0 / math.pi, abs=5e-17)
        assert Y_HALF_AT_PI == pytest.approx(math.sqrt(2.0) / math.pi, abs=5e-16)


class TestOracleContract:
    """Implementation output must track the independent oracles to 1e-12
    relative (with floor 1) across order/argument grids."""

    def test_j_against_exact_series(self):
        orders = (0, 1, 2, 3, 4, 6, 8, 12)   # twice_alpha
        for ta in orders:
            for t in (0.25, 0.5, 1.0, 2.0, 5.0, 10.0):
                ref = j_series_exact(ta, t)
                got = bessel_j(Order(ta), t)
                assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref)), (ta, t)

    def test_j_large_argument(self):
        for ta in (0, 3, 8):
            for t in (20.0, 35.0, 50.0):
                ref = j_series_exact(ta, t)
                got = bessel_j(Order(ta), t)
                assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref)), (ta, t)

    def test_y_half_integer_reflection(self):
        for ta in (1, 3, 5, 7):
            for t in (0.5, 1.0, 2.0, 5.0, 10.0):
                ref = y_half_integer(ta, t)
                got = bessel_y(Order(ta), t)
                assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref)), (ta, t)

    def test_y_integer_limit(self):
        for n in (0, 1, 2, 3):
            for t in (0.5, 1.0, 2.0, 5.0, 10.0):
                ref = y_integer_limit(n, t)
                got = bessel_y(Order(2 * n), t)
                assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref)), (n, t)

    def test_half_order_closed_forms(self):
        for t in (0.3, 1.0, 2.5, 7.0):
            assert close(bessel_j(Order(1), t), j_half_closed(1, t), rel=1e-13)
            assert close(bessel_j(Order(3), t), j_half_closed(3, t), rel=1e-13)
            assert close(bessel_y(Order(1), t), y_half_closed(1, t), rel=1e-13)
            assert close(bessel_y(Order(3), t), y_half_closed(3, t), rel=1e-13)


class TestIdentities:
    def test_three_term_recurrence_spot(self):
        for kind in ("J", "Y"):
            for ta in (2, 3, 6):
                for t in (1.0, 4.0):
                    o = Order(ta)
                    lhs = (2 * o.alpha / t) * z_family(kind, o, t)
                    rhs = z_family(kind, Order(ta - 2), t) + z_family(kind, Order(ta + 2), t)
                    scale = max(abs(lhs), abs(rhs))
                    assert abs(lhs - rhs) <= 1e-12 * scale

    def test_derivative_relation_spot(self):
        h = 1e-4
        o = Order(4)
        t = 2.0
        d = (bessel_j(o, t - 2 * h) - 8 * bessel_j(o, t - h)
             + 8 * bessel_j(o, t + h) - bessel_j(o, t + 2 * h)) / (12 * h)
        assert abs(2 * d - (bessel_j(Order(2), t) - bessel_j(Order(6), t))) < 1e-10

    def test_weight_derivative_spot(self):
        h = 1e-4
        o = Order(3)
        t = 1.5

        def f(s):
            return s ** (-o.alpha) * bessel_j(o, s)

        d = (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h)
        assert abs(d + t ** (-o.alpha) * bessel_j(Order(5), t)) < 1e-10


class TestDomains:
    def test_j_at_zero(self):
        assert bessel_j(Order(0), 0.0) == 1.0
        assert bessel_j(Order(1), 0.0) == 0.0
        assert bessel_j(Order(6), 0.0) == 0.0

    def test_j_negative_argument(self):
        with pytest.raises(DomainError):
            bessel_j(Order(0), -1.0)

    def test_y_nonpositive_argument(self):
        with pytest.raises(DomainError):
            bessel_y(Order(0), 0.0)
        with pytest.raises(DomainError):
            bessel_y(Order(0), -2.0)

    def test_negative_order_unsupported(self):
        with pytest.raises(UnsupportedOrderError):
            bessel_j(Order(-2), 1.0)
        with pytest.raises(UnsupportedOrderError):
            bessel_y(Order(-1), 1.0)

    def test_family_dispatch(self):
        o = Order(2)
        assert z_family("J", o, 1.0) == bessel_j(o, 1.0)
        assert z_family("Y", o, 1.0) == bessel_y(o, 1.0)
        with pytest.raises(ValueError):
            z_family("K", o, 1.0)


class TestOrder:
    def test_parse(self):
        assert Order.parse("2") == Order(4)
        assert Order.parse("3/2") == Order(3)
        assert Order.parse("1.5") == Order(3)
        assert Order.parse("0") == Order(0)

    def test_parse_rejects_non_half_integers(self):
        for bad in ("1/3", "x", "2.25", ""):
            with pytest.raises(ValueError):
                Order.parse(bad)

    def test_properties(self):
        o = Order(3)
        assert o.alpha == 1.5
        assert not o.is_integer
        assert str(o) == "3/2"
        assert Order(4).is_integer
        assert str(Order(4)) == "2"

    def test_from_k_m_and_shift(self):
        assert Order.from_k_m(1, 3) == Order(5)
        assert Order(5).shifted(1) == Order(7)
        assert Order(5).shifted(-1) == Order(3)


class TestVectorized:
    def test_matches_scalar(self):
        ts = np.array([0.5, 1.0, 2.0, 5.0])
        o = Order(3)
        np.testing.assert_allclose(j_values(o, ts), [bessel_j(o, t) for t in ts], rtol=1e-15)
        np.testing.assert_allclose(y_values(o, ts), [bessel_y(o, t) for t in ts], rtol=1e-15)

    def test_validates_domain(self):
        with pytest.raises(DomainError):
            j_values(Order(0), np.array([1.0, -1.0]))
        with pytest.raises(DomainError):
            y_values(Order(0), np.array([1.0, 0.0]))
