import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from photocount.errors import DegreeLimitError, ParameterError, SingularParameterError
from photocount.special_fn import (
    MAX_DEGREE,
    laguerre,
    laguerre_genfun_check,
    laguerre_sequence,
    laguerre_values,
    legendre_complex,
    legendre_ratio,
    legendre_ratio_sequence,
)


def laguerre_by_sum(m, x):
    """Explicit alternating sum in exact rationals."""
    x = Fraction(x)
    return float(sum((-1) ** l * math.comb(m, l) * x**l / math.factorial(l) for l in range(m + 1)))


class TestLaguerre:
    def test_degree_zero(self):
        assert laguerre(0, 7.3) == 1.0

    def test_degree_one(self):
        assert laguerre(1, 2.0) == -1.0

    def test_degree_two_by_hand(self):
        # 1 - 2 + 1/2
        assert laguerre(2, 1.0) == pytest.approx(-0.5, abs=1e-15)

    @pytest.mark.parametrize("m", [3, 7, 12, 25])
    @pytest.mark.parametrize("x", ["-3.5", "-0.25", "0.5", "2", "9.75"])
    def test_matches_exact_sum(self, m, x):
        exact = laguerre_by_sum(m, x)
        assert laguerre(m, float(x)) == pytest.approx(exact, rel=1e-12, abs=1e-12)

    def test_matches_scipy(self):
        x = np.linspace(-5, 30, 71)
        for m in (0, 1, 5, 40):
            np.testing.assert_allclose(laguerre_values(m, x), special.eval_laguerre(m, x),
                                       rtol=1e-10, atol=1e-10)

    def test_at_origin_is_one(self):
        np.testing.assert_array_equal(laguerre_sequence(200, 0.0), np.ones(201))

    def test_scaled_sequence(self):
        seq = laguerre_sequence(20, -1.7, scale=0.3)
        plain = laguerre_sequence(20, -1.7)
        np.testing.assert_allclose(seq, plain * 0.3 ** np.arange(21), rtol=1e-13)

    def test_degree_ceiling(self):
        with pytest.raises(DegreeLimitError, match="10000"):
            laguerre(MAX_DEGREE + 1, 0.5)

    def test_negative_degree(self):
        with pytest.raises(ParameterError, match=">= 0"):
            laguerre(-1, 0.5)

    @pytest.mark.parametrize(
        "x, t, nmax, bound",
        [(0.0, 0.5, 50, 1e-12), (1.0, 0.3, 60, 1e-10), (2.0, -0.4, 60, 1e-10)],
    )
    def test_generating_function(self, x, t, nmax, bound):
        assert laguerre_genfun_check(x, t, nmax) < bound

    def test_generating_function_needs_unit_disc(self):
        with pytest.raises(ParameterError, match=r"\|t\| < 1"):
            laguerre_genfun_check(0.0, 1.0, 10)


class TestLegendreComplex:
    def test_degree_zero(self):
        assert legendre_complex(0, 3 - 2j) == 1

    def test_degree_one(self):
        assert legendre_complex(1, 0.3 + 0.4j) == 0.3 + 0.4j

    def test_degree_two_by_hand(self):
        # (3 z^2 - 1) / 2 at z = 1/2
        assert legendre_complex(2, 0.5) == pytest.approx(-0.125, abs=1e-16)

    def test_endpoints(self):
        for m in range(201):
            assert legendre_complex(m, 1) == pytest.approx(1.0, abs=1e-12)
            assert legendre_complex(m, -1) == pytest.approx((-1) ** m, abs=1e-12)

    def test_matches_numpy_legval(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            z = complex(*rng.uniform(-1.5, 1.5, 2))
            m = int(rng.integers(0, 30))
            coef = np.zeros(m + 1)
            coef[m] = 1
            ref = np.polynomial.legendre.legval(z, coef)
            assert abs(legendre_complex(m, z) - ref) <= 1e-10 * max(1, abs(ref))

    @settings(max_examples=60, deadline=None)
    @given(
        m=st.integers(0, 50),
        re=st.floats(-2, 2),
        im=st.floats(-2, 2),
    )
    def test_parity(self, m, re, im):
        z = complex(re, im)
        lhs = legendre_complex(m, -z)
        rhs = (-1) ** m * legendre_complex(m, z)
        assert abs(lhs - rhs) <= 1e-12 * max(abs(rhs), 1e-300) or abs(lhs - rhs) < 1e-300

    @pytest.mark.parametrize("x", [-0.9, -0.3, 0.0, 0.45, 0.9])
    @pytest.mark.parametrize("t", [-0.5, -0.1, 0.2, 0.5])
    def test_generating_function(self, x, t):
        partial = sum(legendre_complex(n, x).real * t**n for n in range(80))
        assert partial == pytest.approx((1 - 2 * x * t + t * t) ** -0.5, abs=1e-10)


class TestLegendreRatio:
    def test_degree_zero(self):
        assert legendre_ratio(0, 0.4) == 1.0

    def test_degree_two_at_zero(self):
        assert legendre_ratio(2, 0.0) == pytest.approx(0.5, abs=1e-16)

    @pytest.mark.parametrize("g", [-0.95, -0.6, -0.2, 0.0, 0.3, 0.7, 0.95])
    @pytest.mark.parametrize("m", [1, 2, 5, 9, 20])
    def test_agrees_with_complex_route(self, m, g):
        # (g^2-1)^(-m/2) P_m(g/sqrt(g^2-1)) with an explicit complex root
        root = cmath.sqrt(g * g - 1)
        complex_value = legendre_complex(m, g / root) / root**m
        assert abs(complex_value.imag) < 1e-12 * max(1.0, abs(complex_value))
        assert legendre_ratio(m, g) == pytest.approx(complex_value.real, rel=1e-11, abs=1e-13)

    @pytest.mark.parametrize("g", [1.0, -1.0])
    def test_singular(self, g):
        with pytest.raises(SingularParameterError, match="g="):
            legendre_ratio(3, g)

    @settings(max_examples=80, deadline=None)
    @given(m=st.integers(0, 100), g=st.floats(-0.99, 0.99))
    def test_finite_and_real(self, m, g):
        value = legendre_ratio(m, g)
        assert isinstance(value, float)
        assert math.isfinite(value)

    def test_scaled_sequence(self):
        seq = legendre_ratio_sequence(15, -0.4, scale=0.7)
        plain = legendre_ratio_sequence(15, -0.4)
        np.testing.assert_allclose(seq, plain * 0.7 ** np.arange(16), rtol=1e-13)
