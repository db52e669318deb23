import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photocount.counting import (
    CountDistribution,
    Method,
    bernoulli_transform,
    closed_pmf,
    coherent_closed,
    continued_distribution,
    displaced_thermal_closed,
    displaced_thermal_pmf,
    distribution,
    squeezed_closed,
    squeezed_pmf,
    thermal_closed,
    thermal_closed_f,
)
from photocount.errors import CapabilityError, ParameterError, SingularParameterError
from photocount.special_fn import laguerre, legendre_ratio_sequence
from photocount.states import (
    Coherent,
    DisplacedThermal,
    FockDistribution,
    FockMixture,
    SqueezedVacuum,
    Thermal,
    fock_distribution,
    mean_photon,
)

XI_GRID = (0.2, 0.5, 0.8, 1.0)

CLOSED_GRID = (
    [Coherent(a) for a in (0, 0.5, 1j, 1.2 - 0.9j, 2)]
    + [Thermal(nb) for nb in (0, 0.05, 0.5, 1, 3)]
    + [SqueezedVacuum(lam) for lam in (0, 0.2, 0.6, 0.9, 1.2)]
    + [DisplacedThermal(a, nb) for a in (0.5, 1 + 1j, 2) for nb in (0.1, 1, 3)]
)


def single_photon():
    return FockDistribution(np.array([0.0, 1.0]), 1, 0.0)


def binomial_sum_exact(probs, xi, m):
    """Thinning sum in exact rationals."""
    xi = Fraction(xi)
    return float(sum(Fraction(p) * math.comb(n, m) * xi**m * (1 - xi) ** (n - m)
                     for n, p in enumerate(probs) if n >= m))


class TestBernoulliTransform:
    def test_unit_efficiency_is_identity(self):
        fd = fock_distribution(DisplacedThermal(1 + 0.5j, 0.8))
        out = bernoulli_transform(fd, 1.0, fd.cutoff)
        np.testing.assert_array_equal(out.probs, fd.probs)

    def test_single_photon_coin_flip(self):
        out = bernoulli_transform(single_photon(), 0.5, 3)
        np.testing.assert_allclose(out.probs, [0.5, 0.5, 0, 0], atol=1e-16)

    def test_thermal_unit_mean_half_efficiency(self):
        out = bernoulli_transform(fock_distribution(Thermal(1.0)), 0.5, 5)
        assert out.probs[0] == pytest.approx(2 / 3, abs=1e-13)
        assert out.probs[1] == pytest.approx(2 / 9, abs=1e-13)

    def test_matches_exact_rationals(self):
        probs = (0.1, 0.25, 0.05, 0.3, 0.2, 0.1)
        out = bernoulli_transform(fock_distribution(FockMixture(probs)), 0.35, 5)
        ref = [binomial_sum_exact(probs, 0.35, m) for m in range(6)]
        np.testing.assert_allclose(out.probs, ref, rtol=1e-14, atol=1e-17)

    def test_large_photon_numbers_stay_finite(self):
        out = distribution(Coherent(30), 0.7, method=Method.BERNOULLI)
        assert np.all(np.isfinite(out.probs))
        assert math.fsum(out.probs) == pytest.approx(1, abs=1e-12)

    def test_truncation_error_reports_missing_mass(self):
        fd = fock_distribution(Thermal(1.0))
        out = bernoulli_transform(fd, 1.0, 3)
        assert out.trunc_err == pytest.approx(0.5**4, rel=1e-12)

    def test_rejects_unnormalized(self):
        bad = FockDistribution(np.array([0.3, 0.3]), 1, 0.0)
        with pytest.raises(ParameterError, match="tail_bound"):
            bernoulli_transform(bad, 0.5, 1)

    def test_rejects_negative_mmax(self):
        with pytest.raises(ParameterError, match="mmax"):
            bernoulli_transform(single_photon(), 0.5, -1)

    @pytest.mark.parametrize("xi", [0.0, -0.2, 1.3, math.nan])
    def test_rejects_bad_efficiency(self, xi):
        with pytest.raises(ParameterError, match="xi"):
            bernoulli_transform(single_photon(), xi, 1)


class TestCoherent:
    def test_vacuum(self):
        assert coherent_closed(0, 0.7, 0) == 1.0

    def test_half_efficiency(self):
        assert coherent_closed(1, 0.5, 0) == pytest.approx(0.606531, abs=5e-7)
        assert coherent_closed(1, 0.5, 1) == pytest.approx(0.303265, abs=5e-7)

    @pytest.mark.parametrize("alpha", [0.3, 1 - 1j, 2.5j])
    @pytest.mark.parametrize("xi", [0.1, 0.6, 1.0])
    def test_poisson_text_form(self, alpha, xi):
        # (xi |alpha|^2)^m e^{-xi |alpha|^2} / m!
        for m in range(12):
            mu = xi * abs(alpha) ** 2
            assert coherent_closed(alpha, xi, m) == pytest.approx(
                mu**m * math.exp(-mu) / math.factorial(m), rel=1e-13)

    def test_log_branch_is_continuous(self):
        p = closed_pmf(Coherent(6), 0.9, 60)
        ratios = p[1:] / p[:-1]
        np.testing.assert_allclose(ratios, 0.9 * 36 / np.arange(1, 61), rtol=1e-12)


class TestThermal:
    def test_vacuum(self):
        assert thermal_closed(0, 0.4, 0) == 1.0

    def test_examples(self):
        assert thermal_closed(1, 0.5, 0) == pytest.approx(2 / 3, abs=1e-15)
        for m in range(20):
            assert thermal_closed(1, 1.0, m) == pytest.approx(2.0 ** -(m + 1), rel=1e-14)

    @pytest.mark.parametrize("nbar", np.geomspace(1e-6, 10, 15))
    @pytest.mark.parametrize("xi", XI_GRID)
    def test_f_form_agrees(self, nbar, xi):
        f = Thermal(nbar).f
        for m in range(31):
            assert thermal_closed_f(f, xi, m) == pytest.approx(thermal_closed(nbar, xi, m), rel=1e-12)

    def test_f_form_needs_positive_f(self):
        with pytest.raises(ParameterError, match="f > 0"):
            thermal_closed_f(0.0, 0.5, 1)


class TestSqueezed:
    def test_vacuum(self):
        assert squeezed_closed(0, 0.3, 0) == 1.0

    def test_unit_efficiency(self):
        expected = 1 / math.cosh(0.5) * math.tanh(0.5) ** 2 / 2
        assert squeezed_closed(0.5, 1.0, 2) == pytest.approx(expected, rel=1e-14)
        assert squeezed_closed(0.5, 1.0, 2) == pytest.approx(0.0946911, abs=5e-8)
        assert squeezed_closed(0.5, 1.0, 1) == 0.0

    def test_mirrored_branch_is_unphysical(self):
        # the opposite sign of G makes every odd count negative
        lam, xi = 0.7, 0.6
        t = math.tanh(lam)
        good = squeezed_pmf(lam, xi, 7)
        g = (1 - xi) * t
        mirrored = legendre_ratio_sequence(7, g, scale=xi * t) / (math.cosh(lam) * math.sqrt(1 - g * g))
        ref = distribution(SqueezedVacuum(lam), xi, 7, Method.BERNOULLI).probs
        np.testing.assert_allclose(good, ref, atol=1e-14)
        assert np.all(mirrored[1::2] < 0)

    @settings(max_examples=60, deadline=None)
    @given(lam=st.floats(0, 1.2), xi=st.floats(0.01, 1.0))
    def test_nonnegative(self, lam, xi):
        assert np.all(squeezed_pmf(lam, xi, 40) >= 0)


class TestDisplacedThermal:
    @pytest.mark.parametrize("nbar", [0.3, 1.0])
    def test_reduces_to_thermal_without_displacement(self, nbar):
        for m in range(10):
            assert displaced_thermal_closed(0, nbar, 0.6, m) == pytest.approx(
                thermal_closed(nbar, 0.6, m), rel=1e-14)

    @pytest.mark.parametrize("alpha", [0.4, 1 + 1j, 2j])
    def test_wigner_continuation(self, alpha):
        a2 = abs(alpha) ** 2
        got = displaced_thermal_pmf(alpha, -0.5, 1.0, 12, continuation=True)
        ref = [2 * (-1) ** m * math.exp(-2 * a2) * laguerre(m, 4 * a2) for m in range(13)]
        np.testing.assert_allclose(got, ref, rtol=1e-12, atol=1e-15)

    def test_wigner_continuation_needs_flag(self):
        with pytest.raises(ParameterError, match="nbar"):
            displaced_thermal_closed(1, -0.5, 1.0, 0)

    def test_zero_temperature_is_coherent_form(self):
        with pytest.raises(CapabilityError, match="coherent"):
            displaced_thermal_closed(1, 0, 0.5, 0)
        np.testing.assert_allclose(closed_pmf(DisplacedThermal(1, 0), 0.5, 5),
                                   closed_pmf(Coherent(1), 0.5, 5))

    def test_pole(self):
        with pytest.raises(SingularParameterError, match="pole"):
            displaced_thermal_closed(1, -1.0, 1.0, 0, continuation=True)


class TestDistribution:
    def test_vacuum(self):
        d = distribution(Coherent(0), 0.37, 4)
        np.testing.assert_array_equal(d.probs, [1, 0, 0, 0, 0])

    def test_squeezed_closed_vs_bernoulli(self):
        a = distribution(SqueezedVacuum(0.5), 0.6, 30).probs
        b = distribution(SqueezedVacuum(0.5), 0.6, 30, Method.BERNOULLI).probs
        assert np.max(np.abs(a - b)) < 1e-10

    def test_mixture_has_no_closed_form(self):
        with pytest.raises(CapabilityError, match="bernoulli"):
            distribution(FockMixture((0.5, 0.5)), 0.5)

    def test_pquad_needs_gaussian_p(self):
        with pytest.raises(CapabilityError, match="P-function"):
            distribution(SqueezedVacuum(0.5), 0.5, 2, Method.PQUADRATURE)

    def test_physical_entry_rejects_continuation(self):
        with pytest.raises(ParameterError, match="xi"):
            distribution(Coherent(1), 2.0, 4)

    def test_continued_entry(self):
        d = continued_distribution(Coherent(1), 2.0, 4)
        assert d.probs[0] == pytest.approx(math.exp(-2))
        assert d.to_dict()["trunc_err"] is None
        with pytest.raises(CapabilityError, match="bernoulli"):
            continued_distribution(Coherent(1), 2.0, 4, Method.BERNOULLI)

    def test_metadata(self):
        d = distribution(Thermal(1), 0.5, 3)
        assert isinstance(d, CountDistribution)
        assert d.method is Method.CLOSED and d.mmax == 3 and d.xi == 0.5
        assert d.trunc_err == pytest.approx(0.5**4)
        rec = d.to_dict()
        assert rec["state"] == {"kind": "thermal", "nbar": 1.0}
        assert rec["method"] == "closed" and len(rec["probs"]) == 4

    @pytest.mark.parametrize("state", CLOSED_GRID, ids=repr)
    @pytest.mark.parametrize("xi", XI_GRID)
    def test_closed_equals_bernoulli(self, state, xi):
        a = distribution(state, xi, 30).probs
        b = distribution(state, xi, 30, Method.BERNOULLI).probs
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-10)

    @pytest.mark.parametrize(
        "state", CLOSED_GRID + [FockMixture((0.1, 0.2, 0.3, 0.4))], ids=repr)
    @pytest.mark.parametrize("xi", XI_GRID)
    def test_normalization_and_mean(self, state, xi):
        method = Method.BERNOULLI if isinstance(state, FockMixture) else Method.CLOSED
        d = distribution(state, xi, method=method)
        total = math.fsum(d.probs)
        assert total <= 1 + 1e-9
        assert 1 - total <= d.trunc_err + 1e-9
        assert np.all(d.probs >= 0) and np.all(d.probs <= 1)
        assert d.mean() == pytest.approx(xi * mean_photon(state), abs=1e-8)
