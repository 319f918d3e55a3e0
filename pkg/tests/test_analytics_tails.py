import math

import numpy as np
import pytest
from scipy import integrate
from scipy.stats import norm

from tcopula.analytics.moments import t_variance
from tcopula.analytics.tails import (
    NORMAL_SERIES_CUTOFF,
    TailModelInputs,
    TailThreshold,
    correlated_t_tail_correlation,
    inverse_mills_ratio,
    noise_ratio,
    normal_cdf,
    normal_pdf,
    normal_tail_correlation,
    normal_tail_variance,
    power_law_tail_variance,
    t_tail_variance,
    tail_correlation_model,
)
from tcopula.copulas.base import SampleBlock
from tcopula.errors import DomainError
from tcopula.estimators.tails import conditional_variance
from tcopula.sampling.streams import RngStream
from tcopula.sampling.variates import student_t

SQRT3 = math.sqrt(3.0)


def quadrature_normal_tail_variance(mu):
    """Var[X | X > mu] for X ~ N(0, 1) by direct integration."""
    upper = mu + 40.0
    opts = {"epsabs": 0.0, "epsrel": 1e-12, "limit": 200}
    mass, _ = integrate.quad(norm.pdf, mu, upper, **opts)
    first, _ = integrate.quad(lambda x: x * norm.pdf(x), mu, upper, **opts)
    mean = first / mass
    second, _ = integrate.quad(lambda x: (x - mean) ** 2 * norm.pdf(x), mu, upper, **opts)
    return second / mass


def quadrature_power_law_variance(n, mu):
    """Variance of a density proportional to x^-n on (mu, inf), integrated numerically."""
    opts = {"epsabs": 0.0, "epsrel": 1e-12, "limit": 200}
    mass, _ = integrate.quad(lambda x: x ** -n, mu, math.inf, **opts)
    first, _ = integrate.quad(lambda x: x ** (1 - n), mu, math.inf, **opts)
    mean = first / mass
    second, _ = integrate.quad(lambda x: (x - mean) ** 2 * x ** -n, mu, math.inf, **opts)
    return second / mass


class TestPowerLawVariance:
    def test_formula(self):
        assert power_law_tail_variance(4.0, 2.0) == pytest.approx(3.0 / 4.0 * 4.0)

    def test_known_value(self):
        assert power_law_tail_variance(4.0, 10.0) == pytest.approx(75.0, rel=1e-12)

    @pytest.mark.parametrize("n, mu", [(4.0, 10.0), (4.0, 1.0), (5.5, 2.0), (12.0, 0.3)])
    def test_matches_quadrature(self, n, mu):
        assert power_law_tail_variance(n, mu) == pytest.approx(quadrature_power_law_variance(n, mu), rel=1e-7)

    @pytest.mark.parametrize("nu", [2.5, 3.0, 5.0, 30.0])
    @pytest.mark.parametrize("mu", [0.5, 2.0, 17.0])
    def test_t_variance_is_power_law_with_shifted_exponent(self, nu, mu):
        assert t_tail_variance(nu, mu) == pytest.approx(power_law_tail_variance(nu + 1, mu), rel=1e-12)

    def test_grows_like_mu_squared(self):
        assert t_tail_variance(3, 20.0) == pytest.approx(100 * t_tail_variance(3, 2.0))

    @pytest.mark.parametrize("n, mu", [(3.0, 1.0), (2.0, 1.0), (4.0, 0.0), (4.0, -1.0)])
    def test_domain(self, n, mu):
        with pytest.raises(DomainError):
            power_law_tail_variance(n, mu)


class TestNormalTailVariance:
    def test_at_zero(self):
        assert normal_tail_variance(0.0) == pytest.approx(1.0 - 2.0 / math.pi, rel=1e-12)

    @pytest.mark.parametrize("mu", [-1.0, 0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0])
    def test_matches_quadrature(self, mu):
        assert normal_tail_variance(mu) == pytest.approx(quadrature_normal_tail_variance(mu), rel=1e-8)

    def test_series_joins_closed_form(self):
        below = normal_tail_variance(NORMAL_SERIES_CUTOFF)
        above = normal_tail_variance(NORMAL_SERIES_CUTOFF * (1 + 1e-12))
        assert above == pytest.approx(below, rel=1e-6)

    def test_decreasing_and_positive(self):
        mus = np.linspace(0.0, 200.0, 401)
        values = [normal_tail_variance(m) for m in mus]
        assert all(v > 0 for v in values)
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_deep_tail(self):
        value = normal_tail_variance(1e3)
        assert value == pytest.approx(1e-6, rel=1e-4)

    def test_below_one_percent_from_ten(self):
        for mu in (10.0, 15.0, 50.0):
            assert normal_tail_variance(mu) < 1e-2

    def test_inverse_mills_ratio(self):
        assert inverse_mills_ratio(0.0) == pytest.approx(math.sqrt(2 / math.pi), rel=1e-12)
        assert inverse_mills_ratio(50.0) == pytest.approx(50.0 + 1 / 50.0, rel=1e-6)


class TestTailCorrelationLaw:
    def test_t_tails_approach_one(self):
        k_prime = noise_ratio(0.9, t_variance(3))
        for mu in (50 * SQRT3, 100 * SQRT3, 1e4):
            value = tail_correlation_model(TailModelInputs(t_tail_variance(3, mu), k_prime))
            assert value > 0.99, f"mu={mu}: {value}"

    def test_normal_tails_fall_away_at_same_k_prime(self):
        k_prime = noise_ratio(0.9, t_variance(3))
        for mu in (10.0, 20.0, 50.0):
            value = tail_correlation_model(TailModelInputs(normal_tail_variance(mu), k_prime))
            assert value < 0.15, f"mu={mu}: {value}"

    def test_normal_tail_correlation_decreases(self):
        values = [normal_tail_correlation(0.9, mu) for mu in (0.5, 2.0, 5.0, 10.0, 50.0)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[-1] < 0.05

    def test_k_prime_includes_noise_weight(self):
        assert noise_ratio(0.9, 3.0) == pytest.approx(0.19 * 3.0 / 0.81)

    def test_perfect_correlation(self):
        for mu in (1.0, 5.0, 100.0):
            assert correlated_t_tail_correlation(1.0, 3, mu) == 1.0

    def test_sign_follows_rho(self):
        assert correlated_t_tail_correlation(-0.9, 3, 4.0) == pytest.approx(-correlated_t_tail_correlation(0.9, 3, 4.0))

    def test_zero_rho_rejected(self):
        with pytest.raises(DomainError):
            correlated_t_tail_correlation(0.0, 3, 2.0)

    def test_nondecreasing_in_mu(self):
        values = [correlated_t_tail_correlation(0.9, 3, mu) for mu in np.linspace(0.5, 50, 100)]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_cross_check_against_simulated_table(self):
        assert abs(correlated_t_tail_correlation(0.9, 3, 2 * SQRT3) - 0.9314) < 0.05

    def test_inputs_validated(self):
        with pytest.raises(DomainError):
            TailModelInputs(0.0, 1.0)
        with pytest.raises(DomainError):
            TailModelInputs(1.0, -1.0)


class TestTailThreshold:
    def test_from_gamma(self):
        threshold = TailThreshold.from_gamma(2, 3)
        assert threshold.mu == pytest.approx(2 * SQRT3)
        assert threshold.gamma == 2.0

    def test_negative_gamma(self):
        with pytest.raises(DomainError):
            TailThreshold(mu=-1.0, gamma=-1.0)


class TestNormalHelpers:
    def test_pdf(self):
        assert normal_pdf(0.0) == pytest.approx(1 / math.sqrt(2 * math.pi), abs=1e-15)

    def test_cdf(self):
        assert normal_cdf(0.0) == 0.5
        assert normal_cdf(1.959964) == pytest.approx(0.975, abs=1e-6)

    @pytest.mark.parametrize("x", np.linspace(-8, 8, 33))
    def test_against_scipy(self, x):
        assert normal_pdf(x) == pytest.approx(norm.pdf(x), abs=1e-12)
        assert normal_cdf(x) == pytest.approx(norm.cdf(x), abs=1e-12)


class TestTailModel:
    def test_no_noise(self):
        assert tail_correlation_model(TailModelInputs(3.0, 0.0)) == 1.0

    def test_equal_terms(self):
        assert tail_correlation_model(TailModelInputs(2.5, 2.5)) == pytest.approx(1 / math.sqrt(2))

    def test_increases_to_one(self):
        values = [tail_correlation_model(TailModelInputs(10.0 ** k, 1.0)) for k in range(1, 9)]
        assert all(a < b for a, b in zip(values, values[1:]))
        assert 1.0 - values[-1] < 1e-8

    def test_decreases_in_k_prime(self):
        values = [tail_correlation_model(TailModelInputs(1.0, k)) for k in (0.0, 0.1, 1.0, 10.0)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert all(0.0 < v <= 1.0 for v in values)

    def test_correlated_t_increases_into_the_tail(self):
        values = [correlated_t_tail_correlation(0.9, 3, 10.0 ** k) for k in range(0, 6)]
        assert all(a < b for a, b in zip(values, values[1:]))


@pytest.mark.slow
def test_t_tail_variance_matches_simulated_t3_tail():
    mu = 3.0 * SQRT3
    tail = []
    for stream_id in range(10):
        draws = student_t(RngStream(11, stream_id), 3.0, size=1_000_000)
        tail.append(draws[draws > mu])
    tail = np.concatenate(tail)
    empirical = conditional_variance(SampleBlock(tail, tail), mu)
    assert t_tail_variance(3.0, mu) == pytest.approx(20.25)
    assert abs(empirical / t_tail_variance(3.0, mu) - 1.0) < 0.15
