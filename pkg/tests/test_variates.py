import math

import numpy as np
import pytest
from scipy import stats

from tcopula.errors import DomainError
from tcopula.sampling.streams import RngStream
from tcopula.sampling.variates import (
    check_nu,
    check_rho,
    chi_squared,
    common_nu,
    correlated_normal_pair,
    standard_normal,
    student_t,
)


class TestChecks:
    @pytest.mark.parametrize("rho", [-1.0, 0.0, 0.9, 1.0])
    def test_valid_rho(self, rho):
        assert check_rho(rho) == rho

    @pytest.mark.parametrize("rho", [-1.01, 1.5, float("nan")])
    def test_invalid_rho(self, rho):
        with pytest.raises(DomainError):
            check_rho(rho)

    @pytest.mark.parametrize("nu", [0.0, -3.0, float("inf"), float("nan")])
    def test_invalid_nu(self, nu):
        with pytest.raises(DomainError):
            check_nu(nu)

    def test_finite_variance_bound(self):
        assert check_nu(2.0) == 2.0
        with pytest.raises(DomainError):
            check_nu(2.0, finite_variance=True)

    def test_common_nu(self):
        assert common_nu((4, 4.0)) == 4.0
        assert common_nu(5) == 5
        with pytest.raises(DomainError, match="share"):
            common_nu((3, 4))


class TestDraws:
    def test_scalar_draws_are_floats(self):
        stream = RngStream(1)
        assert isinstance(standard_normal(stream), float)
        assert isinstance(chi_squared(stream, 3), float)
        assert isinstance(student_t(stream, 3), float)

    def test_chi_squared_mean_and_positivity(self):
        draws = chi_squared(RngStream(11), 3.0, size=100_000)
        assert draws.min() > 0
        assert abs(draws.mean() - 3.0) < 0.05, f"mean {draws.mean()}"

    def test_chi_squared_tiny_nu_stays_positive(self):
        draws = chi_squared(RngStream(12), 0.01, size=10_000)
        assert np.all(draws > 0)

    def test_correlated_normal_pair(self):
        x, y = correlated_normal_pair(RngStream(13), 0.9, size=100_000)
        assert abs(np.corrcoef(x, y)[0, 1] - 0.9) < 0.01

    @pytest.mark.parametrize("rho", [1.0, -1.0])
    def test_degenerate_pair(self, rho):
        x, y = correlated_normal_pair(RngStream(14), rho, size=1000)
        np.testing.assert_array_equal(y, rho * x)

    def test_student_t_variance(self):
        draws = student_t(RngStream(15), 10.0, size=200_000)
        assert abs(draws.var() - 10.0 / 8.0) < 0.03

    def test_student_t_matches_law(self):
        draws = student_t(RngStream(16), 5.0, size=50_000)
        assert stats.kstest(draws, "t", args=(5.0,)).pvalue > 0.001

    def test_student_t_rejects_bad_nu(self):
        with pytest.raises(DomainError):
            student_t(RngStream(1), -1.0)

    def test_student_t_formula(self):
        a, b = RngStream(17), RngStream(17)
        x = standard_normal(b)
        c = chi_squared(b, 4.0)
        assert student_t(a, 4.0) == x * math.sqrt(4.0 / c)


@pytest.mark.slow
class TestMillionDrawMoments:
    N = 1_000_000

    def test_standard_normal(self):
        draws = standard_normal(RngStream(42), size=self.N)
        assert abs(draws.mean()) < 0.004
        assert abs(draws.var() - 1.0) < 0.01

    def test_replay(self):
        a = standard_normal(RngStream(42, 0), size=100)
        b = standard_normal(RngStream(42, 0), size=100)
        assert a.tobytes() == b.tobytes()

    @pytest.mark.parametrize("rho", [0.0, 0.9])
    def test_pair_correlation(self, rho):
        x, y = correlated_normal_pair(RngStream(43), rho, size=self.N)
        assert abs(np.corrcoef(x, y)[0, 1] - rho) < 0.004

    def test_pair_margins_are_normal(self):
        x, y = correlated_normal_pair(RngStream(44), 0.9, size=100_000)
        assert stats.kstest(x, "norm").pvalue > 0.01
        assert stats.kstest(y, "norm").pvalue > 0.01

    def test_chi_squared(self):
        draws = chi_squared(RngStream(45), 3.0, size=self.N)
        assert abs(draws.mean() - 3.0) < 0.02
        assert abs(draws.var() - 6.0) < 0.1
        # E[1/C] = 1/(nu - 2)
        assert abs((1.0 / draws).mean() - 1.0) < 0.02

    def test_student_t(self):
        t3 = student_t(RngStream(46), 3.0, size=self.N)
        assert abs(t3.mean()) < 0.01
        # two-sided t(3) tail beyond 4.541 is 2%
        assert abs(np.mean(np.abs(t3) > 4.541) - 0.02) < 0.002
        assert stats.kstest(t3[:100_000], "t", args=(3.0,)).pvalue > 0.01
        t5 = student_t(RngStream(47), 5.0, size=self.N)
        assert abs(t5.var() - 5.0 / 3.0) < 0.03
