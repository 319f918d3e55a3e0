"""Inverse-chi moments and the correlation lost by independent mixing.

With C ~ chi-squared(nu) the moments used here are those of Y = 2/sqrt(C),

    E[Y^k] = Gamma((nu - k)/2) / Gamma(nu/2) * 2^(k/2),

i.e. 2^k times the moments of 1/sqrt(C). Only the scale-free ratio
E[Y]^2 / E[Y^2] enters the correlation, so the normalisation is immaterial
there.
"""

import math

from scipy.special import gammaln

from tcopula.errors import DomainError, MomentUndefinedError
from tcopula.sampling.variates import check_nu, check_rho

_LOG2 = math.log(2.0)


def _log_gamma_ratio(a, b):
    """log(Gamma(a) / Gamma(b)); Gamma itself overflows for nu near 340."""
    return float(gammaln(a) - gammaln(b))


def inverse_chi_moment(nu, k):
    """k-th moment Gamma((nu-k)/2)/Gamma(nu/2) * 2^(k/2) of the inverse-chi law.

    The defining integral diverges whenever nu - k <= 0, so that whole
    region is rejected, not only the poles of Gamma.
    """
    nu = check_nu(nu)
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError(f"Moment order must be a positive integer, got {k!r}")
    k = int(k)
    if nu - k <= 0:
        raise MomentUndefinedError(f"Moment {k} of the inverse-chi law is undefined for nu={nu}")
    return math.exp(_log_gamma_ratio(0.5 * (nu - k), 0.5 * nu) + 0.5 * k * _LOG2)


def correlation_reduction_factor(nu):
    """[E(Y)]^2 / E(Y^2) = (Gamma((nu-1)/2) / Gamma(nu/2))^2 * (nu-2)/2.

    The factor by which mixing each margin with its own chi-squared shrinks
    the correlation. Lies in (0, 1) and tends to 1 as nu grows.
    """
    nu = check_nu(nu, finite_variance=True)
    return math.exp(2.0 * _log_gamma_ratio(0.5 * (nu - 1.0), 0.5 * nu)) * (nu - 2.0) / 2.0


def correlation_reduction_asymptotic(nu):
    """Large-nu approximation (nu-2)/(nu-1) of the reduction factor.

    It comes from replacing the Gamma ratio by sqrt(2/(nu-1)), so it
    undershoots the exact factor by roughly 1/(2(nu-1)).
    """
    nu = check_nu(nu, finite_variance=True)
    return (nu - 2.0) / (nu - 1.0)


def effective_correlation(rho, nu):
    """Population correlation of the independent-chi-squared construction."""
    rho = check_rho(rho)
    return rho * correlation_reduction_factor(nu)


def t_variance(nu):
    """Variance nu/(nu-2) of Student-t(nu)."""
    nu = check_nu(nu, finite_variance=True)
    return nu / (nu - 2.0)
