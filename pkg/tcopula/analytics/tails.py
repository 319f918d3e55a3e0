"""Conditional tail variances and the tail-correlation law.

For Z = rho X + sqrt(1 - rho^2) Y with X, Y independent,

    correl(X, Z | X > mu) = sign(rho) / sqrt(1 + K'/V),
    V  = Var[X | X > mu],
    K' = (1 - rho^2) Var[Y] / rho^2.

Power-law tails make V grow like mu^2, so the tail correlation tends to 1;
for Normal tails V vanishes and the tail correlation tends to 0.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfcx, ndtr

from tcopula.analytics.moments import t_variance
from tcopula.errors import DomainError
from tcopula.sampling.variates import check_nu, check_rho

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)

# Above this threshold the Normal tail variance switches to its asymptotic
# series; below it the closed form loses less than ~1e-9 to cancellation.
NORMAL_SERIES_CUTOFF = 40.0


@dataclass(frozen=True)
class TailThreshold:
    """A tail threshold both in raw units (mu) and in standard deviations."""

    mu: float
    gamma: float

    def __post_init__(self):
        if self.gamma < 0:
            raise DomainError(f"gamma must be nonnegative, got {self.gamma}")

    @classmethod
    def from_gamma(cls, gamma, nu):
        """mu = gamma * sqrt(nu/(nu-2)), the t(nu) standard deviation."""
        return cls(mu=gamma * math.sqrt(t_variance(nu)), gamma=float(gamma))


@dataclass(frozen=True)
class TailModelInputs:
    v_tail: float
    k_prime: float

    def __post_init__(self):
        if not self.v_tail > 0:
            raise DomainError(f"Tail variance must be positive, got {self.v_tail}")
        if not self.k_prime >= 0:
            raise DomainError(f"K' must be nonnegative, got {self.k_prime}")


def _check_mu(mu):
    mu = float(mu)
    if not mu > 0:
        raise DomainError(f"Tail threshold must be positive, got {mu}")
    return mu


# ---------------------------------------------------------------------------
# Standard normal helpers
# ---------------------------------------------------------------------------

def normal_pdf(x):
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


def normal_cdf(x):
    return float(ndtr(x))


def normal_sf(x):
    """1 - N(x), computed without cancellation in the upper tail."""
    return float(ndtr(-x))


def inverse_mills_ratio(mu):
    """n(mu) / (1 - N(mu)).

    For mu >= 0 the scaled complementary error function keeps the ratio
    finite even where 1 - N(mu) underflows.
    """
    if mu < 0:
        return normal_pdf(mu) / normal_sf(mu)
    return _SQRT_2_OVER_PI / float(erfcx(mu / _SQRT2))


# ---------------------------------------------------------------------------
# Conditional tail variances
# ---------------------------------------------------------------------------

def power_law_tail_variance(n_exponent, mu):
    """Var[X | X > mu] for a density tail C x^(-n): (n-1)/((n-2)^2 (n-3)) mu^2."""
    n = float(n_exponent)
    if not n > 3:
        raise DomainError(f"Infinite tail variance for power-law exponent {n} (need n > 3)")
    mu = _check_mu(mu)
    return (n - 1.0) / ((n - 2.0) ** 2 * (n - 3.0)) * mu * mu


def t_tail_variance(nu, mu):
    """Var[X | X > mu] for Student-t(nu), whose density tail has exponent nu+1.

    Equals mu^2 nu / ((nu-1)^2 (nu-2)); exact for a Pareto tail and
    asymptotic for the t law itself.
    """
    nu = check_nu(nu, finite_variance=True)
    return power_law_tail_variance(nu + 1.0, mu)


def normal_tail_variance(mu):
    """Var[X | X > mu] = 1 + mu r - r^2 for X ~ N(0, 1), r the inverse Mills ratio."""
    mu = float(mu)
    if mu > NORMAL_SERIES_CUTOFF:
        s = 1.0 / (mu * mu)
        return s * (1.0 - s * (6.0 - s * (50.0 - 518.0 * s)))
    r = inverse_mills_ratio(mu)
    return 1.0 - r * (r - mu)


# ---------------------------------------------------------------------------
# Tail correlation law
# ---------------------------------------------------------------------------

def tail_correlation_model(inputs):
    """1 / sqrt(1 + K'/V)."""
    return 1.0 / math.sqrt(1.0 + inputs.k_prime / inputs.v_tail)


def noise_ratio(rho, noise_variance):
    """K' = (1 - rho^2) Var[noise] / rho^2."""
    rho = check_rho(rho)
    if rho == 0:
        raise DomainError("Tail correlation law needs rho != 0; independent variables have tail correlation 0")
    return (1.0 - rho * rho) * noise_variance / (rho * rho)


def correlated_t_tail_correlation(rho, nu, mu):
    """Model tail correlation of the correlated-t construction at threshold mu."""
    nu = check_nu(nu, finite_variance=True)
    k_prime = noise_ratio(rho, t_variance(nu))
    value = tail_correlation_model(TailModelInputs(t_tail_variance(nu, mu), k_prime))
    return math.copysign(value, rho)


def normal_tail_correlation(rho, mu):
    """Model tail correlation of rho X + sqrt(1 - rho^2) Y for standard normals."""
    k_prime = noise_ratio(rho, 1.0)
    v_tail = normal_tail_variance(mu)
    # The series keeps v_tail positive, but 1 - r(r - mu) can round to 0
    v_tail = max(v_tail, np.finfo(np.float64).tiny)
    return math.copysign(tail_correlation_model(TailModelInputs(v_tail, k_prime)), rho)
