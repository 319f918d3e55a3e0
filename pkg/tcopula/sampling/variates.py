"""Standard building-block variates: normals, correlated normal pairs,
chi-squared and Student-t draws.

Every function takes an RngStream and an optional ``size``. With
``size=None`` a Python float (or a pair of floats) is returned, otherwise
numpy arrays of that shape, following numpy's Generator conventions.
"""

import math

import numpy as np

from tcopula.errors import DomainError
from tcopula.sampling.streams import CHI_SQUARED, NORMAL

# Smallest positive double; standard_gamma can underflow to 0 for tiny shapes
_TINY = np.finfo(np.float64).tiny


# ---------------------------------------------------------------------------
# Parameter checks
# ---------------------------------------------------------------------------

def check_rho(rho):
    """Validate a correlation coefficient and return it as a float."""
    rho = float(rho)
    if not -1.0 <= rho <= 1.0:
        raise DomainError(f"Correlation must lie in [-1, 1], got {rho}")
    return rho


def check_nu(nu, finite_variance=False):
    """Validate degrees of freedom and return them as a float.

    With ``finite_variance`` the stricter bound nu > 2 is enforced.
    """
    nu = float(nu)
    if not math.isfinite(nu) or nu <= 0.0:
        raise DomainError(f"Degrees of freedom must be positive and finite, got {nu}")
    if finite_variance and nu <= 2.0:
        raise DomainError(f"Degrees of freedom must exceed 2 for a finite variance, got {nu}")
    return nu


def common_nu(nu):
    """Accept one nu or a (nu_u, nu_v) pair; both margins must share it."""
    if isinstance(nu, (tuple, list)):
        if len(nu) != 2:
            raise DomainError(f"Expected one or two degrees of freedom, got {nu!r}")
        nu_u, nu_v = float(nu[0]), float(nu[1])
        if nu_u != nu_v:
            raise DomainError(
                f"Both margins must share one degrees of freedom, got {nu_u} and {nu_v}"
            )
        return nu_u
    return nu


# ---------------------------------------------------------------------------
# Draws
# ---------------------------------------------------------------------------

def standard_normal(stream, size=None):
    """Standard normal draw(s) from the stream's normal substream."""
    return stream.generator(NORMAL).standard_normal(size)


def correlated_normal_pair(stream, rho, size=None):
    """A pair of standard normals with correlation ``rho``.

    Draws X then Z from the normal substream and returns
    (X, rho*X + sqrt(1 - rho^2)*Z).
    """
    rho = check_rho(rho)
    gen = stream.generator(NORMAL)
    x = gen.standard_normal(size)
    z = gen.standard_normal(size)
    y = rho * x + math.sqrt(1.0 - rho * rho) * z
    return x, y


def chi_squared(stream, nu, size=None):
    """Chi-squared(nu) draw(s), strictly positive.

    Sampled as 2 * Gamma(nu/2) with numpy's rejection sampler, which is
    valid for every real nu > 0.
    """
    nu = check_nu(nu)
    draws = 2.0 * stream.generator(CHI_SQUARED).standard_gamma(0.5 * nu, size)
    if size is None:
        return max(float(draws), _TINY)
    return np.maximum(draws, _TINY)


def student_t(stream, nu, size=None):
    """Student-t(nu) draw(s) built as X * sqrt(nu / C).

    X comes from the normal substream and C from the chi-squared substream.
    """
    nu = check_nu(nu)
    x = standard_normal(stream, size)
    c = chi_squared(stream, nu, size)
    return x * np.sqrt(nu / c) if size is not None else x * math.sqrt(nu / c)
