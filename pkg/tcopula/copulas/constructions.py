"""The three constructions of correlated Student-t pairs.

Draw order inside one call is fixed, so tables built from a seed are
reproducible:

  same-chi2     X, Z (normal substream), then C (chi-squared substream)
  indep-chi2    X, Z (normal substream), then C1, C2 (chi-squared substream)
  correlated-t  U = X1*sqrt(nu/C1), then W = X2*sqrt(nu/C2); each t draw
                takes its normal and its chi-squared from the two substreams

With array draws (``size`` given) each step draws the whole array before the
next step starts.
"""

import logging
import math

import numpy as np

from tcopula.copulas.base import CopulaMethod, Construction
from tcopula.sampling.variates import chi_squared, correlated_normal_pair, student_t

logger = logging.getLogger(__name__)


def _sqrt(x):
    return np.sqrt(x) if isinstance(x, np.ndarray) else math.sqrt(x)


class SameChi2Construction(Construction):
    """U = X sqrt(nu/C), V = Y sqrt(nu/C) with one shared C."""

    method = CopulaMethod.SAME_CHI2

    def sample(self, stream, rho, nu, size=None):
        rho, nu = self.validate(rho, nu)
        x, y = correlated_normal_pair(stream, rho, size)
        scale = _sqrt(nu / chi_squared(stream, nu, size))
        return x * scale, y * scale


class IndepChi2Construction(Construction):
    """U = X sqrt(nu/C1), V = Y sqrt(nu/C2) with independent C1, C2."""

    method = CopulaMethod.INDEP_CHI2

    def sample(self, stream, rho, nu, size=None):
        rho, nu = self.validate(rho, nu)
        x, y = correlated_normal_pair(stream, rho, size)
        c1 = chi_squared(stream, nu, size)
        c2 = chi_squared(stream, nu, size)
        return x * _sqrt(nu / c1), y * _sqrt(nu / c2)


class CorrelatedTConstruction(Construction):
    """V = rho U + sqrt(1 - rho^2) W for independent t variables U, W.

    V has correlation rho with U but is not itself t distributed.
    """

    method = CopulaMethod.CORRELATED_T
    requires_finite_variance = True

    def sample(self, stream, rho, nu, size=None):
        rho, nu = self.validate(rho, nu)
        u = student_t(stream, nu, size)
        w = student_t(stream, nu, size)
        return u, rho * u + math.sqrt(1.0 - rho * rho) * w


CONSTRUCTIONS = {
    CopulaMethod.SAME_CHI2: SameChi2Construction(),
    CopulaMethod.INDEP_CHI2: IndepChi2Construction(),
    CopulaMethod.CORRELATED_T: CorrelatedTConstruction(),
}


def get_construction(method):
    return CONSTRUCTIONS[CopulaMethod.parse(method)]


def sample_same_chi2(stream, rho, nu):
    return CONSTRUCTIONS[CopulaMethod.SAME_CHI2].draw(stream, rho, nu)


def sample_indep_chi2(stream, rho, nu):
    return CONSTRUCTIONS[CopulaMethod.INDEP_CHI2].draw(stream, rho, nu)


def sample_correlated_t(stream, rho, nu):
    return CONSTRUCTIONS[CopulaMethod.CORRELATED_T].draw(stream, rho, nu)
