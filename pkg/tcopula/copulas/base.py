from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from tcopula.errors import DomainError
from tcopula.sampling.streams import UINT64_MAX
from tcopula.sampling.variates import check_nu, check_rho, common_nu


class CopulaMethod(Enum):
    SAME_CHI2 = "same-chi2"
    INDEP_CHI2 = "indep-chi2"
    CORRELATED_T = "correlated-t"

    @classmethod
    def parse(cls, text):
        """Parse a canonical method name, ignoring case."""
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower()
        for method in cls:
            if method.value == key:
                return method
        names = ", ".join(m.value for m in cls)
        raise DomainError(f"Unknown copula method {text!r} (expected one of {names})")

    def __str__(self):
        return self.value


class BivariateSample(NamedTuple):
    u: float
    v: float


@dataclass(frozen=True)
class SampleBlock:
    """A contiguous run of draws held as two equal-length arrays."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=np.float64).reshape(-1)
        v = np.asarray(self.v, dtype=np.float64).reshape(-1)
        if u.shape != v.shape:
            raise ValueError(f"u and v lengths differ: {u.size} != {v.size}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    def __len__(self):
        return self.u.size

    def __iter__(self):
        return self.samples()

    def samples(self):
        for u, v in zip(self.u.tolist(), self.v.tolist()):
            yield BivariateSample(u, v)

    def head(self, n):
        return SampleBlock(self.u[:n], self.v[:n])

    def swapped(self):
        return SampleBlock(self.v, self.u)

    def select(self, mask):
        return SampleBlock(self.u[mask], self.v[mask])

    @classmethod
    def concat(cls, blocks):
        blocks = list(blocks)
        if not blocks:
            return cls(np.empty(0), np.empty(0))
        return cls(np.concatenate([b.u for b in blocks]), np.concatenate([b.v for b in blocks]))


def as_block(pairs):
    """Coerce pairs into a SampleBlock.

    Accepts a SampleBlock, a (u_array, v_array) tuple, an (n, 2) array, or
    any iterable of BivariateSample / 2-tuples.
    """
    if isinstance(pairs, SampleBlock):
        return pairs
    if isinstance(pairs, np.ndarray):
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise ValueError(f"Expected an (n, 2) array, got shape {pairs.shape}")
        return SampleBlock(pairs[:, 0], pairs[:, 1])
    if isinstance(pairs, tuple) and len(pairs) == 2 and all(isinstance(p, np.ndarray) for p in pairs):
        return SampleBlock(pairs[0], pairs[1])
    arr = np.asarray(list(pairs), dtype=np.float64)
    if arr.size == 0:
        return SampleBlock(np.empty(0), np.empty(0))
    return as_block(arr)


@dataclass(frozen=True)
class SimConfig:
    """Everything needed to reproduce one simulation run."""

    method: CopulaMethod = CopulaMethod.SAME_CHI2
    rho: float = 0.9
    nu: float = 3.0
    n_samples: int = 1_000_000
    seed: int = 1

    def __post_init__(self):
        object.__setattr__(self, "method", CopulaMethod.parse(self.method))
        object.__setattr__(self, "rho", check_rho(self.rho))
        object.__setattr__(self, "nu", check_nu(common_nu(self.nu)))
        if isinstance(self.n_samples, bool) or int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise DomainError(f"n_samples must be a positive integer, got {self.n_samples!r}")
        object.__setattr__(self, "n_samples", int(self.n_samples))
        if int(self.seed) != self.seed or not 0 <= int(self.seed) <= UINT64_MAX:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))

    def to_dict(self):
        return {
            "method": self.method.value,
            "rho": self.rho,
            "nu": self.nu,
            "n_samples": self.n_samples,
            "seed": self.seed,
        }


class Construction(ABC):
    """Base class for a bivariate heavy-tailed construction."""

    method: CopulaMethod
    # Constructions whose stated correlation needs a finite variance
    requires_finite_variance = False

    def validate(self, rho, nu):
        """Check parameters before any draw is taken."""
        rho = check_rho(rho)
        nu = check_nu(common_nu(nu), finite_variance=self.requires_finite_variance)
        return rho, nu

    @abstractmethod
    def sample(self, stream, rho, nu, size=None):
        """Return (u, v) as floats, or arrays of length ``size``."""
        ...

    def draw(self, stream, rho, nu):
        u, v = self.sample(stream, rho, nu)
        return BivariateSample(float(u), float(v))

    def block(self, stream, rho, nu, size):
        u, v = self.sample(stream, rho, nu, size)
        return SampleBlock(u, v)
