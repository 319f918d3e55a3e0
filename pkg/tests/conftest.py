import pytest

from tcopula.copulas.base import CopulaMethod, SimConfig
from tcopula.copulas.generator import generate_arrays

RHO = 0.9
NU = 3.0
N_SAMPLES = 1_000_000
SEED = 1


@pytest.fixture(autouse=True)
def fixed_timestamp(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    monkeypatch.delenv("TCOPULA_SEED", raising=False)


@pytest.fixture(scope="session")
def million_draws():
    """One 10^6-draw run per construction at rho=0.9, nu=3."""
    return {
        method: generate_arrays(SimConfig(method=method, rho=RHO, nu=NU, n_samples=N_SAMPLES, seed=SEED))
        for method in CopulaMethod
    }
