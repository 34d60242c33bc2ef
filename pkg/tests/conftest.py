import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from spheredesign.designs import load_bundled

# property tests must not flake between runs
settings.register_profile(
    "deterministic", derandomize=True, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("deterministic")


@pytest.fixture(scope="session")
def sf008():
    return load_bundled("sf008.00045")


@pytest.fixture(scope="session")
def sf016():
    return load_bundled("sf016.00161")


@pytest.fixture(scope="session")
def sf020():
    return load_bundled("sf020.00222")


@pytest.fixture(scope="session")
def sf032():
    return load_bundled("sf032.00605")


@pytest.fixture
def rng():
    return np.random.default_rng(71)
