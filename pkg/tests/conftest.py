import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "anafrac",
    derandomize=True,
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("anafrac")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def const_one(t):
    return np.ones_like(np.asarray(t, dtype=float))


def ident(t):
    return np.asarray(t, dtype=float)


@pytest.fixture
def one():
    return const_one


@pytest.fixture
def theta():
    return ident
