"""Shared fixtures for the linkform test suite."""

import pytest

from src.tools.family import validate

LINKFORM_ENV = ("LINKFORM_FACTOR_LIMIT", "LINKFORM_POLLARD_BUDGET", "LINKFORM_WORKERS")


@pytest.fixture(autouse=True, scope="session")
def clean_env():
    """Run the suite against the default settings."""
    with pytest.MonkeyPatch.context() as mp:
        for key in LINKFORM_ENV:
            mp.delenv(key, raising=False)
        yield


@pytest.fixture
def p5_family():
    """The constructed non-standard family for p = 5: n = -25, rho = 18."""
    return validate((5, 5, -7, 5, -7, 9))


@pytest.fixture
def p13_family():
    return validate((13, -3, 5, 13, 5, -7))


@pytest.fixture
def bundle_family():
    """a1 = b1 = 1: an S^3-bundle over S^4 with n = 3."""
    return validate((1, 1, 1, 1, 5, 1))


@pytest.fixture
def infinite_family():
    return validate((1, 1, 1, 1, 1, 1))
