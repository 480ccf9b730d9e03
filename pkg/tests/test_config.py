"""Tests for src.config."""

import pytest

from src.config import DEFAULT_FACTOR_LIMIT, load_settings
from src.errors import ConfigurationError


def test_defaults():
    settings = load_settings({})
    assert settings.factor_limit == DEFAULT_FACTOR_LIMIT == 2**128
    assert settings.workers == 1


@pytest.mark.parametrize("raw, expected", [("1000", 1000), ("2**64", 2**64), ("2^40", 2**40), ("1_000_000", 10**6)])
def test_factor_limit_forms(raw, expected):
    assert load_settings({"LINKFORM_FACTOR_LIMIT": raw}).factor_limit == expected


def test_workers_and_budget():
    settings = load_settings({"LINKFORM_WORKERS": "4", "LINKFORM_POLLARD_BUDGET": "500"})
    assert settings.workers == 4
    assert settings.pollard_budget == 500


@pytest.mark.parametrize(
    "env",
    [
        {"LINKFORM_FACTOR_LIMIT": "abc"},
        {"LINKFORM_FACTOR_LIMIT": "1"},
        {"LINKFORM_WORKERS": "0"},
        {"LINKFORM_POLLARD_BUDGET": "2**x"},
    ],
)
def test_malformed_settings(env):
    with pytest.raises(ConfigurationError):
        load_settings(env)
