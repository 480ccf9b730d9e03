"""Tests for src.tools.search."""

from collections import defaultdict

import pytest

from src.errors import InvalidArgument
from src.state import CensusRow, SearchSpec, VerdictKind
from src.tools.family import canonical_key, derived, validate
from src.tools.search import (
    classify_row,
    construct_corollary,
    corollary_census,
    distinct_types_report,
    enumerate_census,
    find_m,
    primes_one_mod_four,
)


@pytest.mark.parametrize("p, m", [(5, 3), (13, 2), (17, 3)])
def test_find_m_examples(p, m):
    assert find_m(p) == m


@pytest.mark.parametrize("p", [7, 21, 3, 1, -3])
def test_find_m_rejects_bad_primes(p):
    with pytest.raises(InvalidArgument):
        find_m(p)


def test_construct_examples():
    assert construct_corollary(5).entries() == (5, 5, -7, 5, -7, 9)
    assert construct_corollary(13).entries() == (13, -3, 5, 13, 5, -7)
    with pytest.raises(InvalidArgument):
        construct_corollary(7)


def test_constructions_up_to_97():
    primes = primes_one_mod_four(97)
    assert primes == [5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97]
    for p in primes:
        params = construct_corollary(p)
        inv = derived(params)
        assert inv.h4_order == p * p
        m = find_m(p)
        assert (inv.a0, inv.b0) == (-m, -(m + 1))
        row = classify_row(params)
        assert row.verdict == VerdictKind.NON_STANDARD
        assert row.egs_prime == p


def test_primes_one_mod_four_small_limits():
    assert primes_one_mod_four(4) == []
    assert primes_one_mod_four(5) == [5]


def test_pinned_census_contains_corollary_family(p5_family):
    spec = SearchSpec(bound=11, pin_p=5, verdict_filter="nonstandard")
    rows = list(enumerate_census(spec, workers=1))
    assert rows
    assert p5_family in [row.params for row in rows]
    assert all(row.verdict == VerdictKind.NON_STANDARD for row in rows)
    assert all(row.params.a.x1 == row.params.b.x1 == 5 for row in rows)


def test_smallest_census():
    rows = list(enumerate_census(SearchSpec(bound=1), workers=1))
    assert len(rows) == 1
    row = rows[0]
    assert row.params.entries() == (1, 1, 1, 1, 1, 1)
    assert row.n == 0
    assert row.verdict == VerdictKind.INFINITE_TORSION
    assert row.rho is None


def test_coprime_nonstandard_census_is_empty():
    spec = SearchSpec(bound=9, coprime_only=True, verdict_filter="nonstandard")
    assert list(enumerate_census(spec, workers=1)) == []


def test_census_filters_and_order():
    spec = SearchSpec(bound=5, require_finite=True, min_order=2, max_order=500)
    rows = list(enumerate_census(spec, workers=1))
    assert rows
    assert all(row.n != 0 and 2 <= row.h4_order <= 500 for row in rows)
    keys = [canonical_key(row.params) for row in rows]
    assert keys == sorted(keys)


def test_census_is_deterministic_across_workers():
    spec = SearchSpec(bound=5)
    first = list(enumerate_census(spec, workers=1))
    second = list(enumerate_census(spec, workers=1))
    pooled = list(enumerate_census(spec, workers=2))
    assert first == second == pooled


def test_rows_with_equal_keys_agree():
    rows = list(enumerate_census(SearchSpec(bound=9, pin_p=5, dedup=False), workers=1))
    groups = defaultdict(set)
    for row in rows:
        groups[canonical_key(row.params)].add((row.n, row.rho, row.kappa, row.verdict))
    assert all(len(values) == 1 for values in groups.values())


def test_pin_must_be_one_mod_four():
    with pytest.raises(InvalidArgument):
        list(enumerate_census(SearchSpec(bound=9, pin_p=7)))


def test_pin_outside_bound_is_empty():
    assert list(enumerate_census(SearchSpec(bound=5, pin_p=13))) == []


def test_corollary_census_distinct_orders():
    rows = list(corollary_census(200))
    assert len(rows) >= 10
    assert all(row.verdict == VerdictKind.NON_STANDARD for row in rows)
    report = distinct_types_report(rows)
    assert len(report.orders) == len(rows)
    assert report.orders == sorted(p * p for p in primes_one_mod_four(200))


def test_distinct_types_report():
    rows = [classify_row(construct_corollary(p)) for p in (5, 13, 17)]
    report = distinct_types_report(rows)
    assert report.orders == [25, 169, 289]
    assert report.counts == {25: 1, 169: 1, 289: 1}
    assert report.representatives[25] == construct_corollary(5)

    assert distinct_types_report([]).counts == {}

    standard = [classify_row(validate((1, 1, 1, 1, 5, 1)))]
    assert distinct_types_report(standard).counts == {}


def test_resource_exceeded_rows_are_kept(monkeypatch, p5_family):
    monkeypatch.setenv("LINKFORM_FACTOR_LIMIT", "10")
    row = classify_row(p5_family)
    assert isinstance(row, CensusRow)
    assert row.verdict is None
    assert row.error is not None and "guard" in row.error
    assert row.n == -25
