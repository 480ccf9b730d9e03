"""Tests for src.tools.oracle and the fast paths it checks."""

import math
import random

import pytest
from sympy import primerange

from src.errors import InvalidArgument, ResourceExceeded
from src.state import BruteCoker, IntMatrix2x2
from src.tools.arith import is_square_unit_mod, jacobi, legendre
from src.tools.cohomology import restriction_matrix, smith_normal_form
from src.tools.oracle import brute_coker, brute_legendre, brute_square_unit


def _matrix(m11, m12, m21, m22):
    return IntMatrix2x2(m11=m11, m12=m12, m21=m21, m22=m22)


def test_brute_square_unit_examples():
    assert brute_square_unit(24, 25)
    assert brute_square_unit(1, 97)
    assert brute_square_unit(1, 1)
    assert not brute_square_unit(2, 5)
    assert not brute_square_unit(18, 25)


def test_brute_square_unit_guards():
    with pytest.raises(ResourceExceeded):
        brute_square_unit(1, 10**6 + 1)
    with pytest.raises(InvalidArgument):
        brute_square_unit(5, 25)


@pytest.mark.parametrize("x, p, expected", [(2, 5, -1), (4, 5, 1), (10, 13, 1), (26, 13, 0)])
def test_brute_legendre_examples(x, p, expected):
    assert brute_legendre(x, p) == expected


def test_brute_legendre_guards():
    with pytest.raises(InvalidArgument):
        brute_legendre(1, 2)
    with pytest.raises(ResourceExceeded):
        brute_legendre(1, 100_003)


@pytest.mark.parametrize(
    "matrix, expected",
    [
        (_matrix(1, 0, 0, 5), BruteCoker(order=5, cyclic=True)),
        (_matrix(-3, 4, 25, -25), BruteCoker(order=25, cyclic=True)),
        (_matrix(2, 0, 0, 2), BruteCoker(order=4, cyclic=False)),
        (_matrix(1, 2, 2, 4), BruteCoker(order=None, cyclic=True)),
        (_matrix(2, 4, 4, 8), BruteCoker(order=None, cyclic=False)),
        (_matrix(0, 0, 0, 0), BruteCoker(order=None, cyclic=False)),
        (_matrix(1, 0, 0, -1), BruteCoker(order=1, cyclic=True)),
    ],
)
def test_brute_coker_examples(matrix, expected):
    assert brute_coker(matrix) == expected


def test_brute_coker_guard_is_on_determinant():
    with pytest.raises(ResourceExceeded):
        brute_coker(_matrix(1001, 0, 0, 1))
    # large entries are fine while |det| stays small
    assert brute_coker(_matrix(1000, 999, 1001, 1000)) == BruteCoker(order=1, cyclic=True)
    assert brute_coker(_matrix(50, 0, 0, 3)) == BruteCoker(order=150, cyclic=True)
    assert brute_coker(_matrix(30, 0, 0, 30)) == BruteCoker(order=900, cyclic=False)


def test_brute_coker_on_family_matrix(p5_family):
    matrix = restriction_matrix(p5_family)
    assert (matrix.m11, matrix.m12, matrix.m21, matrix.m22) == (-3, -4, 25, 25)
    assert brute_coker(matrix) == BruteCoker(order=25, cyclic=True)


@pytest.mark.slow
def test_square_unit_decision_matches_enumeration():
    rng = random.Random(7)
    for n in sorted({rng.randint(2, 5000) for _ in range(100)}):
        for x in range(1, n):
            if math.gcd(x, n) == 1:
                assert is_square_unit_mod(x, n).is_square == brute_square_unit(x, n), (x, n)


@pytest.mark.slow
def test_symbols_match_enumeration_below_1000():
    for p in primerange(3, 1000):
        p = int(p)
        for x in range(p):
            expected = brute_legendre(x, p)
            assert legendre(x, p) == expected
            assert jacobi(x, p) == expected


def test_snf_matches_brute_coker_on_random_matrices():
    rng = random.Random(11)
    for _ in range(500):
        m = _matrix(*(rng.randint(-20, 20) for _ in range(4)))
        snf = smith_normal_form(m)
        brute = brute_coker(m)
        assert brute.order == (snf.d1 * snf.d2 if m.det else None)
        assert brute.cyclic == (snf.d1 == 1)
