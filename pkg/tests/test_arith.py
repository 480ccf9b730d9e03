"""Tests for src.tools.arith."""

import math
import random

import pytest
from hypothesis import assume, example, given, settings
from hypothesis.strategies import integers, sampled_from
from pydantic import ValidationError
from sympy import factorint, jacobi_symbol, legendre_symbol, primerange

from src.errors import InvalidArgument, ResourceExceeded
from src.state import PrimePower
from src.tools.arith import (
    ext_gcd,
    factorize,
    is_prime,
    is_square_unit_mod,
    jacobi,
    legendre,
    non_square_divisor,
    sqrt_mod_prime_power,
)
from src.tools.oracle import brute_square_unit

ODD_PRIMES_BELOW_1000 = [int(p) for p in primerange(3, 1000)]


# --- ext_gcd ---

@pytest.mark.parametrize(
    "x, y, expected",
    [(25, -3, (1, 1, 8)), (0, 5, (5, 0, 1)), (12, 8, (4, 1, -1))],
)
def test_ext_gcd_examples(x, y, expected):
    assert ext_gcd(x, y) == expected


def test_ext_gcd_both_zero():
    with pytest.raises(InvalidArgument):
        ext_gcd(0, 0)


@given(integers(-10**12, 10**12), integers(-10**12, 10**12))
@example(7, 0)
@example(-4, 6)
def test_ext_gcd_canonical_pair(x, y):
    assume((x, y) != (0, 0))
    g, u, v = ext_gcd(x, y)
    assert g == math.gcd(x, y)
    assert u * x + v * y == g
    if y != 0:
        assert 2 * abs(u) * g <= abs(y)


# --- symbols ---

@pytest.mark.parametrize("x, p, expected", [(2, 5, -1), (-1, 13, 1), (0, 7, 0), (10, 13, 1)])
def test_legendre_examples(x, p, expected):
    assert legendre(x, p) == expected


@pytest.mark.parametrize("p", [2, 4, 9, 15, 1, -5])
def test_legendre_rejects_non_odd_primes(p):
    with pytest.raises(InvalidArgument):
        legendre(3, p)


@pytest.mark.parametrize("x, m, expected", [(2, 5, -1), (1, 9, 1), (8, 15, 1), (3, 9, 0)])
def test_jacobi_examples(x, m, expected):
    assert jacobi(x, m) == expected


@pytest.mark.parametrize("m", [0, -3, 4])
def test_jacobi_rejects_even_or_non_positive(m):
    with pytest.raises(InvalidArgument):
        jacobi(1, m)


def test_symbols_agree_with_sympy_for_small_primes():
    for p in ODD_PRIMES_BELOW_1000[:40]:
        for x in range(p):
            assert legendre(x, p) == legendre_symbol(x, p)
            assert jacobi(x, p) == legendre(x, p)


def test_minus_one_follows_p_mod_4():
    for p in ODD_PRIMES_BELOW_1000:
        assert legendre(-1, p) == (1 if p % 4 == 1 else -1)


@given(integers(-10**6, 10**6), integers(-10**6, 10**6), sampled_from(ODD_PRIMES_BELOW_1000))
def test_legendre_is_multiplicative(x, y, p):
    assert legendre(x * y, p) == legendre(x, p) * legendre(y, p)


@given(integers(-10**9, 10**9), integers(1, 10**6))
def test_jacobi_matches_sympy(x, m):
    assume(m % 2 == 1)
    assert jacobi(x, m) == jacobi_symbol(x, m)


# --- factorization ---

def test_factorize_examples():
    assert factorize(25).factors == ((5, 2),)
    assert factorize(25).sign == 1

    one = factorize(1)
    assert one.factors == ()
    assert one.sign == 1

    neg = factorize(-360)
    assert neg.sign == -1
    assert neg.factors == ((2, 3), (3, 2), (5, 1))
    assert str(neg) == "-1 * 2^3*3^2*5"


def test_factorize_zero():
    with pytest.raises(InvalidArgument):
        factorize(0)


def test_factorize_splits_large_semiprime():
    p, q = 1_000_000_007, 1_000_000_009
    result = factorize(p * q * 12)
    assert result.factors == ((2, 2), (3, 1), (p, 1), (q, 1))
    assert all(is_prime(prime) for prime in result.primes)


def test_factorize_prime_factor_above_two_to_64():
    # certified by sympy BPSW only, the guard allows it
    mersenne = 2**89 - 1
    assert mersenne > 2**64
    assert is_prime(mersenne)
    assert not is_prime(mersenne * 3)
    assert factorize(-3 * mersenne).factors == ((3, 1), (mersenne, 1))


def test_factorization_records_are_frozen():
    result = factorize(12)
    with pytest.raises(ValidationError):
        result.value = 13
    assert result == factorize(12)
    assert hash(result) == hash(factorize(12))
    assert is_square_unit_mod(4, 5).model_dump()["root"] == 2


@given(integers(-10**12, 10**12))
@settings(max_examples=300)
def test_factorize_remultiplies(n):
    assume(n != 0)
    result = factorize(n)
    product = result.sign
    for p, e in result.factors:
        product *= p**e
    assert product == n
    assert dict(result.factors) == factorint(abs(n))
    assert result.primes == sorted(result.primes)


def test_factorize_respects_guard(monkeypatch):
    monkeypatch.setenv("LINKFORM_FACTOR_LIMIT", "1000")
    assert factorize(999).factors == ((3, 3), (37, 1))
    with pytest.raises(ResourceExceeded):
        factorize(1001)


def test_factorize_guard_accepts_power_notation(monkeypatch):
    monkeypatch.setenv("LINKFORM_FACTOR_LIMIT", "2**10")
    with pytest.raises(ResourceExceeded):
        factorize(1024)


@pytest.mark.slow
def test_factorize_remultiplies_random_sample():
    rng = random.Random(2024)
    for _ in range(10_000):
        n = rng.randint(-10**9, 10**9) or 1
        result = factorize(n)
        product = result.sign
        for p, e in result.factors:
            product *= p**e
        assert product == n


# --- square roots ---

@pytest.mark.parametrize("p, e", [(3, 1), (5, 3), (13, 2), (2, 1), (2, 2), (2, 3), (2, 7), (7, 4)])
def test_sqrt_mod_prime_power_roots_every_unit_square(p, e):
    pe = p**e
    squares = {r * r % pe for r in range(pe) if r % p}
    for x in squares:
        root = sqrt_mod_prime_power(x, p, e)
        assert root * root % pe == x
        assert root <= pe - root or pe <= 2


def test_sqrt_mod_prime_power_rejects_non_squares():
    with pytest.raises(InvalidArgument):
        sqrt_mod_prime_power(2, 5, 1)
    with pytest.raises(InvalidArgument):
        sqrt_mod_prime_power(5, 2, 3)


@pytest.mark.parametrize("n", [2, 3, 25, 24, 1000, -77])
def test_one_is_a_square_unit(n):
    result = is_square_unit_mod(1, n)
    assert result.is_square
    assert result.root == 1


def test_square_unit_examples():
    no = is_square_unit_mod(18, 25)
    assert not no.is_square
    assert no.obstruction == PrimePower(prime=5, exponent=2)

    yes = is_square_unit_mod(24, 25)
    assert yes.is_square
    assert yes.root == 7


@pytest.mark.parametrize(
    "x, n, obstruction",
    [(3, 4, (2, 2)), (5, 8, (2, 3)), (5, 16, (2, 4)), (2, 15, (3, 1)), (7, 3 * 25, (5, 2))],
)
def test_square_unit_obstructions(x, n, obstruction):
    result = is_square_unit_mod(x, n)
    assert not result.is_square
    assert result.obstruction == PrimePower(prime=obstruction[0], exponent=obstruction[1])
    assert non_square_divisor(x, n) == result.obstruction


def test_square_unit_modulus_two_accepts_every_unit():
    assert is_square_unit_mod(3, 2).is_square
    assert non_square_divisor(24, 25) is None


def test_square_unit_rejects_non_units():
    with pytest.raises(InvalidArgument):
        is_square_unit_mod(5, 25)
    with pytest.raises(InvalidArgument):
        is_square_unit_mod(1, 0)


@given(integers(2, 5000), integers(0, 10**6))
@settings(max_examples=500)
def test_square_unit_matches_enumeration(n, x):
    assume(math.gcd(x, n) == 1)
    result = is_square_unit_mod(x, n)
    assert result.is_square == brute_square_unit(x, n)
    if result.is_square:
        assert result.root is not None
        assert result.root * result.root % n == x % n
        assert math.gcd(result.root, n) == 1
    else:
        pe = result.obstruction.value
        assert n % pe == 0
        assert not brute_square_unit(x, pe)
