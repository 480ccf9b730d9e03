"""
Linkform - Arithmetic Tools Module

Exact integer and modular arithmetic: extended gcd, Legendre and Jacobi
symbols, factorization, modular square roots and the square-unit decision
modulo a composite.

All functions are pure. Residues are returned in [0, |n|).
"""

from functools import lru_cache
from math import gcd
from typing import Literal, Optional

from sympy import isprime, sieve
from sympy.ntheory.modular import crt

from ..config import load_settings
from ..errors import CertificateError, InvalidArgument, ResourceExceeded
from ..state import Factorization, PrimePower, SquareTest

SymbolValue = Literal[-1, 0, 1]

TRIAL_DIVISION_LIMIT = 10**6

# Polynomial constants x^2 + c tried in order by the Pollard-Brent splitter.
# Fixed so that factorizations are reproducible run to run.
FACTOR_SEED_SEQUENCE = (1, 3, 5, 7, 11, 13, 17, 19, 23, 29)
_BRENT_BATCH = 128


# --- gcd ---

def ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    """
    Extended Euclidean algorithm with a canonical Bezout pair.

    Among all (u, v) with u*x + v*y = g, returns the one with |u| minimal
    (|u| <= |y| / (2g) when y != 0); on a tie the non-negative u wins.

    Args:
        x: First integer
        y: Second integer

    Returns:
        (g, u, v) with g = gcd(|x|, |y|) >= 0

    Raises:
        InvalidArgument: if x = y = 0
    """
    if x == 0 and y == 0:
        raise InvalidArgument("ext_gcd(0, 0) is undefined")

    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t

    g, u, v = old_r, old_s, old_t
    if g < 0:
        g, u, v = -g, -u, -v

    if y == 0:
        return g, u, v

    step = abs(y) // g
    u %= step
    if step - u < u:
        u -= step
    v, rem = divmod(g - u * x, y)
    if rem != 0 or u * x + v * y != g:
        raise CertificateError(f"Bezout pair for ({x}, {y}) did not verify")
    return g, u, v


# --- primality and symbols ---

def is_prime(n: int) -> bool:
    """
    Primality test through sympy.

    Below 2^64 the answer is exact (Miller-Rabin on a fixed base set).
    Above 2^64, which the default factorization guard of 2^128 allows,
    sympy runs BPSW: no composite passing it is known, but the result is
    not a primality proof. Factorizations with a prime factor over 2^64
    are certified only up to that test.
    """
    return n > 1 and bool(isprime(n))


def _require_odd_prime(p: int) -> None:
    if p <= 2 or p % 2 == 0 or not is_prime(p):
        raise InvalidArgument(f"{p} is not an odd prime")


def legendre(x: int, p: int) -> SymbolValue:
    """
    Legendre symbol (x/p) by Euler's criterion.

    Args:
        x: Any integer
        p: Odd prime

    Returns:
        1 if x is a non-zero square mod p, -1 if a non-square, 0 if p | x

    Raises:
        InvalidArgument: if p is even or composite
    """
    _require_odd_prime(p)
    residue = pow(x % p, (p - 1) // 2, p)
    if residue == 0:
        return 0
    return 1 if residue == 1 else -1


def jacobi(x: int, m: int) -> SymbolValue:
    """Jacobi symbol (x/m) for odd m >= 1, by quadratic reciprocity (no factoring)."""
    if m <= 0 or m % 2 == 0:
        raise InvalidArgument(f"Jacobi symbol needs an odd positive modulus, got {m}")

    a = x % m
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


# --- factorization ---

@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in sieve.primerange(2, TRIAL_DIVISION_LIMIT))


def _pollard_brent(n: int, c: int, budget: int) -> Optional[int]:
    """One Pollard-Brent attempt with f(x) = x^2 + c started at 2. None when the budget runs out."""
    if n % 2 == 0:
        return 2

    y, r, q, g = 2, 1, 1, 1
    x = ys = y
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(_BRENT_BATCH, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += _BRENT_BATCH
        spent += r
        r *= 2
        if spent > budget:
            return None

    if g == n:
        # batch overshot: replay one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break

    return g if 1 < g < n else None


def _split(n: int, budget: int) -> int:
    for c in FACTOR_SEED_SEQUENCE:
        d = _pollard_brent(n, c, budget)
        if d is not None and n % d == 0:
            return d
    raise ResourceExceeded(f"could not split {n} within the Pollard-Brent budget")


@lru_cache(maxsize=16384)
def _factorize(n: int, limit: int, budget: int) -> Factorization:
    m = abs(n)
    if m >= limit:
        raise ResourceExceeded(f"|{n}| exceeds the factorization guard {limit}")

    counts: dict[int, int] = {}
    rest = m
    for p in _small_primes():
        if p * p > rest:
            break
        while rest % p == 0:
            rest //= p
            counts[p] = counts.get(p, 0) + 1

    pending = [rest] if rest > 1 else []
    while pending:
        c = pending.pop()
        if is_prime(c):
            counts[c] = counts.get(c, 0) + 1
            continue
        d = _split(c, budget)
        pending.extend((d, c // d))

    factors = tuple(sorted(counts.items()))
    product = 1
    for p, e in factors:
        if not is_prime(p):
            raise CertificateError(f"factor {p} of {n} is not prime")
        product *= p**e
    if product != m:
        raise CertificateError(f"factors of {n} re-multiply to {product}")

    return Factorization(value=n, sign=-1 if n < 0 else 1, factors=factors)


def factorize(n: int) -> Factorization:
    """
    Complete prime factorization of a non-zero integer.

    Trial division below 10^6, then Pollard-Brent on the cofactor with a
    fixed seed sequence. Every factor is certified prime and the product is
    checked before returning.

    Args:
        n: Non-zero integer with |n| below the configured guard

    Returns:
        Factorization of n

    Raises:
        InvalidArgument: if n = 0
        ResourceExceeded: if |n| is over the guard or a cofactor cannot be split
    """
    if n == 0:
        raise InvalidArgument("cannot factorize 0")
    settings = load_settings()
    return _factorize(n, settings.factor_limit, settings.pollard_budget)


# --- square roots ---

def _tonelli_shanks(a: int, p: int) -> int:
    a %= p
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)

    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1

    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1

    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _unit_square_prime_power(x: int, p: int, e: int) -> bool:
    if p == 2:
        if e == 1:
            return True
        if e == 2:
            return x % 4 == 1
        return x % 8 == 1
    return legendre(x, p) == 1


def sqrt_mod_prime_power(x: int, p: int, e: int) -> int:
    """
    Square root of a unit x modulo p^e.

    Odd p: Tonelli-Shanks mod p, then Hensel lifting. p = 2: the root is
    built bit by bit from 1, which is valid once x = 1 mod 8.

    Returns:
        The smaller of the two roots +/-r in [0, p^e)

    Raises:
        InvalidArgument: if x is not a unit square mod p^e
    """
    pe = p**e
    x %= pe
    if x % p == 0 or not _unit_square_prime_power(x, p, e):
        raise InvalidArgument(f"{x} is not a unit square mod {p}^{e}")

    if p == 2:
        r = 1
        for k in range(3, e):
            if (r * r - x) % (1 << (k + 1)):
                r += 1 << (k - 1)
    else:
        r = _tonelli_shanks(x, p)
        pk = p
        for _ in range(1, e):
            pk *= p
            r = (r - (r * r - x) * pow(2 * r, -1, pk)) % pk

    r %= pe
    r = min(r, pe - r) if pe > 2 else r
    if r * r % pe != x:
        raise CertificateError(f"square root {r} of {x} mod {pe} did not verify")
    return r


def is_square_unit_mod(x: int, n: int) -> SquareTest:
    """
    Decide whether x is the square of a unit modulo |n|.

    Decided prime power by prime power over the factorization of |n|: for
    odd p^e the Legendre symbol mod p decides; for powers of two the mod
    2 / 4 / 8 rules apply. On success the per-prime-power roots are
    CRT-combined and the result is verified.

    Args:
        x: Integer coprime to n
        n: Non-zero modulus

    Returns:
        SquareTest with a root on success, or the first obstructing prime power

    Raises:
        InvalidArgument: if gcd(x, n) != 1 or n = 0
        ResourceExceeded: propagated from factorize
    """
    m = abs(n)
    if m == 0:
        raise InvalidArgument("modulus must be non-zero")
    if gcd(x, m) != 1:
        raise InvalidArgument(f"{x} is not a unit mod {m}")

    residue = x % m
    if m == 1:
        return SquareTest(is_square=True, modulus=1, root=0)

    roots: list[int] = []
    moduli: list[int] = []
    for p, e in factorize(m).factors:
        if not _unit_square_prime_power(residue, p, e):
            return SquareTest(
                is_square=False,
                modulus=m,
                obstruction=PrimePower(prime=p, exponent=e),
            )
        roots.append(sqrt_mod_prime_power(residue, p, e))
        moduli.append(p**e)

    combined = crt(moduli, roots)
    if combined is None:
        raise CertificateError(f"CRT failed for moduli {moduli}")
    root = int(combined[0]) % m
    root = min(root, m - root)

    if root * root % m != residue or gcd(root, m) != 1:
        raise CertificateError(f"square root {root} of {residue} mod {m} did not verify")
    return SquareTest(is_square=True, modulus=m, root=root)


def non_square_divisor(x: int, n: int) -> Optional[PrimePower]:
    """Smallest prime power d | n such that the unit x is not a square mod d, if any."""
    return is_square_unit_mod(x, n).obstruction
