"""
Linkform - Oracle Tools Module

Brute-force reference implementations. They define correctness for the
fast paths in arith and cohomology and are only used by the test suite and
the verification run, never as a classifier.
"""

from functools import lru_cache
from math import gcd

import numpy as np
from sympy import factorint

from ..errors import InvalidArgument, ResourceExceeded
from ..state import BruteCoker, IntMatrix2x2
from .arith import SymbolValue

SQUARE_UNIT_LIMIT = 10**6
LEGENDRE_LIMIT = 10**5
COKER_DET_LIMIT = 1000


@lru_cache(maxsize=256)
def _unit_squares(m: int) -> frozenset[int]:
    lam = np.arange(m, dtype=np.int64)
    units = lam[np.gcd(lam, m) == 1]
    return frozenset((units * units % m).tolist())


@lru_cache(maxsize=256)
def _squares_mod(p: int) -> frozenset[int]:
    k = np.arange(1, p, dtype=np.int64)
    return frozenset((k * k % p).tolist())


def brute_square_unit(x: int, n: int) -> bool:
    """
    Whether the unit x is lambda^2 mod |n| for some unit lambda, by exhaustion.

    Raises:
        InvalidArgument: if gcd(x, n) != 1
        ResourceExceeded: if |n| > 10^6
    """
    m = abs(n)
    if m > SQUARE_UNIT_LIMIT:
        raise ResourceExceeded(f"brute_square_unit: |n| = {m} is over {SQUARE_UNIT_LIMIT}")
    if m == 0 or gcd(x, m) != 1:
        raise InvalidArgument(f"{x} is not a unit mod {m}")
    if m == 1:
        return True
    return x % m in _unit_squares(m)


def brute_legendre(x: int, p: int) -> SymbolValue:
    """Legendre symbol by listing every square mod p."""
    if p <= 2 or p % 2 == 0:
        raise InvalidArgument(f"{p} is not an odd prime")
    if p > LEGENDRE_LIMIT:
        raise ResourceExceeded(f"brute_legendre: p = {p} is over {LEGENDRE_LIMIT}")
    residue = x % p
    if residue == 0:
        return 0
    return 1 if residue in _squares_mod(p) else -1


def brute_coker(matrix: IntMatrix2x2) -> BruteCoker:
    """
    Cokernel of a small integer 2x2 matrix by enumeration.

    Z^2 / im(M) is counted inside the box [0, D)^2 with D = |det M|, which
    contains D Z^2 in the image. v lies in the image iff adj(M) v = 0 mod D.
    The group is cyclic iff for every prime p | D at most p classes are
    killed by p.

    Args:
        matrix: Any entries, with |det M| at most 1000

    Returns:
        BruteCoker; for det = 0 the order is None and cyclic holds only
        for a rank-one matrix with content 1 (cokernel Z)

    Raises:
        ResourceExceeded: if |det M| > 1000
    """
    det = matrix.det
    if det == 0:
        content = gcd(gcd(matrix.m11, matrix.m12), gcd(matrix.m21, matrix.m22))
        if content == 0:
            return BruteCoker(order=None, cyclic=False)
        return BruteCoker(order=None, cyclic=content == 1)

    size = abs(det)
    if size > COKER_DET_LIMIT:
        raise ResourceExceeded(f"brute_coker: |det| = {size} is over {COKER_DET_LIMIT}")
    if size == 1:
        return BruteCoker(order=1, cyclic=True)

    # only adj(M) mod D matters; reducing keeps the products inside int64
    matrix = IntMatrix2x2(
        m11=matrix.m11 % size, m12=matrix.m12 % size, m21=matrix.m21 % size, m22=matrix.m22 % size
    )

    x, y = np.meshgrid(np.arange(size, dtype=np.int64), np.arange(size, dtype=np.int64))
    w1 = matrix.m22 * x - matrix.m12 * y
    w2 = matrix.m11 * y - matrix.m21 * x

    def in_image(scale: int) -> np.ndarray:
        return ((scale * w1) % size == 0) & ((scale * w2) % size == 0)

    members = int(in_image(1).sum())
    order = size * size // members

    cyclic = True
    for p in factorint(size):
        killed = int(in_image(int(p)).sum()) // members
        if killed > p:
            cyclic = False
            break
    return BruteCoker(order=order, cyclic=cyclic)
