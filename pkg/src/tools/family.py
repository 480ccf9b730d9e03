"""
Linkform - Family Tools Module

Validation of the parameters (a, b) of M(a, b) and the derived invariants
a0, b0 and n.

The family admits general a1, b1 = 1 mod 4 (not only a1 = b1 = 1): the
non-standard examples need a prime p dividing gcd(a1, b1).
"""

import random
import re
from math import gcd
from typing import Union

from ..errors import InvalidArgument, ParameterViolation
from ..state import (
    CongruenceViolation,
    FamilyParams,
    FreenessViolation,
    ManifoldInvariants,
    ParamTriple,
)

Violation = Union[CongruenceViolation, FreenessViolation]

_PARAM_TEXT = re.compile(r"^(-?\d+),(-?\d+),(-?\d+);(-?\d+),(-?\d+),(-?\d+)$")


def parse_params(text: str) -> tuple[int, int, int, int, int, int]:
    """
    Parse "a1,a2,a3;b1,b2,b3" (signed decimals, no spaces).

    Raises:
        InvalidArgument: with the position of the first offending character
    """
    match = _PARAM_TEXT.match(text)
    if match:
        a1, a2, a3, b1, b2, b3 = (int(g) for g in match.groups())
        return a1, a2, a3, b1, b2, b3

    # locate the first character that breaks the grammar
    expected_separators = [",", ",", ";", ",", ","]
    pos = 0
    for i in range(6):
        if pos < len(text) and text[pos] == "-":
            pos += 1
        digits = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == digits:
            raise InvalidArgument(f"parse error at position {pos}: expected an integer in {text!r}")
        if i < 5:
            if pos >= len(text) or text[pos] != expected_separators[i]:
                raise InvalidArgument(
                    f"parse error at position {pos}: expected {expected_separators[i]!r} in {text!r}"
                )
            pos += 1
    raise InvalidArgument(f"parse error at position {pos}: trailing characters in {text!r}")


def format_params(p: FamilyParams) -> str:
    """Inverse of parse_params."""
    a, b = p.a.as_tuple(), p.b.as_tuple()
    return f"{a[0]},{a[1]},{a[2]};{b[0]},{b[1]},{b[2]}"


def violations(raw: tuple[int, ...]) -> list[Violation]:
    """Every violated family condition of six raw integers, congruences first."""
    if len(raw) != 6:
        raise InvalidArgument(f"expected six parameters, got {len(raw)}")

    found: list[Violation] = []
    for side, offset in (("a", 0), ("b", 3)):
        for index in range(3):
            value = raw[offset + index]
            if value % 4 != 1:
                found.append(CongruenceViolation(side=side, index=index + 1, value=value, residue=value % 4))

    for side, offset in (("a", 0), ("b", 3)):
        x1, x2, x3 = raw[offset : offset + 3]
        for sign, combined in (("+", x2 + x3), ("-", x2 - x3)):
            g = gcd(x1, combined)
            if g != 1:
                found.append(FreenessViolation(side=side, sign=sign, gcd=g))
    return found


def validate(raw: tuple[int, ...]) -> FamilyParams:
    """
    Validate six integers as the parameters of M(a, b).

    Conditions: every entry = 1 mod 4, and gcd(x1, x2 + x3) = gcd(x1, x2 - x3) = 1
    for x = a and x = b.

    Args:
        raw: a1, a2, a3, b1, b2, b3

    Returns:
        FamilyParams

    Raises:
        ParameterViolation: listing every violated condition
    """
    found = violations(tuple(raw))
    if found:
        raise ParameterViolation(found)

    a1, a2, a3, b1, b2, b3 = raw
    # gcd(x1, x2, x3) = 1 follows from the freeness conditions
    assert gcd(gcd(a1, a2), a3) == 1 and gcd(gcd(b1, b2), b3) == 1
    return FamilyParams(a=ParamTriple(x1=a1, x2=a2, x3=a3), b=ParamTriple(x1=b1, x2=b2, x3=b3))


def _eighth(x2: int, x3: int) -> int:
    diff = x2 * x2 - x3 * x3
    q, r = divmod(diff, 8)
    # forced by x2, x3 = 1 mod 4
    assert r == 0, f"{x2}^2 - {x3}^2 is not divisible by 8"
    return q


def derived(p: FamilyParams) -> ManifoldInvariants:
    """
    Derived invariants of M(a, b).

    Returns:
        a0 = (a2^2 - a3^2)/8, b0 = (b2^2 - b3^2)/8, n = a1^2 b0 - a0 b1^2, |n|
    """
    a0 = _eighth(p.a.x2, p.a.x3)
    b0 = _eighth(p.b.x2, p.b.x3)
    n = p.a.x1**2 * b0 - a0 * p.b.x1**2
    return ManifoldInvariants(a0=a0, b0=b0, n=n, h4_order=abs(n))


def swap(p: FamilyParams) -> FamilyParams:
    """M(b, a)."""
    return FamilyParams(a=p.b, b=p.a)


def canonical_key(p: FamilyParams) -> tuple[int, int, int, int, int, int]:
    """(a1, a2^2, a3^2, b1, b2^2, b3^2): derived() depends only on this key."""
    a1, a2, a3, b1, b2, b3 = p.entries()
    return (a1, a2 * a2, a3 * a3, b1, b2 * b2, b3 * b3)


def is_bundle_subfamily(p: FamilyParams) -> bool:
    """True for a1 = b1 = 1, the members that are S^3-bundles over S^4."""
    return p.a.x1 == 1 and p.b.x1 == 1


def sign_normalize(magnitude: int) -> int:
    """The unique value of +/-magnitude that is 1 mod 4 (magnitude odd)."""
    if magnitude % 2 == 0:
        raise InvalidArgument(f"{magnitude} is even; no sign makes it 1 mod 4")
    q = abs(magnitude)
    return q if q % 4 == 1 else -q


def admissible_values(bound: int) -> list[int]:
    """All v = 1 mod 4 with |v| <= bound, ascending."""
    start = -bound + ((1 + bound) % 4)
    return list(range(start, bound + 1, 4))


def random_family(rng: random.Random, bound: int = 401) -> FamilyParams:
    """Draw a valid family with entries in [-bound, bound] (rejection sampling)."""
    values = admissible_values(bound)
    if not values:
        raise InvalidArgument(f"no admissible entries with |v| <= {bound}")
    while True:
        raw = tuple(rng.choice(values) for _ in range(6))
        if not violations(raw):
            return validate(raw)
