"""
Linkform - Classification Tools Module

Decides whether a linking form on Z_|n| is standard and turns the answer
into the S^3-bundle homotopy verdict. Also provides the fast sufficient
test for non-standard forms: a prime p = 1 mod 4 dividing gcd(a1, b1)
with a0 a non-square and b0 a square mod p.

A cyclic linking form rho / n is standard iff rho is the square of a unit
mod |n|. The orientation sign is unknown, so both +rho and -rho are tried.
"""

from math import gcd
from typing import Optional

from ..errors import CertificateError, InfiniteTorsion, InvalidArgument
from ..state import EgsWitness, FamilyParams, LinkingFormData, Verdict, VerdictKind
from .arith import factorize, is_square_unit_mod, legendre
from .family import derived
from .linking import bezout_pair, linking_form


def _check_witness(verdict: Verdict) -> Verdict:
    if verdict.kind != VerdictKind.STANDARD:
        return verdict
    m = abs(verdict.n)
    assert verdict.root is not None and verdict.sign is not None and verdict.rho is not None
    if (verdict.root**2 - verdict.sign * verdict.rho) % m or gcd(verdict.root, m) != 1:
        raise CertificateError(f"standard witness {verdict.root} does not verify for n = {verdict.n}")
    return verdict


def classify_residue(n: int, rho: int) -> Verdict:
    """
    Classify the cyclic linking form lk(1, 1) = +/- rho / n.

    Args:
        n: Signed order, non-zero
        rho: Unit residue mod |n|

    Returns:
        TrivialTorsion for |n| = 1; Standard with (root, sign) when
        root^2 = sign * rho; otherwise NonStandard with both obstructions

    Raises:
        InfiniteTorsion: if n = 0
        InvalidArgument: if rho is not a unit mod n
        ResourceExceeded: propagated from factorization
    """
    m = abs(n)
    if m == 0:
        raise InfiniteTorsion("no linking form on an infinite group")
    if m == 1:
        return Verdict(kind=VerdictKind.TRIVIAL_TORSION, n=n, rho=0)

    residue = rho % m
    if gcd(residue, m) != 1:
        raise InvalidArgument(f"rho = {rho} is not a unit mod {m}")

    plus = is_square_unit_mod(residue, m)
    if plus.is_square:
        return _check_witness(
            Verdict(kind=VerdictKind.STANDARD, n=n, rho=residue, sign=1, root=plus.root)
        )

    minus = is_square_unit_mod(m - residue, m)
    if minus.is_square:
        return _check_witness(
            Verdict(
                kind=VerdictKind.STANDARD,
                n=n,
                rho=residue,
                sign=-1,
                root=minus.root,
                obstruction_plus=plus.obstruction,
            )
        )

    return Verdict(
        kind=VerdictKind.NON_STANDARD,
        n=n,
        rho=residue,
        obstruction_plus=plus.obstruction,
        obstruction_minus=minus.obstruction,
    )


def is_standard(lf: LinkingFormData) -> Verdict:
    """Standardness verdict for computed linking-form data."""
    return classify_residue(lf.n, lf.rho)


def conclusion(verdict: Verdict) -> str:
    """Human-readable homotopy conclusion for a verdict."""
    if verdict.kind == VerdictKind.INFINITE_TORSION:
        return "H^4 is infinite cyclic (n = 0); the S^3-bundle criterion needs finite cyclic H^4: no verdict"
    if verdict.kind == VerdictKind.TRIVIAL_TORSION:
        return "H^4 = 0, linking form on the zero group: homotopy S^3-bundle: yes"
    if verdict.kind == VerdictKind.STANDARD:
        return (
            "standard linking form: homotopy equivalent (hence PL-homeomorphic) "
            "to an S^3-bundle over S^4: yes"
        )
    return (
        "non-standard linking form for both orientations: "
        "not even homotopy equivalent to an S^3-bundle over S^4"
    )


def bundle_verdict(p: FamilyParams) -> tuple[Verdict, str]:
    """
    Homotopy verdict for M(a, b).

    Returns:
        (verdict, conclusion); InfiniteTorsion when n = 0
    """
    inv = derived(p)
    if inv.n == 0:
        verdict = Verdict(kind=VerdictKind.INFINITE_TORSION, n=0)
        return verdict, conclusion(verdict)
    verdict = is_standard(linking_form(p))
    return verdict, conclusion(verdict)


def egs_fast_check(p: FamilyParams) -> Optional[EgsWitness]:
    """
    Sufficient test for a non-standard linking form.

    Scans the primes p = 1 mod 4 dividing gcd(a1, b1) in increasing order
    and returns the first with (a0/p) = -1 and (b0/p) = +1. A witness
    guarantees NonStandard; no witness proves nothing.

    Raises:
        InfiniteTorsion: if n = 0
    """
    inv = derived(p)
    if inv.n == 0:
        raise InfiniteTorsion("n = 0")

    shared = gcd(p.a.x1, p.b.x1)
    if shared == 1:
        return None

    for prime in factorize(shared).primes:
        if prime % 4 != 1:
            continue
        if legendre(inv.a0, prime) == -1 and legendre(inv.b0, prime) == 1:
            # e0 a0 = 1 mod p forces e0 to be a non-square as well
            _, e0 = bezout_pair(p.a.x1, inv.a0)
            if legendre(e0, prime) != -1:
                raise CertificateError(f"e0 = {e0} is a square mod {prime}")
            return EgsWitness(p=prime)
    return None


def admits_nonstandard(n: int) -> bool:
    """
    Whether a family member with this n can carry a non-standard form at all.

    Non-standard forms need gcd(a1, b1) != 1, which forces p^2 | n for some
    prime p. Square-free n (for example n = 5) therefore only ever carry
    standard forms within the family, even though non-standard forms on
    Z_5 exist.
    """
    if n == 0 or abs(n) == 1:
        return False
    return any(e >= 2 for _, e in factorize(abs(n)).factors)
