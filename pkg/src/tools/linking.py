"""
Linkform - Linking Form Tools Module

Bezout certificates and the residues rho, kappa that describe the linking
form of M(a, b) when H^4 is finite:

    lk(x 1, y 1)   = +/- rho   x y / n  mod 1,   rho   = e1 b1^2 + e0 b0
    lk(x 1', y 1') = +/- kappa x y / n  mod 1,   kappa = f1 a1^2 + f0 a0

where e1 a1^2 + e0 a0 = 1, f1 b1^2 + f0 b0 = 1 and 1' = kappa 1.
"""

from fractions import Fraction
from math import gcd
from typing import Literal

from ..errors import CertificateError, InfiniteTorsion, InvalidArgument
from ..state import BezoutCert, FamilyParams, LinkingFormData
from .arith import ext_gcd
from .family import derived


def bezout_pair(x1: int, x0: int) -> tuple[int, int]:
    """
    Coefficients (c1, c0) with c1 x1^2 + c0 x0 = 1.

    The canonical pair from ext_gcd; when x1^2 = 1 the trivial pair (1, 0).

    Raises:
        InvalidArgument: if gcd(x1^2, x0) != 1 (a freeness violation upstream)
    """
    square = x1 * x1
    if square == 1:
        return 1, 0
    if square == 0 and x0 == 0:
        raise InvalidArgument("bezout_pair(0, 0) is undefined")

    g, c1, c0 = ext_gcd(square, x0)
    if g != 1:
        raise InvalidArgument(f"gcd({x1}^2, {x0}) = {g} != 1")
    return c1, c0


def linking_form(p: FamilyParams) -> LinkingFormData:
    """
    Linking-form data of M(a, b).

    Computes the Bezout certificates, rho and kappa, and verifies
    kappa * rho = 1 and the four congruences

        a1^2 rho = b1^2,  b1^2 kappa = a1^2,  a0 rho = b0,  b0 kappa = a0  (mod |n|)

    before returning.

    Args:
        p: Validated family parameters

    Returns:
        LinkingFormData (residues in [0, |n|), sign left ambiguous)

    Raises:
        InfiniteTorsion: if n = 0
        CertificateError: if any identity fails to verify
    """
    inv = derived(p)
    if inv.n == 0:
        raise InfiniteTorsion(f"n = 0 for {p.entries()}: H^4 is infinite cyclic")

    a1_sq, b1_sq = p.a.x1**2, p.b.x1**2
    a0, b0, m = inv.a0, inv.b0, inv.h4_order

    e1, e0 = bezout_pair(p.a.x1, a0)
    f1, f0 = bezout_pair(p.b.x1, b0)
    if e1 * a1_sq + e0 * a0 != 1 or f1 * b1_sq + f0 * b0 != 1:
        raise CertificateError(f"Bezout certificates failed for {p.entries()}")

    rho = (e1 * b1_sq + e0 * b0) % m
    kappa = (f1 * a1_sq + f0 * a0) % m

    identities = {
        "kappa*rho = 1": (kappa * rho - 1) % m,
        "a1^2 rho = b1^2": (a1_sq * rho - b1_sq) % m,
        "b1^2 kappa = a1^2": (b1_sq * kappa - a1_sq) % m,
        "a0 rho = b0": (a0 * rho - b0) % m,
        "b0 kappa = a0": (b0 * kappa - a0) % m,
    }
    failed = [name for name, residue in identities.items() if residue]
    if failed or gcd(rho, m) != 1 or gcd(kappa, m) != 1:
        raise CertificateError(f"linking identities failed for {p.entries()}: {failed}")

    return LinkingFormData(
        n=inv.n,
        rho=rho,
        kappa=kappa,
        cert=BezoutCert(e1=e1, e0=e0, f1=f1, f0=f0),
    )


def perturb_certificate(cert: BezoutCert, p: FamilyParams, t: int) -> BezoutCert:
    """Shift both Bezout pairs by t: (e1 - t a0, e0 + t a1^2), (f1 - t b0, f0 + t b1^2)."""
    inv = derived(p)
    return BezoutCert(
        e1=cert.e1 - t * inv.a0,
        e0=cert.e0 + t * p.a.x1**2,
        f1=cert.f1 - t * inv.b0,
        f0=cert.f0 + t * p.b.x1**2,
    )


def residues_from_certificate(cert: BezoutCert, p: FamilyParams) -> tuple[int, int]:
    """(rho, kappa) mod |n| computed from an arbitrary certificate."""
    inv = derived(p)
    if inv.n == 0:
        raise InfiniteTorsion("n = 0")
    m = inv.h4_order
    rho = (cert.e1 * p.b.x1**2 + cert.e0 * inv.b0) % m
    kappa = (cert.f1 * p.a.x1**2 + cert.f0 * inv.a0) % m
    return rho, kappa


def linking_value(
    lf: LinkingFormData,
    x: int,
    y: int,
    sign: int = 1,
    generator: Literal["one", "primed"] = "one",
) -> Fraction:
    """
    lk(x g, y g) in Q/Z, represented in [0, 1).

    Args:
        lf: Linking-form data
        x, y: Coefficients with respect to the generator g
        sign: Orientation sign (+1 or -1)
        generator: "one" for 1, "primed" for 1' = kappa 1
    """
    if sign not in (1, -1):
        raise InvalidArgument(f"sign must be +1 or -1, got {sign}")
    residue = lf.rho if generator == "one" else lf.kappa
    value = Fraction(sign * residue * x * y, lf.n)
    return value - (value.numerator // value.denominator)
