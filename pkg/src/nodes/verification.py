"""
Linkform - Verification Suite

The invariant checks behind `linkform verify`. Each check runs over a
seeded sample of random families (or a fixed arithmetic range) and keeps
the smallest failing input as a counterexample.

The tools are called through their modules so a patched implementation is
the one under test.
"""

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Optional

from ..errors import InvalidArgument, LinkformError
from ..state import CheckResult, FamilyParams, VerdictKind, VerificationReport
from ..tools import arith, classify, cohomology, family, linking, oracle, search
from ..tools.family import format_params

SAMPLE_BOUND = 401
COROLLARY_PRIMES_TO = 97
PERTURBATION_RANGE = range(-5, 6)


@dataclass
class _Check:
    name: str
    cases: int = 0
    failures: list[tuple[tuple[int, ...], str]] = field(default_factory=list)

    def run(self, key: tuple[int, ...], label: str, body: Callable[[], Optional[str]]) -> None:
        self.cases += 1
        try:
            problem = body()
        except LinkformError as e:
            problem = f"{type(e).__name__}: {e}"
        if problem:
            self.failures.append((key, f"{label}: {problem}"))

    def result(self) -> CheckResult:
        if not self.failures:
            return CheckResult(name=self.name, passed=True, cases=self.cases)
        _, text = min(self.failures)
        return CheckResult(name=self.name, passed=False, cases=self.cases, counterexample=text)


def _size_key(p: FamilyParams) -> tuple[int, ...]:
    entries = p.entries()
    return (max(abs(v) for v in entries),) + entries


def _identities(p: FamilyParams) -> Optional[str]:
    lf = linking.linking_form(p)
    m = lf.h4_order
    inv = family.derived(p)
    a1_sq, b1_sq = p.a.x1**2, p.b.x1**2
    if (lf.kappa * lf.rho - 1) % m:
        return f"kappa*rho = {lf.kappa * lf.rho % m} mod {m}"
    if (a1_sq * lf.rho - b1_sq) % m or (b1_sq * lf.kappa - a1_sq) % m:
        return "a1^2 / b1^2 congruence fails"
    if (inv.a0 * lf.rho - inv.b0) % m or (inv.b0 * lf.kappa - inv.a0) % m:
        return "a0 / b0 congruence fails"
    for t in PERTURBATION_RANGE:
        shifted = linking.perturb_certificate(lf.cert, p, t)
        if linking.residues_from_certificate(shifted, p) != (lf.rho, lf.kappa):
            return f"rho, kappa change under Bezout shift t = {t}"
    dual = linking.linking_form(family.swap(p))
    if dual.rho != lf.kappa or dual.kappa != lf.rho:
        return f"swap gives rho = {dual.rho}, expected {lf.kappa}"
    return None


def _coprime_standard(p: FamilyParams) -> Optional[str]:
    kind = classify.is_standard(linking.linking_form(p)).kind
    return None if kind in (VerdictKind.STANDARD, VerdictKind.TRIVIAL_TORSION) else kind.value


def _fast_test_sound(p: FamilyParams) -> Optional[str]:
    witness = classify.egs_fast_check(p)
    if witness is None:
        return None
    kind = classify.is_standard(linking.linking_form(p)).kind
    return None if kind == VerdictKind.NON_STANDARD else f"witness p = {witness.p} but {kind.value}"


def _corollary_sound(prime: int) -> Optional[str]:
    params = search.construct_corollary(prime)
    if classify.egs_fast_check(params) is None:
        return "fast test did not fire"
    return _fast_test_sound(params)


def _robust(p: FamilyParams) -> Optional[str]:
    lf = linking.linking_form(p)
    m = lf.h4_order
    base = classify.classify_residue(lf.n, lf.rho).kind
    for variant, rho in (("-rho", m - lf.rho), ("kappa", lf.kappa), ("4 rho", 4 * lf.rho % m)):
        if gcd(rho, m) != 1:
            continue
        kind = classify.classify_residue(lf.n, rho).kind
        if kind != base:
            return f"{variant} gives {kind.value}, rho gives {base.value}"
    return None


def _snf(p: FamilyParams) -> Optional[str]:
    matrix = cohomology.restriction_matrix(p)
    d1, d2 = cohomology.h4_structure(p)
    order = family.derived(p).h4_order
    if (d1, d2) != (1, order):
        return f"SNF ({d1}, {d2}) != (1, {order})"
    if abs(matrix.det) <= oracle.COKER_DET_LIMIT:
        brute = oracle.brute_coker(matrix)
        expected = None if order == 0 else order
        if brute.order != expected or not brute.cyclic:
            return f"brute cokernel {brute} disagrees with Z_{order}"
    return None


def _square_units(n: int) -> Optional[str]:
    for x in range(1, n):
        if gcd(x, n) != 1:
            continue
        fast = arith.is_square_unit_mod(x, n).is_square
        if fast != oracle.brute_square_unit(x, n):
            return f"x = {x}: fast says {fast}"
    return None


def _symbols(p: int) -> Optional[str]:
    for x in range(p):
        expected = oracle.brute_legendre(x, p)
        if arith.legendre(x, p) != expected or arith.jacobi(x, p) != expected:
            return f"x = {x}: expected {expected}"
    if arith.legendre(-1, p) != (1 if p % 4 == 1 else -1):
        return "(-1/p) disagrees with p mod 4"
    return None


def run_verification(seed: int, samples: int, bound: int = SAMPLE_BOUND) -> VerificationReport:
    """
    Run the full invariant suite.

    Args:
        seed: Seed for the family sample and the oracle moduli
        samples: Number of random families (>= 1)
        bound: Entry bound for the random families

    Returns:
        VerificationReport with one CheckResult per check

    Raises:
        InvalidArgument: if samples < 1
    """
    if samples < 1:
        raise InvalidArgument(f"samples must be >= 1, got {samples}")

    rng = random.Random(seed)
    families = [family.random_family(rng, bound) for _ in range(samples)]
    finite = [p for p in families if family.derived(p).n != 0]

    identities = _Check("linking identities")
    coprime = _Check("coprime families are standard")
    sound = _Check("fast test soundness")
    robust = _Check("classification robustness")
    snf = _Check("cohomology cross-check")
    squares = _Check("square-unit oracle")
    symbols = _Check("symbol oracle")

    for p in finite:
        key, label = _size_key(p), format_params(p)
        identities.run(key, label, lambda p=p: _identities(p))
        if gcd(p.a.x1, p.b.x1) == 1:
            coprime.run(key, label, lambda p=p: _coprime_standard(p))
        sound.run(key, label, lambda p=p: _fast_test_sound(p))
        robust.run(key, label, lambda p=p: _robust(p))

    for prime in search.primes_one_mod_four(COROLLARY_PRIMES_TO):
        sound.run((prime,), f"corollary p = {prime}", lambda q=prime: _corollary_sound(q))

    for p in families:
        snf.run(_size_key(p), format_params(p), lambda p=p: _snf(p))

    moduli = sorted({rng.randint(2, 5000) for _ in range(max(1, min(100, samples // 10)))})
    for n in moduli:
        squares.run((n,), f"n = {n}", lambda n=n: _square_units(n))

    for prime in _odd_primes_below(1000):
        symbols.run((prime,), f"p = {prime}", lambda q=prime: _symbols(q))

    checks = [c.result() for c in (identities, coprime, sound, robust, snf, squares, symbols)]
    return VerificationReport(seed=seed, samples=samples, checks=checks)


def _odd_primes_below(limit: int) -> list[int]:
    return [q for q in range(3, limit, 2) if arith.is_prime(q)]
