"""
Linkform - Search Tools Module

Explicit non-standard examples and parameter censuses.

For a prime p = 1 mod 4 the smallest m with (m/p) = -1 and (m+1/p) = +1
gives the family a1 = b1 = p, |a2| = 2m-1, |a3| = |b2| = 2m+1, |b3| = 2m+3,
with n = -p^2, a0 = -m and b0 = -(m+1). Its linking form is non-standard.
"""

from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from itertools import product
from math import gcd
from typing import Optional

from sympy import sieve

from ..config import load_settings
from ..errors import CertificateError, InvalidArgument, ResourceExceeded
from ..state import CensusRow, DistinctTypes, FamilyParams, ParamTriple, SearchSpec, VerdictKind
from .arith import is_prime, legendre
from .classify import egs_fast_check, is_standard
from .family import admissible_values, canonical_key, derived, sign_normalize, validate
from .linking import linking_form


def primes_one_mod_four(limit: int) -> list[int]:
    """All primes p = 1 mod 4 with p <= limit, ascending."""
    if limit < 5:
        return []
    return [int(p) for p in sieve.primerange(5, limit + 1) if p % 4 == 1]


def _require_one_mod_four_prime(p: int) -> None:
    if p % 4 != 1 or not is_prime(p):
        raise InvalidArgument(f"{p} is not a prime = 1 mod 4")


def find_m(p: int) -> int:
    """
    Smallest m in [1, p-2] with (m/p) = -1 and (m+1/p) = +1.

    Args:
        p: Prime with p = 1 mod 4

    Raises:
        InvalidArgument: if p is composite or p != 1 mod 4
    """
    _require_one_mod_four_prime(p)
    for m in range(1, p - 1):
        if legendre(m, p) == -1 and legendre(m + 1, p) == 1:
            return m
    # a non-residue is always followed by a residue somewhere below p - 1
    raise CertificateError(f"no consecutive non-square/square pair mod {p}")


def construct_corollary(p: int) -> FamilyParams:
    """
    The explicit non-standard family for a prime p = 1 mod 4.

    Every entry's sign is the one that makes it 1 mod 4. The result is
    checked before returning: it validates, n = -p^2, a0 = -m, b0 = -(m+1),
    the fast test fires with witness p and the full classifier agrees.

    Raises:
        InvalidArgument: if p is not a prime = 1 mod 4
        CertificateError: if a postcondition fails
    """
    m = find_m(p)
    params = validate(
        (
            p,
            sign_normalize(2 * m - 1),
            sign_normalize(2 * m + 1),
            p,
            sign_normalize(2 * m + 1),
            sign_normalize(2 * m + 3),
        )
    )

    inv = derived(params)
    if inv.n != -p * p or inv.a0 != -m or inv.b0 != -(m + 1):
        raise CertificateError(f"construction for p = {p} gave a0={inv.a0}, b0={inv.b0}, n={inv.n}")

    witness = egs_fast_check(params)
    if witness is None or witness.p != p:
        raise CertificateError(f"fast test did not fire at p = {p}")
    if is_standard(linking_form(params)).kind != VerdictKind.NON_STANDARD:
        raise CertificateError(f"construction for p = {p} is not non-standard")
    return params


def classify_row(params: FamilyParams) -> CensusRow:
    """
    Classify one family into a census row.

    ResourceExceeded is recorded on the row instead of propagating, so a
    census never drops a family silently.
    """
    inv = derived(params)
    if inv.n == 0:
        return CensusRow(params=params, n=0, h4_order=0, verdict=VerdictKind.INFINITE_TORSION)

    try:
        lf = linking_form(params)
        verdict = is_standard(lf)
        witness = egs_fast_check(params)
    except ResourceExceeded as e:
        return CensusRow(params=params, n=inv.n, h4_order=inv.h4_order, error=str(e))

    return CensusRow(
        params=params,
        n=inv.n,
        h4_order=inv.h4_order,
        rho=lf.rho,
        kappa=lf.kappa,
        verdict=verdict.kind,
        egs_prime=witness.p if witness else None,
    )


def _valid_triples(x1_values: Iterable[int], values: list[int]) -> list[tuple[int, int, int]]:
    return [
        (x1, x2, x3)
        for x1 in x1_values
        for x2 in values
        for x3 in values
        if gcd(x1, x2 + x3) == 1 and gcd(x1, x2 - x3) == 1
    ]


def _row_matches(row: CensusRow, spec: SearchSpec) -> bool:
    if spec.require_finite and row.n == 0:
        return False
    if spec.min_order is not None and row.h4_order < spec.min_order:
        return False
    if spec.max_order is not None and row.h4_order > spec.max_order:
        return False
    if row.error is not None:
        return True
    if spec.verdict_filter == "nonstandard":
        return row.verdict == VerdictKind.NON_STANDARD
    if spec.verdict_filter == "standard":
        return row.verdict in (VerdictKind.STANDARD, VerdictKind.TRIVIAL_TORSION)
    return True


def _census_partition(spec: SearchSpec, a1: int) -> list[CensusRow]:
    """All matching rows with this a1, in canonical-key order."""
    values = admissible_values(spec.bound)
    a_triples = _valid_triples([a1], values)
    b1_values = [spec.pin_p] if spec.pin_p is not None else values
    b_triples = _valid_triples(b1_values, values)

    members: dict[tuple[int, ...], FamilyParams] = {}
    ordered: list[tuple[tuple[int, ...], FamilyParams]] = []
    for a, b in product(a_triples, b_triples):
        if spec.coprime_only and gcd(a[0], b[0]) != 1:
            continue
        params = FamilyParams(a=ParamTriple(x1=a[0], x2=a[1], x3=a[2]), b=ParamTriple(x1=b[0], x2=b[1], x3=b[2]))
        key = canonical_key(params)
        if spec.dedup:
            if key in members:
                continue
            members[key] = params
        ordered.append((key + params.entries(), params))

    ordered.sort(key=lambda item: item[0])
    rows = (classify_row(params) for _, params in ordered)
    return [row for row in rows if _row_matches(row, spec)]


def enumerate_census(spec: SearchSpec, workers: Optional[int] = None) -> Iterator[CensusRow]:
    """
    Classify every valid family within the bounds of a search spec.

    The space is partitioned by a1; partitions run in a process pool when
    workers > 1 and are merged in a1 order, so the output is the same
    lexicographic sequence (on the canonical key) for any worker count.

    Args:
        spec: Bounds and filters
        workers: Worker processes (defaults to LINKFORM_WORKERS)

    Yields:
        CensusRow for each family passing the filters

    Raises:
        InvalidArgument: if the pinned p is not 1 mod 4
    """
    if spec.pin_p is not None:
        if spec.pin_p % 4 != 1:
            raise InvalidArgument(f"pinned a1 = b1 = {spec.pin_p} is not 1 mod 4")
        if abs(spec.pin_p) > spec.bound:
            return
        a1_values = [spec.pin_p]
    else:
        a1_values = admissible_values(spec.bound)

    count = workers if workers is not None else load_settings().workers
    run = partial(_census_partition, spec)

    if count <= 1 or len(a1_values) == 1:
        for a1 in a1_values:
            yield from run(a1)
        return

    with ProcessPoolExecutor(max_workers=count) as pool:
        for rows in pool.map(run, a1_values):
            yield from rows


def corollary_census(primes_to: int) -> Iterator[CensusRow]:
    """Rows for the explicit non-standard family of every prime p = 1 mod 4 up to primes_to."""
    for p in primes_one_mod_four(primes_to):
        yield classify_row(construct_corollary(p))


def distinct_types_report(rows: Iterable[CensusRow]) -> DistinctTypes:
    """
    Group NonStandard rows by |H^4|.

    Returns:
        DistinctTypes with a count and the first representative per order
    """
    report = DistinctTypes()
    for row in rows:
        if row.verdict != VerdictKind.NON_STANDARD:
            continue
        report.counts[row.h4_order] = report.counts.get(row.h4_order, 0) + 1
        report.representatives.setdefault(row.h4_order, row.params)
    return report
