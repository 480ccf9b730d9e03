"""
Linkform - Cohomology Tools Module

Recomputes H^4(M(a, b); Z) as the cokernel of the Mayer-Vietoris
restriction matrix, via an integer Smith normal form that keeps its
unimodular transforms as a certificate.
"""

from typing import Union

from ..errors import CertificateError
from ..state import FamilyParams, IntMatrix2x2, SnfResult
from .family import derived

Rows = list[list[int]]

# Integral cohomology of the singular leaves M_- / M_+ and of the regular
# leaf M_0 (degrees not listed are 0). Shown in every report, never computed.
LEAF_COHOMOLOGY: dict[str, dict[int, str]] = {
    "M_pm": {0: "Z", 2: "Z_2", 3: "Z", 5: "Z_2"},
    "M_0": {0: "Z", 2: "Z_2 + Z_2", 3: "Z + Z", 5: "Z_2 + Z_2", 6: "Z"},
}


def _identity(size: int) -> Rows:
    return [[int(i == j) for j in range(size)] for i in range(size)]


def _matmul(x: Rows, y: Rows) -> Rows:
    return [[sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]))] for i in range(len(x))]


def _det(matrix: Rows) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    a = [row[:] for row in matrix]
    size = len(a)
    sign, prev = 1, 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if size else 1


def _swap_rows(a: Rows, left: Rows, i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]
    left[i], left[j] = left[j], left[i]


def _swap_cols(a: Rows, right: Rows, i: int, j: int) -> None:
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in right:
        row[i], row[j] = row[j], row[i]


def _add_row(a: Rows, left: Rows, target: int, source: int, factor: int) -> None:
    a[target] = [x + factor * y for x, y in zip(a[target], a[source])]
    left[target] = [x + factor * y for x, y in zip(left[target], left[source])]


def _add_col(a: Rows, right: Rows, target: int, source: int, factor: int) -> None:
    for row in a:
        row[target] += factor * row[source]
    for row in right:
        row[target] += factor * row[source]


def _move_min_to_pivot(a: Rows, left: Rows, right: Rows, t: int) -> None:
    """Bring the smallest non-zero entry of row t / column t (from t on) to (t, t)."""
    candidates = [(abs(a[i][t]), i, t) for i in range(t, len(a)) if a[i][t]]
    candidates += [(abs(a[t][j]), t, j) for j in range(t + 1, len(a[0])) if a[t][j]]
    _, i, j = min(candidates)
    if i != t:
        _swap_rows(a, left, t, i)
    if j != t:
        _swap_cols(a, right, t, j)


def smith_normal_form(matrix: Union[IntMatrix2x2, Rows]) -> SnfResult:
    """
    Smith normal form by elementary row and column operations.

    Accepts any m x k integer matrix; the 2x2 case is the one the
    classifier needs. Transforms are accumulated and the identity
    left * M * right = diag(d) is verified before returning.

    Args:
        matrix: IntMatrix2x2 or a list of integer rows

    Returns:
        SnfResult with non-negative divisors d1 | d2 | ...

    Raises:
        CertificateError: if the transforms fail to re-verify
    """
    rows = matrix.rows() if isinstance(matrix, IntMatrix2x2) else [list(r) for r in matrix]
    m, k = len(rows), len(rows[0]) if rows else 0
    a = [row[:] for row in rows]
    left, right = _identity(m), _identity(k)

    for t in range(min(m, k)):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, k) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        if i != t:
            _swap_rows(a, left, t, i)
        if j != t:
            _swap_cols(a, right, t, j)

        while True:
            pivot = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // pivot
                if q:
                    _add_row(a, left, i, t, -q)
            for j in range(t + 1, k):
                q = a[t][j] // pivot
                if q:
                    _add_col(a, right, j, t, -q)

            if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, k)):
                _move_min_to_pivot(a, left, right, t)
                continue

            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, k) if a[i][j] % pivot),
                None,
            )
            if bad is None:
                break
            _add_row(a, left, t, bad, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]

    divisors = tuple(a[i][i] for i in range(min(m, k)))

    check = _matmul(_matmul(left, rows), right) if m and k else []
    diagonal = [[divisors[i] if i == j and i < len(divisors) else 0 for j in range(k)] for i in range(m)]
    if check != diagonal:
        raise CertificateError(f"SNF transforms do not reproduce diag{divisors}")
    if abs(_det(left)) != 1 or abs(_det(right)) != 1:
        raise CertificateError("SNF transforms are not unimodular")
    for d, e in zip(divisors, divisors[1:]):
        if (d == 0 and e != 0) or (d != 0 and e % d):
            raise CertificateError(f"SNF divisors {divisors} do not form a divisibility chain")

    return SnfResult(
        divisors=divisors,
        left=tuple(tuple(r) for r in left),
        right=tuple(tuple(r) for r in right),
    )


def restriction_matrix(p: FamilyParams) -> IntMatrix2x2:
    """Columns (a0, a1^2) and (b0, b1^2) in the basis {v1, v2}."""
    inv = derived(p)
    return IntMatrix2x2(m11=inv.a0, m12=inv.b0, m21=p.a.x1**2, m22=p.b.x1**2)


def h4_structure(p: FamilyParams) -> tuple[int, int]:
    """
    SNF divisors (d1, d2) of the restriction matrix of M(a, b).

    For valid parameters d1 = 1, so H^4 is cyclic of order d2 = |n|
    (d2 = 0 meaning infinite cyclic).

    Raises:
        CertificateError: if d1 != 1
    """
    snf = smith_normal_form(restriction_matrix(p))
    if snf.d1 != 1:
        raise CertificateError(f"H^4 is not cyclic: SNF divisors {snf.divisors}")
    return snf.d1, snf.d2


def _cyclic(order: int) -> str:
    if order == 0:
        return "Z"
    if order == 1:
        return "0"
    return f"Z_{order}"


def cohomology_groups(p: FamilyParams) -> dict[int, str]:
    """Integral cohomology of M(a, b) in degrees 0..7: that of an S^3-bundle over S^4."""
    order = derived(p).h4_order
    groups = {degree: "0" for degree in range(8)}
    groups[0] = groups[7] = "Z"
    groups[4] = _cyclic(order)
    if order == 0:
        groups[3] = "Z"
    return groups
