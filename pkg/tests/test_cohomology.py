"""Tests for src.tools.cohomology."""

import random

import pytest
from hypothesis import given
from hypothesis.strategies import integers, lists
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_smith_normal_form

from src.state import IntMatrix2x2
from src.tools.cohomology import (
    LEAF_COHOMOLOGY,
    cohomology_groups,
    h4_structure,
    restriction_matrix,
    smith_normal_form,
)
from src.tools.oracle import brute_coker


def _matrix(rows):
    (m11, m12), (m21, m22) = rows
    return IntMatrix2x2(m11=m11, m12=m12, m21=m21, m22=m22)


def _mul(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]))] for i in range(len(x))]


@pytest.mark.parametrize(
    "rows, divisors",
    [
        ([[2, 0], [0, 4]], (2, 4)),
        ([[-3, 4], [25, -25]], (1, 25)),
        ([[0, 0], [0, 0]], (0, 0)),
        ([[4, 0], [0, 2]], (2, 4)),
        ([[0, 3], [1, 1]], (1, 3)),
    ],
)
def test_smith_normal_form_examples(rows, divisors):
    snf = smith_normal_form(_matrix(rows))
    assert snf.divisors == divisors
    left, right = [list(r) for r in snf.left], [list(r) for r in snf.right]
    assert _mul(_mul(left, rows), right) == [[divisors[0], 0], [0, divisors[1]]]


def test_smith_normal_form_rectangular():
    snf = smith_normal_form([[2, 4], [6, 8], [10, 12]])
    assert snf.divisors == (2, 4)


@given(lists(integers(-20, 20), min_size=4, max_size=4))
def test_snf_divisors_match_determinant_and_chain(entries):
    m = _matrix([entries[:2], entries[2:]])
    snf = smith_normal_form(m)
    assert snf.d1 >= 0 and snf.d2 >= 0
    assert snf.d1 * snf.d2 == abs(m.det)
    if snf.d1:
        assert snf.d2 % snf.d1 == 0


@given(lists(integers(-20, 20), min_size=4, max_size=4))
def test_snf_cokernel_matches_brute_force(entries):
    m = _matrix([entries[:2], entries[2:]])
    snf = smith_normal_form(m)
    brute = brute_coker(m)
    assert brute.order == (snf.d1 * snf.d2 if m.det else None)
    assert brute.cyclic == (snf.d1 == 1)


def test_h4_structure_examples(p5_family, bundle_family, infinite_family):
    assert h4_structure(p5_family) == (1, 25)
    assert h4_structure(bundle_family) == (1, 3)
    assert h4_structure(infinite_family) == (1, 0)


def test_restriction_matrix(bundle_family, p5_family):
    assert restriction_matrix(bundle_family).rows() == [[0, 3], [1, 1]]
    assert restriction_matrix(p5_family).rows() == [[-3, -4], [25, 25]]


def test_cohomology_groups(p5_family, infinite_family):
    groups = cohomology_groups(p5_family)
    assert groups == {0: "Z", 1: "0", 2: "0", 3: "0", 4: "Z_25", 5: "0", 6: "0", 7: "Z"}

    groups = cohomology_groups(infinite_family)
    assert groups[3] == "Z"
    assert groups[4] == "Z"


def test_leaf_cohomology_constants():
    assert LEAF_COHOMOLOGY["M_pm"][2] == "Z_2"
    assert LEAF_COHOMOLOGY["M_0"][6] == "Z"


def _sympy_divisors(rows):
    diagonal = sympy_smith_normal_form(Matrix(rows), domain=ZZ)
    return sorted(abs(int(diagonal[i, i])) for i in range(2))


def test_snf_matches_sympy_reference(p5_family, p13_family, bundle_family):
    rng = random.Random(5)
    cases = [restriction_matrix(p).rows() for p in (p5_family, p13_family, bundle_family)]
    cases += [[[rng.randint(-20, 20) for _ in range(2)] for _ in range(2)] for _ in range(300)]
    for rows in cases:
        if rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0] == 0:
            continue
        snf = smith_normal_form(_matrix(rows))
        assert [snf.d1, snf.d2] == _sympy_divisors(rows), rows
