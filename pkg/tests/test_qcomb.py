import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qmatch.qcomb import (cancellation_gap, gauss, gauss_bounds, leading_coefficient,
                          pascal_holds, q_number, q_number_bound_holds, q_number_real, rho)


def test_q_number_examples():
    assert q_number(5, 2) == 31
    assert q_number(0, 7) == 0
    assert all(q_number(1, q) == 1 for q in range(2, 10))
    assert q_number(2, 3) == 4


def test_gauss_examples():
    assert gauss(4, 2, 2) == 35
    assert gauss(5, 2, 2) == 155
    assert all(gauss(a, 0, 3) == 1 for a in range(8))
    assert gauss(3, 4, 2) == 0 and gauss(3, -1, 2) == 0


def _gauss_product(a, b, q):
    num = den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@given(st.integers(0, 20), st.integers(0, 20), st.integers(2, 11))
def test_gauss_matches_product_formula(a, b, q):
    want = _gauss_product(a, b, q) if b <= a else 0
    assert gauss(a, b, q) == want


@given(st.integers(0, 16), st.integers(0, 16), st.integers(2, 9))
def test_gauss_symmetry(a, b, q):
    if b <= a:
        assert gauss(a, b, q) == gauss(a, a - b, q)


def test_q_number_real():
    assert q_number_real(5.0, 2.0).value == 31.0
    assert math.isclose(q_number_real(2.5, 2.0).value, 2 ** 2.5 - 1, rel_tol=1e-12)
    assert math.isclose(q_number_real(3.7, 1 + 1e-9).value, 3.7, rel_tol=1e-6)
    for a in range(0, 30):
        for q in (2, 3, 5, 7):
            assert math.isclose(q_number_real(a, q).value, q_number(a, q), rel_tol=1e-12)
    assert q_number_real(1e6, 10.0).overflow
    with pytest.raises(ValueError):
        q_number_real(2, 1)


@given(st.floats(0, 30), st.floats(0, 30), st.floats(1.01, 9))
def test_q_number_real_monotone(a, b, q):
    lo, hi = sorted((a, b))
    assert q_number_real(lo, q).value <= q_number_real(hi, q).value


def test_rho():
    assert rho(2) == Fraction(7, 2) and rho(3) == Fraction(8, 3) and rho(4) == Fraction(3, 2)


def test_gauss_bounds_examples():
    g = gauss_bounds(4, 2, 2)
    assert (g.lower, g.value, g.upper) == (16, 35, 56)
    g = gauss_bounds(6, 3, 2)
    assert (g.lower, g.value, g.upper) == (512, 1395, 1792)
    g = gauss_bounds(3, 3, 5)
    assert g.lower == g.value == 1 and g.holds
    with pytest.raises(ValueError):
        gauss_bounds(2, 3, 2)


def test_cancellation_gap_examples():
    c = cancellation_gap(5, 2, 1, 2)
    assert c.gap == 15 and c.bound == 56 and c.holds
    c = cancellation_gap(4, 2, 2, 2)
    assert c.gap == 19 and c.bound == 56
    for a in range(2, 10):
        for b in range(2, a):
            c = cancellation_gap(a, b, a - b, 3)
            assert c.gap >= 0
    assert cancellation_gap(6, 3, 2, 7).bound_3_2 is not None
    assert cancellation_gap(6, 3, 2, 5).bound_3_2 is None
    with pytest.raises(ValueError):
        cancellation_gap(4, 1, 1, 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_identity_grid(q):
    for a in range(0, 15):
        if a:
            assert q_number_bound_holds(a, q)
        for b in range(0, a + 1):
            assert gauss_bounds(a, b, q).holds
            if b:
                assert pascal_holds(a, b, q)
            if b >= 2:
                for x in range(1, a + 1):
                    assert cancellation_gap(a, b, x, q).holds


def test_leading_coefficient_is_one():
    assert all(leading_coefficient(a, b) == 1 for a in range(9) for b in range(a + 1))
