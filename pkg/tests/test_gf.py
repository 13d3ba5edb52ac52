import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from qmatch.gf import (Matrix, field_make, field_of_order, is_irreducible_mod_p, prime_power,
                       rank, rref, row_span)

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms_exhaustive(q):
    F = field_of_order(q)
    els = range(q)
    for a in els:
        assert F.add(a, 0) == a and F.mul(a, 1) == a and F.mul(a, 0) == 0
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in els:
                assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_prime_field_is_integers_mod_p(p):
    F = field_make(p, 1)
    for a, b in itertools.product(range(p), repeat=2):
        assert F.add(a, b) == (a + b) % p
        assert F.mul(a, b) == (a * b) % p


def test_small_examples():
    assert field_make(2, 1).add(1, 1) == 0
    assert field_make(5, 1).inv(2) == 3
    F4 = field_make(2, 2)
    assert F4.modulus == (1, 1, 1)
    # element x is encoded as 2, x + 1 as 3
    assert F4.mul(2, 2) == 3


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 49, 81])
def test_modulus_irreducible_and_multiplicative_group_cyclic(q):
    F = field_of_order(q)
    assert is_irreducible_mod_p(F.modulus, F.p)
    # the log table hits every nonzero element once
    assert sorted(F.exp[: q - 1]) == list(range(1, q))


def test_field_errors():
    with pytest.raises(ValueError):
        field_make(4, 1)
    with pytest.raises(ValueError):
        field_make(2, 5)
    with pytest.raises(ValueError):
        field_of_order(6)
    assert prime_power(27) == (3, 3)


def test_rref_examples():
    F = field_of_order(2)
    I = Matrix.from_rows(F, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    R, r = rref(I)
    assert R == I and r == 3
    R, r = rref(Matrix.from_rows(F, [[1, 1], [1, 1]]))
    assert R.rows == ((1, 1), (0, 0)) and r == 1
    R, r = rref(Matrix.from_rows(F, [], cols=3))
    assert r == 0


def _brute_span(F, rows):
    n = len(rows[0])
    out = set()
    for coeffs in itertools.product(range(F.q), repeat=len(rows)):
        v = [0] * n
        for c, row in zip(coeffs, rows):
            for j in range(n):
                v[j] = F.add(v[j], F.mul(c, row[j]))
        out.add(tuple(v))
    return out


@st.composite
def matrices(draw, max_rows=4, max_cols=5, qs=(2, 3, 4, 5)):
    q = draw(st.sampled_from(qs))
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(field_of_order(q), rows)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_idempotent_and_span_preserved(M):
    R, r = rref(M)
    R2, r2 = rref(R)
    assert R2 == R and r2 == r
    span = _brute_span(M.field, [list(x) for x in M.rows])
    assert len(span) == M.field.q ** r
    assert span == _brute_span(M.field, [list(x) for x in R.rows])
    assert row_span(M) == span


def test_random_2x4_gf3_span_count():
    rng = random.Random(3)
    F = field_of_order(3)
    for _ in range(30):
        rows = [[rng.randrange(3) for _ in range(4)] for _ in range(2)]
        assert len(_brute_span(F, rows)) == 3 ** rank(Matrix.from_rows(F, rows))
