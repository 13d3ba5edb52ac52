import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qmatch.geometry import (BudgetExceeded, Subspace, avg_spread_intersection,
                             beutelspacher_spread, bits, count_disjoint_to,
                             count_point_disjoint, dump_catalog, elliptic_quadric,
                             enumerate_subspaces, is_disjoint, load_subspaces, max_line_hits,
                             meet_dim, space, spread_census, spread_mean, z_value)
from qmatch.gf import field_of_order
from qmatch.qcomb import gauss, q_number


def _span_set(F, vecs):
    n = len(vecs[0])
    out = set()
    for cs in itertools.product(range(F.q), repeat=len(vecs)):
        v = [0] * n
        for c, w in zip(cs, vecs):
            for j in range(n):
                v[j] = F.add(v[j], F.mul(c, w[j]))
        out.add(tuple(v))
    return frozenset(out)


@pytest.mark.parametrize("n,k,q", [(3, 1, 2), (3, 2, 2), (4, 2, 2), (4, 1, 3), (3, 2, 3), (4, 3, 2)])
def test_catalog_size_matches_brute_force_spans(n, k, q):
    # independent of RREF: collect distinct spans of all k-tuples of vectors
    F = field_of_order(q)
    vecs = list(itertools.product(range(q), repeat=n))
    spans = set()
    for combo in itertools.combinations(vecs, k):
        S = _span_set(F, combo)
        if len(S) == q ** k:
            spans.add(S)
    assert len(spans) == gauss(n, k, q) == len(enumerate_subspaces(n, k, q))


def test_enumerate_examples_and_budget():
    assert len(enumerate_subspaces(4, 2, 2)) == 35
    assert len(enumerate_subspaces(5, 2, 2)) == 155
    assert len(enumerate_subspaces(4, 0, 3)) == 1
    with pytest.raises(BudgetExceeded):
        enumerate_subspaces(8, 4, 3, budget=1000)


def test_catalog_order_deterministic():
    cat = space(4, 2).catalog(2)
    assert cat.bases == sorted(cat.bases)
    assert all(cat.id_of(cat.subspace(i)) == i for i in range(len(cat)))


def test_meet_dim_examples():
    F = field_of_order(2)
    A = Subspace.span(F, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    B = Subspace.span(F, 4, [[0, 0, 1, 0], [0, 0, 0, 1]])
    assert meet_dim(A, B) == 0 and is_disjoint(A, B)
    assert meet_dim(A, A) == 2
    cat = space(4, 2).catalog(2)
    assert sum(1 for i in range(len(cat)) if cat.disjoint(0, i)) == 16


@pytest.mark.parametrize("n,k,q", [(4, 2, 2), (5, 2, 2), (4, 2, 3)])
def test_disjointness_symmetric_and_meet_lower_bound(n, k, q):
    cat = space(n, q).catalog(k)
    rng = random.Random(1)
    for _ in range(200):
        i, j = rng.randrange(len(cat)), rng.randrange(len(cat))
        assert cat.disjoint(i, j) == cat.disjoint(j, i)
        d = cat.meet_dim_ids(i, j)
        assert d >= max(0, 2 * k - n)
        assert d == meet_dim(cat.subspace(i), cat.subspace(j))


def test_eq2_grid():
    for q in (2, 3):
        for n in range(2, 6):
            P = space(n, q)
            for k in (1, 2):
                if k > n:
                    continue
                S = P.catalog(k).subspace(len(P.catalog(k)) // 2)
                for l in range(0, 3):
                    if k + l <= n:
                        assert count_disjoint_to(S, l) == q ** (k * l) * gauss(n - k, l, q)


def test_eq2_examples():
    F = field_of_order(2)
    S = Subspace.span(F, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    assert count_disjoint_to(S, 2) == 16 and count_disjoint_to(S, 0) == 1
    S = Subspace.span(F, 5, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]])
    assert count_disjoint_to(S, 1) == 28


@pytest.mark.parametrize("n,k,q", [(4, 2, 2), (4, 2, 3), (5, 2, 2), (5, 2, 3), (6, 2, 2), (6, 3, 2),
                                   (7, 3, 2), (6, 2, 3), (7, 2, 2), (4, 2, 4)])
def test_beutelspacher(n, k, q):
    sp = beutelspacher_spread(n, k, q)
    assert len(sp) == z_value(n, k, q) and sp.is_valid()
    if n % k == 0:
        assert sp.covered == sp.catalog.space.all_points


def test_z_values():
    for q in (2, 3, 4, 5, 7):
        assert z_value(5, 2, q) == q ** 3 + 1
    for n, k, q in [(4, 2, 2), (6, 3, 2), (6, 2, 3), (7, 2, 2), (7, 3, 3)]:
        trivial = Fraction(q_number(n, q), q_number(k, q))
        assert z_value(n, k, q) <= trivial
        assert (z_value(n, k, q) == trivial) == (n % k == 0)


def test_census_422():
    c = spread_census(4, 2, 2)
    assert (c.N, c.n1, c.n2, c.n3) == (56, 8, 2, 1)
    assert c.exact_common_disjoint == 6 and c.n1_homogeneous
    assert c.formula_n1n2 == c.exact_n1n2 == 4
    assert c.printed_n2n3_numerator == -5 and c.exact_n2n3 == 2
    assert c.printed_numerator_discrepancy
    assert all(c.identities.values())


def test_census_423():
    c = spread_census(4, 2, 3)
    assert all(c.identities.values())
    assert c.N * c.z == c.n1 * gauss(4, 2, 3)


def test_census_gate():
    with pytest.raises(BudgetExceeded):
        spread_census(6, 3, 2)


def test_spread_mean_and_w_s():
    c = spread_census(4, 2, 2)
    cat = space(4, 2).catalog(2)
    assert all(avg_spread_intersection(cat.full_mask, S, c) == 5 for S in range(35))
    D = cat.through[0]
    assert all(avg_spread_intersection(D, S, c) == 1 for S in bits(D))
    rng = random.Random(0)
    for _ in range(20):
        m = rng.getrandbits(35)
        assert spread_mean(m, c) == Fraction(m.bit_count() * 5, 35)
    with pytest.raises(ValueError):
        avg_spread_intersection(0, 0, c)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_elliptic_quadric(q):
    Q = elliptic_quadric(q)
    assert len(Q.points) == q * q + 1
    assert max_line_hits(Q.mask, q) == 2


def test_count_point_disjoint_double_counting():
    cat = space(4, 2).catalog(2)
    A = 0
    B = next(bits(cat.disjoint_masks[A]))
    P = cat.space
    outside = P.all_points & ~(cat.point_masks[A] | cat.point_masks[B])
    total = sum(count_point_disjoint(p, A, B, cat) for p in bits(outside))
    common = (cat.disjoint_masks[A] & cat.disjoint_masks[B]).bit_count()
    assert total == q_number(2, 2) * common
    p_in_a = next(bits(cat.point_masks[A]))
    assert count_point_disjoint(p_in_a, A, B, cat, strict=False) == 0
    with pytest.raises(ValueError):
        count_point_disjoint(p_in_a, A, B, cat)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(4, 2, 2), (4, 1, 3), (5, 2, 2), (4, 2, 3)]), st.randoms())
def test_catalog_round_trip(params, rnd):
    n, k, q = params
    cat = space(n, q).catalog(k)
    ids = sorted(rnd.sample(range(len(cat)), 5))
    (n2, k2, q2), bases = load_subspaces(dump_catalog(cat, ids))
    assert (n2, k2, q2) == (n, k, q)
    assert [cat.index[b] for b in bases] == ids
