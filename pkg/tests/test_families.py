import itertools
import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from qmatch.families import (Family, bilinear_family, cover_number, dictator, dual_dictator,
                             footnote_construction, footnote_size_formula, is_intersecting,
                             is_sEM, matching_number, max_intersecting, mixed_pencil,
                             pencil_bound, pencil_union, point_plus_hyperplane, secant_family,
                             standard_pencil)
from qmatch.geometry import Subspace, bits, space
from qmatch.qcomb import gauss, q_number

L422 = space(4, 2).catalog(2)


def _brute_matching(fam):
    cat = fam.catalog
    ids = fam.ids
    for r in range(len(ids), 0, -1):
        for combo in itertools.combinations(ids, r):
            if all(cat.disjoint(a, b) for a, b in itertools.combinations(combo, 2)):
                return r
    return 0


def _brute_cover(fam):
    """Fewest intersecting parts, by trying every assignment."""
    cat = fam.catalog
    ids = fam.ids
    if not ids:
        return 0
    for c in range(1, len(ids) + 1):
        for colours in itertools.product(range(c), repeat=len(ids)):
            if colours[0] != 0:
                continue
            if all(colours[i] != colours[j] or not cat.disjoint(ids[i], ids[j])
                   for i, j in itertools.combinations(range(len(ids)), 2)):
                return c


def test_dictator():
    D = dictator(0, L422)
    assert D.size == 7 and is_intersecting(D)
    assert matching_number(D).value == 1
    for p in range(15):
        for p2 in range(p + 1, 15):
            assert (dictator(p, L422) & dictator(p2, L422)).size <= gauss(2, 0, 2)


def test_dictator_with_vector():
    assert dictator([0, 0, 0, 1], L422).size == 7


def test_dual_dictator():
    H = dual_dictator(0, L422)
    assert H.size == 7 and is_intersecting(H)
    L522 = space(5, 2).catalog(2)
    H5 = dual_dictator(0, L522)
    assert H5.size == 35 and not is_intersecting(H5)
    for p in range(15):
        for h in range(15):
            assert (dictator(p, L422) & dual_dictator(h, L422)).size <= gauss(2, 1, 2)


def test_lemma_24_iii():
    # a line outside a dictator meets at most [k] [n-2,k-2] of its members
    for p in range(15):
        D = dictator(p, L422)
        for i in range(35):
            if i not in D:
                meets = sum(1 for j in D if not L422.disjoint(i, j))
                assert meets <= q_number(2, 2) * gauss(2, 0, 2)


def test_pencil_union():
    L423 = space(4, 3).catalog(2)
    ell = Subspace.span(L423.field, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    pts = list(bits(L423.space.point_mask_of(ell)))[:2]
    Y = pencil_union(pts, L423)
    assert Y.size == 25 >= pencil_bound(4, 2, 3, 2) == 24
    assert matching_number(Y).value == 2
    assert standard_pencil(L422, 1) == dictator([1, 0, 0, 0], L422)
    assert standard_pencil(L422, 1).size == 7 == pencil_bound(4, 2, 2, 1)
    with pytest.raises(ValueError):
        pencil_union([0, 0], L422)
    # three non-collinear points span a plane, but s = 3 needs l = 2 at q = 2
    P = L422.space
    e = [P.point_id(v) for v in ([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0])]
    with pytest.raises(ValueError):
        pencil_union(e, L422)


@pytest.mark.parametrize("n,k,q,s", [(4, 2, 2, 2), (4, 2, 2, 3), (5, 2, 2, 3), (4, 2, 3, 4), (6, 2, 2, 3)])
def test_pencil_witness_and_bound(n, k, q, s):
    cat = space(n, q).catalog(k)
    Y = standard_pencil(cat, s)
    assert Y.size >= pencil_bound(n, k, q, s)
    cert = matching_number(Y)
    assert cert.value == s and cert.check(Y)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_secant_sizes(q):
    assert secant_family(q).size == comb(q * q + 1, 2)


def test_secant_matching_q2():
    Y = secant_family(2)
    assert matching_number(Y).value == 2 == _brute_matching(Y)
    assert is_sEM(Y, 2) and not is_sEM(Y, 1)


def test_footnote_construction_literal():
    # literal reading of the construction; see the decisions ledger for the size conflict
    con = footnote_construction(2)
    assert con.family.size == 19
    assert footnote_size_formula(2) == 16 and footnote_size_formula(4) == 150
    assert footnote_construction(4).family.size == 165
    with pytest.raises(ValueError):
        footnote_construction(3)
    for part in con.parts:
        assert is_intersecting(part)
    union = Family.empty(con.family.catalog)
    for part in con.parts:
        union = union | part
    assert union == con.family


def test_bilinear():
    assert bilinear_family(0, L422).size == 16
    F = L422.subspace(0)
    B = bilinear_family(F, L422)
    assert all(L422.disjoint(0, i) for i in B)
    L522 = space(5, 2).catalog(2)
    assert bilinear_family(0, L522).size == 2 ** 6


def test_matching_examples():
    assert matching_number(Family.full(L422)).value == 5
    assert matching_number(Family.empty(L422)).value == 0
    cert = matching_number(Family.full(L422), cap=3)
    assert cert.value >= 3


def test_is_sem_trivial():
    assert is_sEM(Family.full(L422), 5)
    assert is_sEM(dictator(3, L422), 1)


def test_cover_examples():
    assert cover_number(dictator(0, L422)).value == 1
    assert cover_number(Family.empty(L422)).value == 0
    # two dictators with distinct centres: not intersecting, so 2
    Y = dictator(0, L422) | dictator(1, L422)
    assert not is_intersecting(Y) and cover_number(Y).value == 2


def test_point_plus_hyperplane():
    hyper = L422.space.catalog(3)
    h = next(i for i, hm in enumerate(hyper.point_masks) if not hm & 1)
    Y = point_plus_hyperplane(0, h, L422)
    assert Y.size == 14 and cover_number(Y).value == 2
    with pytest.raises(ValueError):
        point_plus_hyperplane(0, next(i for i, hm in enumerate(hyper.point_masks) if hm & 1), L422)


@pytest.mark.parametrize("q", [2, 3])
def test_mixed_pencil_size(q):
    cat = space(4, q).catalog(2)
    for a in range(1, q + 1):
        for b in range(1, q + 2 - a):
            con = mixed_pencil(cat, a, b)
            s = a + b
            assert con.family.size == s * (q * q + q) + 2
            assert is_sEM(con.family, s)


def test_newman_oracle():
    for n, want in ((4, 7), (5, 15)):
        res, _ = max_intersecting(space(n, 2).catalog(2))
        assert res.size == want == gauss(n - 1, 1, 2) and res.optimal


def test_family_guards():
    with pytest.raises(ValueError):
        Family(L422, 1 << 40)
    with pytest.raises(ValueError):
        Family.from_ids(L422, [35])
    other = space(4, 3).catalog(2)
    with pytest.raises(ValueError):
        dictator(0, L422) | dictator(0, other)


families_422 = st.lists(st.integers(0, 34), max_size=9, unique=True).map(
    lambda ids: Family.from_ids(L422, ids))


@settings(max_examples=60, deadline=None)
@given(families_422)
def test_matching_and_cover_against_brute_force(Y):
    m = matching_number(Y)
    assert m.optimal and m.check(Y)
    assert m.value == _brute_matching(Y)
    c = cover_number(Y)
    assert c.value == _brute_cover(Y)
    assert c.value >= m.value
    for part in c.parts:
        assert is_intersecting(Family.from_ids(L422, part))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 35 - 1), st.integers(0, 34), st.integers(1, 4))
def test_monotonicity(mask, drop, s):
    Y = Family(L422, mask)
    sub = Family(L422, mask & ~(1 << drop))
    assert matching_number(sub).value <= matching_number(Y).value
    if is_sEM(Y, s):
        assert is_sEM(Y, s + 1)
