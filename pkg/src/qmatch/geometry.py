"""Subspaces of F_q^n: enumeration, incidence, partial spreads, spread census.

Every catalog belongs to a :class:`ProjectiveSpace`, which owns the point
catalog. A k-space is stored with its RREF basis and the bit-set of the
points it contains, so incidence and disjointness reduce to integer
bit operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .gf import FieldSpec, Matrix, field_of_order, matrix_field, rref, rref_rows
from .qcomb import gauss, q_number

DEFAULT_BUDGET = 10 ** 7
MAX_AMBIENT = 8


class BudgetExceeded(RuntimeError):
    pass


def bits(mask: int) -> Iterable[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def z_value(n: int, k: int, q: int) -> int:
    """Size of a largest partial spread of k-spaces in F_q^n (n >= 2k)."""
    m, r = divmod(n, k)
    return q ** (k + r) * q_number(n - k - r, q) // q_number(k, q) + 1


# -- subspaces ----------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n given by its RREF basis."""

    field: FieldSpec
    n: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def span(cls, F: FieldSpec, n: int, vectors: Sequence[Sequence[int]]) -> "Subspace":
        reduced, _ = rref_rows(F, vectors, n)
        return cls(F, n, tuple(tuple(r) for r in reduced))

    def matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.n)

    def vectors(self) -> Iterable[tuple[int, ...]]:
        F = self.field
        for coeffs in product(range(F.q), repeat=self.dim):
            v = [0] * self.n
            for c, r in zip(coeffs, self.basis):
                if c:
                    v = [F.add(x, F.mul(c, y)) for x, y in zip(v, r)]
            yield tuple(v)

    def contains(self, v: Sequence[int]) -> bool:
        return Subspace.span(self.field, self.n, self.basis + (tuple(v),)).dim == self.dim


def meet_dim(S: Subspace, T: Subspace) -> int:
    """dim(S meet T) = dim S + dim T - rank of the stacked bases."""
    if S.n != T.n or S.field != T.field:
        raise ValueError("subspaces live in different ambient spaces")
    if not S.basis or not T.basis:
        return 0
    _, r = rref(S.matrix().stack(T.matrix()))
    return S.dim + T.dim - r


def is_disjoint(S: Subspace, T: Subspace) -> bool:
    return meet_dim(S, T) == 0


# -- catalogs -----------------------------------------------------------------

def _rref_bases(F: FieldSpec, n: int, k: int):
    """Every k x n RREF matrix of rank k, as tuples of row tuples."""
    q = F.q
    for pivots in combinations(range(n), k):
        pivset = set(pivots)
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivset]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), v in zip(free, values):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


class Catalog:
    """All k-spaces of F_q^n in lexicographic order of their RREF entries."""

    def __init__(self, space: "ProjectiveSpace", k: int):
        self.space = space
        self.k = k
        self.bases: list[tuple[tuple[int, ...], ...]] = sorted(_rref_bases(space.field, space.n, k))
        self.index: dict[tuple[tuple[int, ...], ...], int] = {b: i for i, b in enumerate(self.bases)}

    n = property(lambda self: self.space.n)
    q = property(lambda self: self.space.q)
    field = property(lambda self: self.space.field)

    def __len__(self) -> int:
        return len(self.bases)

    def __repr__(self):
        return f"Catalog(n={self.n}, k={self.k}, q={self.q}, size={len(self)})"

    @property
    def full_mask(self) -> int:
        return (1 << len(self)) - 1

    def subspace(self, i: int) -> Subspace:
        return Subspace(self.field, self.n, self.bases[i])

    def id_of(self, S: Subspace | Sequence[Sequence[int]]) -> int:
        if not isinstance(S, Subspace):
            S = Subspace.span(self.field, self.n, S)
        if S.dim != self.k:
            raise ValueError(f"expected a {self.k}-space, got dimension {S.dim}")
        return self.index[S.basis]

    @cached_property
    def point_masks(self) -> list[int]:
        """For each k-space the bit-set of point ids it contains."""
        F = self.field
        pid = self.space.point_index
        n = self.n
        masks = []
        # coefficient vectors whose first nonzero entry is 1 give each point once
        lead_one = [c for c in product(range(F.q), repeat=self.k)
                    if any(c) and c[next(i for i, x in enumerate(c) if x)] == 1]
        add, mul = F.add, F.mul
        for basis in self.bases:
            m = 0
            for coeffs in lead_one:
                v = [0] * n
                for c, r in zip(coeffs, basis):
                    if c:
                        v = [add(x, mul(c, y)) for x, y in zip(v, r)]
                m |= 1 << pid[tuple(v)]
            masks.append(m)
        return masks

    @cached_property
    def through(self) -> list[int]:
        """For each point id the bit-set of k-spaces containing it."""
        out = [0] * self.space.num_points
        for i, m in enumerate(self.point_masks):
            for p in bits(m):
                out[p] |= 1 << i
        return out

    @cached_property
    def disjoint_masks(self) -> list[int]:
        """For each k-space the bit-set of k-spaces disjoint to it."""
        full = self.full_mask
        thr = self.through
        out = []
        for m in self.point_masks:
            meets = 0
            for p in bits(m):
                meets |= thr[p]
            out.append(full & ~meets)
        return out

    def meet_dim_ids(self, i: int, j: int) -> int:
        common = (self.point_masks[i] & self.point_masks[j]).bit_count()
        return _dim_from_points(common, self.q)

    def disjoint(self, i: int, j: int) -> bool:
        return not self.point_masks[i] & self.point_masks[j]

    def members_in(self, point_mask: int) -> int:
        """Bit-set of k-spaces whose points all lie in ``point_mask``."""
        out = 0
        for i, m in enumerate(self.point_masks):
            if m & ~point_mask == 0:
                out |= 1 << i
        return out

    def members_meeting(self, point_mask: int) -> int:
        out = 0
        for p in bits(point_mask):
            out |= self.through[p]
        return out


def _dim_from_points(count: int, q: int) -> int:
    d = 0
    while q_number(d, q) < count:
        d += 1
    if q_number(d, q) != count:
        raise ValueError(f"{count} is not a point count over GF({q})")
    return d


class ProjectiveSpace:
    """F_q^n with its point catalog and lazily built k-space catalogs."""

    def __init__(self, n: int, q: int, budget: int = DEFAULT_BUDGET):
        if not 0 <= n <= MAX_AMBIENT:
            raise ValueError(f"ambient dimension {n} outside 0..{MAX_AMBIENT}")
        self.n = n
        self.q = q
        self.field = field_of_order(q)
        self.budget = budget
        self._catalogs: dict[int, Catalog] = {}

    def __repr__(self):
        return f"ProjectiveSpace(n={self.n}, q={self.q})"

    @cached_property
    def points(self) -> Catalog:
        return self.catalog(1)

    @cached_property
    def point_index(self) -> dict[tuple[int, ...], int]:
        return {b[0]: i for i, b in enumerate(self.points.bases)}

    @property
    def num_points(self) -> int:
        return q_number(self.n, self.q)

    @property
    def all_points(self) -> int:
        return (1 << self.num_points) - 1

    def catalog(self, k: int) -> Catalog:
        if not 0 <= k <= self.n:
            raise ValueError(f"dimension {k} outside 0..{self.n}")
        if k not in self._catalogs:
            size = gauss(self.n, k, self.q)
            if size > self.budget:
                raise BudgetExceeded(f"{size} {k}-spaces exceed the budget {self.budget}")
            self._catalogs[k] = Catalog(self, k)
        return self._catalogs[k]

    def point_id(self, v: Sequence[int]) -> int:
        """Id of the point spanned by the nonzero vector v."""
        F = self.field
        lead = next(x for x in v if x)
        inv = F.inv(lead)
        return self.point_index[tuple(F.mul(inv, x) for x in v)]

    def point_mask_of(self, S: Subspace) -> int:
        if S.dim == 0:
            return 0
        return self.catalog(S.dim).point_masks[self.catalog(S.dim).id_of(S)]

    def span_points(self, point_ids: Iterable[int]) -> Subspace:
        vecs = [self.points.bases[p][0] for p in point_ids]
        return Subspace.span(self.field, self.n, vecs)


@lru_cache(maxsize=None)
def space(n: int, q: int) -> ProjectiveSpace:
    """Shared ProjectiveSpace instance for (n, q)."""
    return ProjectiveSpace(n, q)


def enumerate_subspaces(n: int, k: int, q: int, budget: int = DEFAULT_BUDGET) -> Catalog:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if gauss(n, k, q) > budget:
        raise BudgetExceeded(f"[{n} choose {k}]_{q} = {gauss(n, k, q)} exceeds {budget}")
    return space(n, q).catalog(k)


def count_disjoint_to(S: Subspace, l: int, q: int | None = None) -> int:
    """Number of l-spaces disjoint to S, by exhaustive scan."""
    P = space(S.n, S.field.q)
    if l == 0:
        return 1
    cat = P.catalog(l)
    sm = P.point_mask_of(S)
    return sum(1 for m in cat.point_masks if not m & sm)


def count_point_disjoint(p: int, A: int, B: int, catalog: Catalog, strict: bool = True) -> int:
    """Number of k-spaces through point ``p`` disjoint to the k-spaces A and B."""
    pm = catalog.point_masks
    if strict:
        if pm[A] & pm[B]:
            raise ValueError("A and B must be disjoint")
        if (pm[A] | pm[B]) >> p & 1:
            raise ValueError("the point must lie outside A and B")
    avoid = pm[A] | pm[B]
    return sum(1 for i in bits(catalog.through[p]) if not pm[i] & avoid)


# -- partial spreads ----------------------------------------------------------

@dataclass(frozen=True)
class PartialSpread:
    catalog: Catalog
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)

    def is_valid(self) -> bool:
        pm = self.catalog.point_masks
        seen = 0
        for i in self.members:
            if pm[i] & seen:
                return False
            seen |= pm[i]
        return True

    @property
    def covered(self) -> int:
        out = 0
        for i in self.members:
            out |= self.catalog.point_masks[i]
        return out


def beutelspacher_spread(n: int, k: int, q: int) -> PartialSpread:
    """A partial spread of k-spaces of size z(n, k, q).

    Write n = (k + r) + (m - 1)k. On the last (m-1)k coordinates take the
    Desarguesian spread (field reduction of GF(q^k)); over each of its
    elements P place q^(k+r) graphs of maps P -> T, where T is the span of
    the first k + r coordinates and the maps come from GF(q^(k+r)). Finish
    with one k-space inside T.
    """
    if k < 1 or n < 2 * k:
        raise ValueError("beutelspacher_spread needs n >= 2k >= 2")
    m, r = divmod(n, k)
    P = space(n, q)
    F = P.field
    cat = P.catalog(k)
    t = k + r
    rest = (m - 1) * k

    small = matrix_field(F, k)  # GF(q^k) as k x k matrices
    big = matrix_field(F, t)    # GF(q^(k+r)) as t x t matrices

    # Desarguesian spread of F_q^rest: rows [0..0 | I | M_{j+1} | ... ]
    blocks = m - 1
    ident = [[int(i == j) for j in range(k)] for i in range(k)]
    zero = [[0] * k for _ in range(k)]
    desarg = []
    for lead in range(blocks):
        for tail in product(small, repeat=blocks - lead - 1):
            rows = [[] for _ in range(k)]
            for b in range(blocks):
                blk = zero if b < lead else ident if b == lead else tail[b - lead - 1].rows
                for i in range(k):
                    rows[i].extend(blk[i])
            desarg.append(rows)

    members = []
    for rows in desarg:
        # graph of x -> (x,0) A for x in P; P lives on the trailing coordinates
        for A in big:
            basis = []
            for i in range(k):
                head = [0] * t
                for j in range(t):
                    # (e_i-th row of P) maps to row i of the top k x t block of A
                    head[j] = A.rows[i][j]
                basis.append(head + rows[i])
            members.append(cat.id_of(basis))
    members.append(cat.id_of([[int(i == j) for j in range(n)] for i in range(k)]))
    spread = PartialSpread(cat, tuple(sorted(members)))
    assert len(spread) == z_value(n, k, q) and spread.is_valid()
    return spread


# -- spread census ------------------------------------------------------------

CENSUS_CATALOG_LIMIT = 400
CENSUS_SPREAD_LIMIT = 10 ** 7


def enumerate_z_spreads(catalog: Catalog, limit: int = CENSUS_SPREAD_LIMIT) -> list[int]:
    """All partial spreads of maximum size z, as bit-sets over catalog ids.

    Backtracking on the least uncovered point: it is either covered by a
    member through it or left as one of the holes a z-spread must have.
    """
    n, k, q = catalog.n, catalog.k, catalog.q
    z = z_value(n, k, q)
    holes_total = q_number(n, q) - z * q_number(k, q)
    pm = catalog.point_masks
    thr = catalog.through
    npts = q_number(n, q)
    found: list[int] = []

    def rec(covered: int, chosen: int, size: int, holes: int, start: int) -> None:
        if size == z:
            found.append(chosen)
            if len(found) > limit:
                raise BudgetExceeded(f"more than {limit} z-spreads")
            return
        p = start
        while p < npts and covered >> p & 1:
            p += 1
        if p >= npts:
            return
        for i in bits(thr[p]):
            if not pm[i] & covered:
                rec(covered | pm[i], chosen | 1 << i, size + 1, holes, p + 1)
        if holes < holes_total:
            rec(covered | 1 << p, chosen, size, holes + 1, p + 1)

    rec(0, 0, 0, 0, 0)
    return found


@dataclass
class SpreadCensus:
    n: int
    k: int
    q: int
    z: int
    N: int
    n1: int
    n2: int
    n3: int
    fixed: tuple[int, int, int]
    n1_homogeneous: bool
    exact_common_disjoint: int
    n3_by_candidate: dict[int, int]
    formula_n1n2: Fraction
    exact_n1n2: Fraction
    printed_n2n3_numerator: int
    printed_n2n3: Fraction | None
    exact_n2n3: Fraction | None
    spreads: list[int] = field(repr=False, default_factory=list)

    @property
    def identities(self) -> dict[str, bool]:
        g = gauss(self.n, self.k, self.q)
        disj = self.q ** (self.k ** 2) * gauss(self.n - self.k, self.k, self.q)
        return {
            "N*z == n1*gauss": self.N * self.z == self.n1 * g,
            "n1*(z-1) == n2*disjoint": self.n1 * (self.z - 1) == self.n2 * disj,
            "n2*(z-2) == sum n3": self.n2 * (self.z - 2) == sum(self.n3_by_candidate.values()),
        }

    @property
    def printed_numerator_discrepancy(self) -> bool:
        return self.printed_n2n3_numerator != self.exact_common_disjoint

    def as_dict(self) -> dict:
        fr = lambda x: None if x is None else str(x)  # noqa: E731
        return {
            "n": self.n, "k": self.k, "q": self.q, "z": self.z,
            "N": self.N, "n1": self.n1, "n2": self.n2, "n3": self.n3,
            "fixed": list(self.fixed),
            "n1_homogeneous": self.n1_homogeneous,
            "exactCommonDisjoint": self.exact_common_disjoint,
            "n3_values": sorted(set(self.n3_by_candidate.values())),
            "formula_n1n2": fr(self.formula_n1n2),
            "exact_n1n2": fr(self.exact_n1n2),
            "printed_n2n3_numerator": self.printed_n2n3_numerator,
            "printed_n2n3": fr(self.printed_n2n3),
            "exact_n2n3": fr(self.exact_n2n3),
            "printed_numerator_discrepancy": self.printed_numerator_discrepancy,
            "identities": self.identities,
        }


def census_feasible(n: int, k: int, q: int, catalog_limit: int = CENSUS_CATALOG_LIMIT) -> bool:
    return n >= 2 * k >= 2 and gauss(n, k, q) <= catalog_limit


_census_cache: dict[tuple[int, int, int], SpreadCensus] = {}


def spread_census(n: int, k: int, q: int, catalog_limit: int = CENSUS_CATALOG_LIMIT,
                  spread_limit: int = CENSUS_SPREAD_LIMIT) -> SpreadCensus:
    """Exact counts of z-spreads through 1, 2 and 3 fixed disjoint k-spaces."""
    key = (n, k, q)
    if key in _census_cache:
        return _census_cache[key]
    if not census_feasible(n, k, q, catalog_limit):
        raise BudgetExceeded(f"spread census at ({n},{k},{q}) exceeds the catalog limit {catalog_limit}")
    cat = space(n, q).catalog(k)
    z = z_value(n, k, q)
    spreads = enumerate_z_spreads(cat, spread_limit)
    N = len(spreads)
    per_member = [0] * len(cat)
    for Z in spreads:
        for i in bits(Z):
            per_member[i] += 1
    dis = cat.disjoint_masks
    A = 0
    B = next(bits(dis[A]))
    common = dis[A] & dis[B]
    C = next(bits(common))
    n1 = per_member[A]
    through_ab = [Z for Z in spreads if Z >> A & 1 and Z >> B & 1]
    n2 = len(through_ab)
    n3_by = {c: sum(1 for Z in through_ab if Z >> c & 1) for c in bits(common)}
    n3 = n3_by[C]

    g = gauss(n, k, q)
    disj = q ** (k * k) * gauss(n - k, k, q)
    printed_num = disj - q_number(k, q) * gauss(n - 1, k - 1, q)
    census = SpreadCensus(
        n=n, k=k, q=q, z=z, N=N, n1=n1, n2=n2, n3=n3, fixed=(A, B, C),
        n1_homogeneous=len(set(per_member)) == 1,
        exact_common_disjoint=common.bit_count(),
        n3_by_candidate=n3_by,
        formula_n1n2=Fraction(disj, z - 1),
        exact_n1n2=Fraction(n1, n2) if n2 else None,
        printed_n2n3_numerator=printed_num,
        printed_n2n3=Fraction(printed_num, z - 2) if z > 2 else None,
        exact_n2n3=Fraction(n2, n3) if n3 else None,
        spreads=spreads,
    )
    assert N * z == n1 * g or not census.n1_homogeneous
    _census_cache[key] = census
    return census


def avg_spread_intersection(Y_mask: int, S: int, census: SpreadCensus) -> Fraction:
    """Mean of |Y meet Z| over the z-spreads Z containing the member S."""
    if not Y_mask >> S & 1:
        raise ValueError("S must be a member of Y")
    sizes = [(Y_mask & Z).bit_count() for Z in census.spreads if Z >> S & 1]
    return Fraction(sum(sizes), len(sizes))


def spread_mean(Y_mask: int, census: SpreadCensus) -> Fraction:
    """Mean of |Y meet Z| over all z-spreads."""
    return Fraction(sum((Y_mask & Z).bit_count() for Z in census.spreads), census.N)


# -- elliptic quadric ---------------------------------------------------------

@dataclass(frozen=True)
class Quadric:
    q: int
    form: tuple[int, int]  # f(x2, x3) = x2^2 + b x2 x3 + c x3^2
    points: tuple[int, ...]

    @property
    def mask(self) -> int:
        m = 0
        for p in self.points:
            m |= 1 << p
        return m


def elliptic_quadric(q: int) -> Quadric:
    """Points of x0 x1 + x2^2 + b x2 x3 + c x3^2 = 0 in PG(3, q).

    (b, c) is the first pair in lexicographic order making t^2 + b t + c
    irreducible over GF(q).
    """
    P = space(4, q)
    F = P.field
    form = None
    for b, c in product(range(q), repeat=2):
        if all(F.add(F.add(F.mul(t, t), F.mul(b, t)), c) for t in range(q)):
            form = (b, c)
            break
    assert form is not None, "no irreducible binary quadratic form"
    b, c = form

    def value(v):
        x0, x1, x2, x3 = v
        out = F.mul(x0, x1)
        out = F.add(out, F.mul(x2, x2))
        out = F.add(out, F.mul(b, F.mul(x2, x3)))
        return F.add(out, F.mul(c, F.mul(x3, x3)))

    pts = tuple(i for i, basis in enumerate(P.points.bases) if value(basis[0]) == 0)
    quad = Quadric(q, form, pts)
    assert len(pts) == q * q + 1
    return quad


def max_line_hits(point_mask: int, q: int) -> int:
    """Largest number of points of the set on a single line of PG(3, q)."""
    lines = space(4, q).catalog(2)
    return max((m & point_mask).bit_count() for m in lines.point_masks)


# -- serialization ------------------------------------------------------------

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def _encode_row(values: Iterable[int], q: int) -> str:
    if q <= len(_DIGITS):
        return "".join(_DIGITS[v] for v in values)
    return " ".join(str(v) for v in values)


def _decode_row(text: str, q: int) -> list[int]:
    if q <= len(_DIGITS):
        return [_DIGITS.index(ch) for ch in text.strip()]
    return [int(x) for x in text.split()]


def dump_subspaces(n: int, k: int, q: int, bases: Iterable[Sequence[Sequence[int]]]) -> str:
    """Header ``n k q`` then one subspace per line, RREF entries row-major."""
    lines = [f"{n} {k} {q}"]
    for basis in bases:
        lines.append(_encode_row((x for row in basis for x in row), q))
    return "\n".join(lines) + "\n"


def load_subspaces(text: str) -> tuple[tuple[int, int, int], list[tuple[tuple[int, ...], ...]]]:
    rows = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    n, k, q = (int(x) for x in rows[0].split())
    out = []
    for ln in rows[1:]:
        flat = _decode_row(ln, q)
        if len(flat) != n * k:
            raise ValueError(f"expected {n * k} entries, got {len(flat)}")
        out.append(tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(k)))
    return (n, k, q), out


def dump_catalog(cat: Catalog, ids: Iterable[int] | None = None) -> str:
    ids = range(len(cat)) if ids is None else ids
    return dump_subspaces(cat.n, cat.k, cat.q, (cat.bases[i] for i in ids))


def expected_disjoint_count(n: int, k: int, l: int, q: int) -> int:
    """q^{kl} [n-k choose l]: l-spaces disjoint to a fixed k-space."""
    return q ** (k * l) * gauss(n - k, l, q)


def spread_count_bound(n: int, k: int, q: int) -> float:
    """Crude log10 size of the z-spread search space (for diagnostics)."""
    return z_value(n, k, q) * math.log10(max(2, gauss(n, k, q)))
