"""Families of k-spaces, the constructions studied here, and their predicates."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .geometry import (Catalog, Subspace, bits, elliptic_quadric, space,
                       z_value)
from .qcomb import gauss, q_number
from .solvers import Budget, ColouringResult, chromatic_number, max_clique


@dataclass(frozen=True)
class Family:
    """A set of k-spaces of one catalog, stored as a bit-set of catalog ids."""

    catalog: Catalog
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> len(self.catalog):
            raise ValueError("family mask has ids outside the catalog")

    @classmethod
    def from_ids(cls, catalog: Catalog, ids: Iterable[int]) -> "Family":
        m = 0
        for i in ids:
            if not 0 <= i < len(catalog):
                raise ValueError(f"id {i} outside the catalog")
            m |= 1 << i
        return cls(catalog, m)

    @classmethod
    def empty(cls, catalog: Catalog) -> "Family":
        return cls(catalog, 0)

    @classmethod
    def full(cls, catalog: Catalog) -> "Family":
        return cls(catalog, catalog.full_mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.size

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __iter__(self):
        return bits(self.mask)

    @property
    def ids(self) -> list[int]:
        return list(bits(self.mask))

    def _same(self, other: "Family") -> None:
        if other.catalog is not self.catalog:
            raise ValueError("families over different catalogs")

    def __or__(self, other: "Family") -> "Family":
        self._same(other)
        return Family(self.catalog, self.mask | other.mask)

    def __and__(self, other: "Family") -> "Family":
        self._same(other)
        return Family(self.catalog, self.mask & other.mask)

    def __sub__(self, other: "Family") -> "Family":
        self._same(other)
        return Family(self.catalog, self.mask & ~other.mask)

    def complement(self) -> "Family":
        return Family(self.catalog, self.catalog.full_mask & ~self.mask)

    def __eq__(self, other):
        return isinstance(other, Family) and other.catalog is self.catalog and other.mask == self.mask

    def __hash__(self):
        return hash((id(self.catalog), self.mask))

    def __repr__(self):
        c = self.catalog
        return f"Family(n={c.n}, k={c.k}, q={c.q}, size={self.size})"


@dataclass(frozen=True)
class Construction:
    """A family together with an explicit cover by intersecting parts."""

    family: Family
    parts: tuple[Family, ...]
    description: str = ""
    kind: str = "union"  # union | complement | other


# -- constructions ------------------------------------------------------------

def _point_id(catalog: Catalog, p: int | Sequence[int]) -> int:
    if isinstance(p, int):
        if not 0 <= p < catalog.space.num_points:
            raise ValueError(f"point id {p} out of range")
        return p
    return catalog.space.point_id(p)


def dictator(p: int | Sequence[int], catalog: Catalog) -> Family:
    """All k-spaces through the point p (a point id or a spanning vector)."""
    return Family(catalog, catalog.through[_point_id(catalog, p)])


def _hyperplane_mask(catalog: Catalog, H: int | Subspace) -> int:
    P = catalog.space
    hyper = P.catalog(P.n - 1)
    if isinstance(H, Subspace):
        if H.dim != P.n - 1:
            raise ValueError("H must be a hyperplane")
        return P.point_mask_of(H)
    return hyper.point_masks[H]


def dual_dictator(H: int | Subspace, catalog: Catalog) -> Family:
    """All k-spaces inside the hyperplane H (a hyperplane id or a Subspace)."""
    return Family(catalog, catalog.members_in(_hyperplane_mask(catalog, H)))


def ell_for(s, q: int) -> int:
    """Least l with s <= [l]_q."""
    l = 0
    while q_number(l, q) < s:
        l += 1
    return l


def pencil_union(points: Sequence[int], catalog: Catalog) -> Family:
    """k-spaces containing at least one of s points spanning at most an l-space."""
    pts = [_point_id(catalog, p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    s = len(pts)
    l = ell_for(s, catalog.q)
    span = catalog.space.span_points(pts)
    if span.dim > l:
        raise ValueError(f"{s} points span a {span.dim}-space, need dimension <= {l}")
    m = 0
    for p in pts:
        m |= catalog.through[p]
    return Family(catalog, m)


def pencil_bound(n: int, k: int, q: int, s: int) -> int:
    """s([n-1,k-1] - [l-1][n-2,k-2]) with l from s."""
    l = ell_for(s, q)
    return s * (gauss(n - 1, k - 1, q) - q_number(max(l - 1, 0), q) * gauss(n - 2, k - 2, q))


def points_in_subspace(catalog: Catalog, S: Subspace, count: int) -> list[int]:
    """The first ``count`` point ids (ascending) of the subspace S."""
    pts = list(bits(catalog.space.point_mask_of(S)))
    if len(pts) < count:
        raise ValueError("subspace has too few points")
    return pts[:count]


def standard_pencil(catalog: Catalog, s: int) -> Family:
    """Pencil union on the first s points of the coordinate l-space."""
    n, q = catalog.n, catalog.q
    l = ell_for(s, q)
    S = Subspace.span(catalog.field, n, [[int(i == j) for j in range(n)] for i in range(l)])
    return pencil_union(points_in_subspace(catalog, S, s), catalog)


def secant_family(q: int) -> Family:
    """Lines of PG(3, q) meeting the elliptic quadric in exactly two points."""
    lines = space(4, q).catalog(2)
    Q = elliptic_quadric(q).mask
    return Family.from_ids(lines, [i for i, m in enumerate(lines.point_masks)
                                   if (m & Q).bit_count() == 2])


def footnote_construction(q: int) -> Construction:
    """Lines in planes through a line l, plus lines through q^2/2 - q points of pi - l.

    l is the line x2 = x3 = 0 and pi the plane x3 = 0; the chosen points are
    the first q^2/2 - q points of pi outside l in catalog order. The parts
    are the dictators of the points of l and of the chosen points.
    """
    if q % 2:
        raise ValueError("the construction needs q even")
    P = space(4, q)
    lines = P.catalog(2)
    F = P.field
    ell = Subspace.span(F, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    pi = Subspace.span(F, 4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    ell_pts = P.point_mask_of(ell)
    pi_pts = P.point_mask_of(pi)
    chosen = list(bits(pi_pts & ~ell_pts))[: q * q // 2 - q]

    in_planes = lines.members_meeting(ell_pts)  # a line meets l iff it lies in a plane through l
    through_chosen = 0
    for p in chosen:
        through_chosen |= lines.through[p]
    fam = Family(lines, in_planes | through_chosen)
    parts = tuple(Family(lines, lines.through[p]) for p in list(bits(ell_pts)) + chosen)
    return Construction(fam, parts, f"footnote construction, q={q}, {len(chosen)} chosen points")


def footnote_size_formula(q: int) -> int:
    return q ** 4 // 2 + q ** 2 + q + 2


def bilinear_family(F_sub: int | Subspace, catalog: Catalog) -> Family:
    """k-spaces disjoint to a fixed (n-k)-space."""
    P = catalog.space
    if isinstance(F_sub, Subspace):
        if F_sub.dim != P.n - catalog.k:
            raise ValueError("need an (n-k)-space")
        fm = P.point_mask_of(F_sub)
    else:
        fm = P.catalog(P.n - catalog.k).point_masks[F_sub]
    return Family(catalog, catalog.full_mask & ~catalog.members_meeting(fm))


def point_plus_hyperplane(p: int, H: int, catalog: Catalog) -> Family:
    """Dictator of p together with the dual dictator of H, for p outside H."""
    hm = _hyperplane_mask(catalog, H)
    if hm >> p & 1:
        raise ValueError("the point must lie outside the hyperplane")
    return dictator(p, catalog) | dual_dictator(H, catalog)


def mixed_pencil(catalog: Catalog, a: int, b: int) -> Construction:
    """a dictators on points of a line l and b dual dictators on planes
    through a line m skew to l that avoid those points (n = 4, k = 2).

    Size s(q^2+q)+2 for a, b >= 1 and s = a + b <= q + 1.
    """
    n, q = catalog.n, catalog.q
    if (n, catalog.k) != (4, 2):
        raise ValueError("mixed pencils are defined for lines of PG(3, q)")
    if a + b > q + 1 or a < 0 or b < 0:
        raise ValueError("need a + b <= q + 1")
    P = catalog.space
    F = P.field
    ell = Subspace.span(F, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    m_line = Subspace.span(F, 4, [[0, 0, 1, 0], [0, 0, 0, 1]])
    pts = list(bits(P.point_mask_of(ell)))[:a]
    avoid = 0
    for p in pts:
        avoid |= 1 << p
    mm = P.point_mask_of(m_line)
    planes = P.catalog(3)
    hyp = [h for h, hm in enumerate(planes.point_masks) if hm & mm == mm and not hm & avoid][:b]
    parts = tuple([dictator(p, catalog) for p in pts] + [dual_dictator(h, catalog) for h in hyp])
    fam = Family(catalog, 0)
    for part in parts:
        fam = fam | part
    return Construction(fam, parts, f"{a} dictators on a line, {b} dual dictators on planes through a skew line")


# -- predicates ---------------------------------------------------------------

def is_intersecting(Y: Family) -> bool:
    dis = Y.catalog.disjoint_masks
    return all(not dis[i] & Y.mask for i in Y)


@dataclass
class MatchingCertificate:
    value: int
    witness: tuple[int, ...]
    optimal: bool
    log: list[str] = field(default_factory=list)
    nodes: int = 0

    def check(self, Y: Family) -> bool:
        cat = Y.catalog
        if len(self.witness) != self.value or any(i not in Y for i in self.witness):
            return False
        seen = 0
        for i in self.witness:
            if cat.point_masks[i] & seen:
                return False
            seen |= cat.point_masks[i]
        return True

    def as_dict(self) -> dict:
        return {"value": self.value, "witness": list(self.witness),
                "optimal": self.optimal, "log": self.log, "nodes": self.nodes}


def matching_number(Y: Family, cap: int | None = None, budget: Budget | None = None) -> MatchingCertificate:
    """Maximum number of pairwise disjoint members of Y.

    Exact search for a maximum clique of the disjointness graph on Y with
    colouring bounds, the partial-spread bound z(n, k, q) and the point
    capacity bound. With ``cap`` the search stops as soon as ``cap``
    disjoint members are found.
    """
    cat = Y.catalog
    if Y.size == 0:
        return MatchingCertificate(0, (), True, ["empty family"])
    n, k, q = cat.n, cat.k, cat.q
    upper = z_value(n, k, q) if n >= 2 * k and k >= 1 else 1
    res = max_clique(cat.disjoint_masks, Y.mask, cap=cap, upper=upper,
                     point_masks=cat.point_masks, points_per_member=q_number(k, q),
                     budget=budget)
    log = list(res.log)
    if res.optimal and not (cap is not None and res.size >= cap):
        log.append("search exhausted: value is the maximum")
    return MatchingCertificate(res.size, res.clique, res.optimal, log, res.nodes)


def is_sEM(Y: Family, s: int) -> bool:
    if s < 0:
        raise ValueError("s must be nonnegative")
    cert = matching_number(Y, cap=s + 1)
    if not cert.optimal and cert.value < s + 1:
        raise RuntimeError("matching search did not finish")
    return cert.value < s + 1


@dataclass
class CoverResult:
    value: int
    parts: list[tuple[int, ...]]
    optimal: bool
    lower: int

    def as_dict(self) -> dict:
        return {"value": self.value, "parts": [list(p) for p in self.parts],
                "optimal": self.optimal, "lower": self.lower}


def cover_number(Y: Family, budget: Budget | None = None,
                 hint: Sequence[Family] | None = None) -> CoverResult:
    """Fewest intersecting families with union Y (colouring the disjointness graph).

    ``hint`` is an optional known cover used as the starting incumbent.
    """
    if Y.size == 0:
        return CoverResult(0, [], True, 0)
    initial = None
    if hint is not None:
        # a cover may overlap; a colouring needs a partition
        initial, seen = [], 0
        for h in hint:
            initial.append(h.mask & Y.mask & ~seen)
            seen |= h.mask

    res: ColouringResult = chromatic_number(Y.catalog.disjoint_masks, Y.mask,
                                            initial=initial, budget=budget)
    return CoverResult(res.colours, res.classes, res.optimal, res.lower)


def max_intersecting(catalog: Catalog, budget: Budget | None = None):
    """Largest intersecting family: maximum clique of the meeting graph."""
    meets = [catalog.full_mask & ~d & ~(1 << i) for i, d in enumerate(catalog.disjoint_masks)]
    res = max_clique(meets, catalog.full_mask, upper=None, budget=budget)
    return res, meets


def secant_count(q: int) -> int:
    return comb(q * q + 1, 2)
