"""Cameron-Liebler (Boolean degree 1) membership of families of k-spaces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .families import Family, dictator, dual_dictator
from .geometry import Catalog, census_feasible, spread_census
from .qcomb import gauss


class _RationalBasis:
    """RREF basis over Q of the row space spanned by 0/1 integer vectors."""

    def __init__(self, rows: list[list[int]], width: int):
        self.width = width
        reduced: list[list[Fraction]] = []
        pivots: list[int] = []
        for row in rows:
            v = [Fraction(x) for x in row]
            self._reduce(v, reduced, pivots)
            lead = next((c for c, x in enumerate(v) if x), None)
            if lead is None:
                continue
            inv = 1 / v[lead]
            v = [x * inv for x in v]
            for other in reduced:
                f = other[lead]
                if f:
                    for c in range(width):
                        if v[c]:
                            other[c] -= f * v[c]
            reduced.append(v)
            pivots.append(lead)
        self.rows = reduced
        self.pivots = pivots

    @staticmethod
    def _reduce(v, reduced, pivots):
        for row, p in zip(reduced, pivots):
            f = v[p]
            if f:
                for c, x in enumerate(row):
                    if x:
                        v[c] -= f * x

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, vec: list[int]) -> bool:
        v = [Fraction(x) for x in vec]
        self._reduce(v, self.rows, self.pivots)
        return not any(v)


@lru_cache(maxsize=None)
def _incidence_basis(catalog: Catalog) -> _RationalBasis:
    N = len(catalog)
    rows = [[1] * N]
    for mask in catalog.through:
        rows.append([mask >> i & 1 for i in range(N)])
    return _RationalBasis(rows, N)


def is_degree_one(Y: Family) -> bool:
    """Indicator of Y lies in the rational span of the all-ones vector and
    the point-incidence vectors."""
    basis = _incidence_basis(Y.catalog)
    return basis.contains([Y.mask >> i & 1 for i in range(len(Y.catalog))])


def cl_parameter(Y: Family) -> Fraction:
    """s defined by |Y| = s [n-1 choose k-1]."""
    c = Y.catalog
    return Fraction(Y.size, gauss(c.n - 1, c.k - 1, c.q))


@dataclass(frozen=True)
class SpreadCheck:
    constant: bool
    s: Fraction
    values: tuple[int, ...]


def spread_constant_check(Y: Family) -> SpreadCheck | None:
    """Whether every spread meets Y in the same number of members.

    Only defined for k | n with a feasible spread census; otherwise None.
    """
    c = Y.catalog
    if c.n % c.k or not census_feasible(c.n, c.k, c.q):
        return None
    census = spread_census(c.n, c.k, c.q)
    values = tuple(sorted({(Y.mask & Z).bit_count() for Z in census.spreads}))
    return SpreadCheck(len(values) == 1, cl_parameter(Y), values)


TRIVIAL_TYPES = ("none", "empty", "all", "dictator", "dual-dictator",
                 "point-plus-hyperplane", "complement-of-those")


def _trivial_masks(catalog: Catalog) -> dict[int, str]:
    P = catalog.space
    hyper = P.catalog(P.n - 1)
    out: dict[int, str] = {}
    dicts = [dictator(p, catalog).mask for p in range(P.num_points)]
    duals = [dual_dictator(h, catalog).mask for h in range(len(hyper))]
    for m in dicts:
        out.setdefault(m, "dictator")
    for m in duals:
        out.setdefault(m, "dual-dictator")
    for p, dm in enumerate(dicts):
        for h, hm in enumerate(hyper.point_masks):
            if not hm >> p & 1:
                out.setdefault(dm | duals[h], "point-plus-hyperplane")
    return out


@lru_cache(maxsize=None)
def _trivial_table(catalog: Catalog) -> dict[int, str]:
    return _trivial_masks(catalog)


def classify_trivial(Y: Family) -> str:
    c = Y.catalog
    if Y.mask == 0:
        return "empty"
    if Y.mask == c.full_mask:
        return "all"
    table = _trivial_table(c)
    if Y.mask in table:
        return table[Y.mask]
    if (c.full_mask & ~Y.mask) in table:
        return "complement-of-those"
    return "none"


@dataclass(frozen=True)
class CLReport:
    n: int
    k: int
    q: int
    size: int
    s: Fraction
    degree1: bool
    spread_constant: bool | None
    spread_values: tuple[int, ...] | None
    trivial_type: str

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "q": self.q, "size": self.size,
                "s": str(self.s), "degree1": self.degree1,
                "spreadConstant": self.spread_constant,
                "spreadValues": None if self.spread_values is None else list(self.spread_values),
                "trivialType": self.trivial_type}


def cl_report(Y: Family) -> CLReport:
    c = Y.catalog
    sc = spread_constant_check(Y)
    return CLReport(c.n, c.k, c.q, Y.size, cl_parameter(Y), is_degree_one(Y),
                    None if sc is None else sc.constant,
                    None if sc is None else sc.values,
                    classify_trivial(Y))
