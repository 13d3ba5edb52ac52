"""Exact and heuristic search for large s-EM families.

An s-EM family is a set of vertices of the disjointness graph containing
no clique of size s + 1, so both searches work on that graph directly.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .families import (Construction, CoverResult, Family, MatchingCertificate,
                       cover_number, dictator, dual_dictator, matching_number, mixed_pencil, pencil_bound,
                       point_plus_hyperplane, secant_family, standard_pencil)
from .geometry import Catalog, bits, space, z_value
from .qcomb import gauss
from .solvers import Budget, _Stop, has_clique, max_clique

EXACT_CATALOG_LIMIT = 200


@dataclass
class SearchConfig:
    n: int
    k: int
    q: int
    s: int
    mode: str = "exact"
    seed: int = 0
    max_nodes: int | None = 10 ** 8
    max_seconds: float | None = 1800.0
    iterations: int = 2000
    restarts: int = 4
    threads: int = 1
    catalog_limit: int = EXACT_CATALOG_LIMIT

    def __post_init__(self):
        if self.mode not in ("exact", "local"):
            raise ValueError("mode must be 'exact' or 'local'")
        if self.s < 0:
            raise ValueError("s must be nonnegative")
        for name in ("max_nodes", "max_seconds"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive")
        if self.iterations <= 0 or self.restarts <= 0 or self.threads <= 0:
            raise ValueError("iterations, restarts and threads must be positive")

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SearchReport:
    config: SearchConfig
    family: Family
    certificate: MatchingCertificate
    cover: CoverResult | None
    benchmarks: dict
    optimal: bool
    nodes: int = 0
    log: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return self.family.size

    def as_dict(self) -> dict:
        return {
            "size": self.size,
            "members": self.family.ids,
            "optimal": self.optimal,
            "certificate": self.certificate.as_dict(),
            "cover": None if self.cover is None else self.cover.as_dict(),
            "benchmarks": self.benchmarks,
            "nodes": self.nodes,
            "log": self.log,
        }


# -- benchmarks and seeds -----------------------------------------------------

def benchmarks(n: int, k: int, q: int, s: int) -> dict:
    out = {
        "trivial_em": s * gauss(n - 1, k - 1, q),
        "averaging_bound": s * gauss(n, k, q) // z_value(n, k, q),
        "pencil_bound": pencil_bound(n, k, q, s) if s >= 1 else 0,
    }
    if (n, k) == (4, 2):
        out["mixed_union"] = s * (q * q + q) + 2 if 1 <= s <= 2 * q else None
        out["half_of_all_lines"] = (q * q + 1) * (q * q + q + 1) / 2
    return out


def _is_sem_mask(cat: Catalog, mask: int, s: int) -> bool:
    return not has_clique(cat.disjoint_masks, mask, s + 1)


def constructive_seeds(cat: Catalog, s: int) -> list[Construction]:
    """Unions of at most s intersecting families, and complements of unions
    of z - s of them, that are s-EM."""
    n, k, q = cat.n, cat.k, cat.q
    out: list[Construction] = []
    P = cat.space
    if s >= 1 and s <= P.num_points:
        try:
            fam = standard_pencil(cat, s)
            out.append(Construction(fam, (), f"pencil union of {s} points"))
        except ValueError:
            pass
    if (n, k) == (4, 2) and 2 <= s <= q + 1:
        for a in range(1, s):
            out.append(mixed_pencil(cat, a, s - a))
    z = z_value(n, k, q)
    if n == 2 * k and 1 <= z - s <= 2:
        # complements of one dictator, or of a dictator plus a disjoint dual dictator
        p = 0
        if z - s == 1:
            comp = dictator(p, cat)
        else:
            hyper = P.catalog(n - 1)
            h = next(i for i, hm in enumerate(hyper.point_masks) if not hm >> p & 1)
            comp = point_plus_hyperplane(p, h, cat)
        out.append(Construction(comp.complement(), (), f"complement of {z - s} intersecting families",
                                "complement"))
    if (n, k) == (4, 2) and q % 2 == 0 and s >= q * q // 2:
        out.append(Construction(secant_family(q), (), "secants of an elliptic quadric", "other"))
    if s >= z:
        out.append(Construction(Family.full(cat), (), "all k-spaces", "other"))
    return [c for c in out if _is_sem_mask(cat, c.family.mask, s)]


def best_union(cat: Catalog, s: int) -> Construction | None:
    """Largest constructed union of s intersecting families."""
    cands = [c for c in constructive_seeds(cat, s) if c.kind == "union"]
    return max(cands, key=lambda c: c.family.size, default=None)


# -- exact search -------------------------------------------------------------

def _clique_partition_bound(adj, A: int, s: int) -> int:
    total = 0
    while A:
        low = A & -A
        v = low.bit_length() - 1
        K = low
        Q = A & adj[v]
        while Q:
            lu = Q & -Q
            K |= lu
            Q &= adj[lu.bit_length() - 1]
        total += min(s, K.bit_count())
        A &= ~K
    return total


@dataclass
class ExactResult:
    size: int
    mask: int
    optimal: bool
    nodes: int


def max_em_graph(adj, vertices: int, s: int, incumbent: int = 0,
                 budget: Budget | None = None) -> ExactResult:
    """Largest subset of ``vertices`` with no clique of size s + 1.

    Include/exclude branch and bound. Candidates that would complete an
    (s+1)-clique with the included set are filtered at every node; the
    bound partitions included and candidate vertices greedily into
    cliques, each of which holds at most s chosen vertices.
    """
    budget = budget or Budget()
    best = [incumbent.bit_count(), incumbent]
    if s == 0:
        return ExactResult(0, 0, True, 0)

    def can_add(I: int, u: int) -> bool:
        return not has_clique(adj, I & adj[u], s)

    def rec(I: int, C: int) -> None:
        budget.tick()
        size = I.bit_count()
        if size > best[0]:
            best[0], best[1] = size, I
        if not C:
            return
        if _clique_partition_bound(adj, I | C, s) <= best[0]:
            return
        # branch on the candidate with most disjoint partners among I | C
        A = I | C
        v = max(bits(C), key=lambda u: ((adj[u] & A).bit_count(), -u))
        vb = 1 << v
        I2 = I | vb
        C2 = 0
        for u in bits(C & ~vb):
            if not adj[u] & I2 or can_add(I2, u):
                C2 |= 1 << u
        rec(I2, C2)
        rec(I, C & ~vb)

    optimal = True
    try:
        rec(0, vertices)
    except _Stop:
        optimal = False
    return ExactResult(best[0], best[1], optimal, budget.nodes)


def _certify(fam: Family, s: int) -> MatchingCertificate:
    cert = matching_number(fam)
    if not cert.optimal or cert.value > s or not cert.check(fam):
        raise AssertionError("search produced a family that is not s-EM")
    return cert


def exact_max_em(cfg: SearchConfig, cover_budget: int = 200_000) -> SearchReport:
    """Certified largest s-EM family for a small catalog."""
    if cfg.mode != "exact":
        raise ValueError("exact_max_em needs mode='exact'")
    g = gauss(cfg.n, cfg.k, cfg.q)
    if g > cfg.catalog_limit:
        raise ValueError(f"catalog of {g} k-spaces exceeds the exact-search limit {cfg.catalog_limit}")
    cat = space(cfg.n, cfg.q).catalog(cfg.k)
    seeds = constructive_seeds(cat, cfg.s)
    incumbent = max(seeds, key=lambda c: (c.family.size, -c.family.mask), default=None)
    start = incumbent.family.mask if incumbent else 0
    budget = Budget(cfg.max_nodes, cfg.max_seconds)
    res = max_em_graph(cat.disjoint_masks, cat.full_mask, cfg.s, start, budget)
    fam = Family(cat, res.mask)
    log = [f"incumbent seed: {incumbent.description if incumbent else 'empty'} "
           f"({start.bit_count()})",
           f"branch and bound: {res.nodes} nodes, optimal={res.optimal}"]
    cert = _certify(fam, cfg.s)
    cover = cover_number(fam, Budget(max_nodes=cover_budget))
    return SearchReport(cfg, fam, cert, cover, benchmarks(cfg.n, cfg.k, cfg.q, cfg.s),
                        res.optimal, res.nodes, log)


# -- local search -------------------------------------------------------------

def _random_union(cat: Catalog, s: int, rng: random.Random) -> int:
    P = cat.space
    mask = 0
    n = cat.n
    hyper = P.catalog(n - 1) if n == 2 * cat.k else None
    for _ in range(s):
        if hyper is not None and rng.random() < 0.5:
            mask |= dual_dictator(rng.randrange(len(hyper)), cat).mask
        else:
            mask |= dictator(rng.randrange(P.num_points), cat).mask
    return mask


def _climb(cat: Catalog, s: int, mask: int, rng: random.Random, iterations: int,
           deadline: float | None) -> int:
    adj = cat.disjoint_masks
    best = mask
    for it in range(iterations):
        if deadline is not None and time.monotonic() > deadline:
            break
        outside = cat.full_mask & ~mask
        if not outside:
            break
        u = rng.choice(list(bits(outside)))
        nb = mask & adj[u]
        res = max_clique(adj, nb, cap=s)
        if res.size < s:
            mask |= 1 << u
        else:
            # swap u for a member of a blocking clique when that clears every block
            w = rng.choice(res.clique)
            trial = (mask & ~(1 << w))
            if not has_clique(adj, trial & adj[u], s):
                mask = trial | 1 << u
        if mask.bit_count() > best.bit_count():
            best = mask
    return best


def _restart(args) -> int:
    n, k, q, s, seed, iterations, seconds, seed_masks = args
    cat = space(n, q).catalog(k)
    rng = random.Random(seed)
    deadline = None if seconds is None else time.monotonic() + seconds
    if seed_masks:
        start = seed_masks[rng.randrange(len(seed_masks))]
    else:
        start = 0
    if rng.random() < 0.5 or not seed_masks:
        trial = _random_union(cat, s, rng)
        if _is_sem_mask(cat, trial, s) and trial.bit_count() >= start.bit_count():
            start = trial
    return _climb(cat, s, start, rng, iterations, deadline)


def local_search_em(cfg: SearchConfig, cover_budget: int = 100_000) -> SearchReport:
    """Seeded multi-start hill climbing over s-EM families.

    Restart i uses the seed ``cfg.seed * 1_000_003 + i``; restart 0 starts
    from the best constructive seed. Results do not depend on ``threads``.
    """
    if cfg.mode != "local":
        raise ValueError("local_search_em needs mode='local'")
    cat = space(cfg.n, cfg.q).catalog(cfg.k)
    seeds = constructive_seeds(cat, cfg.s)
    seed_masks = sorted({c.family.mask for c in seeds}, key=lambda m: (-m.bit_count(), m))
    per_restart = None if cfg.max_seconds is None else cfg.max_seconds / cfg.restarts
    jobs = []
    for i in range(cfg.restarts):
        masks = seed_masks[:1] if i == 0 else seed_masks
        jobs.append((cfg.n, cfg.k, cfg.q, cfg.s, cfg.seed * 1_000_003 + i,
                     cfg.iterations, per_restart, masks))
    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(_restart, jobs))
    else:
        results = [_restart(j) for j in jobs]
    # ties broken towards the smallest id set
    best = min(results + seed_masks[:1], key=lambda m: (-m.bit_count(), sorted(bits(m))))
    fam = Family(cat, best)
    cert = _certify(fam, cfg.s)
    cover = cover_number(fam, Budget(max_nodes=cover_budget))
    bm = benchmarks(cfg.n, cfg.k, cfg.q, cfg.s)
    bm["best_constructive"] = seed_masks[0].bit_count() if seed_masks else 0
    log = [f"restart sizes: {[m.bit_count() for m in results]}"]
    return SearchReport(cfg, fam, cert, cover, bm, False, 0, log)


def run_search(cfg: SearchConfig) -> SearchReport:
    return exact_max_em(cfg) if cfg.mode == "exact" else local_search_em(cfg)


# -- audit --------------------------------------------------------------------

@dataclass
class AuditVerdict:
    verdict: str
    size: int
    s: int
    matching: int
    cover: CoverResult
    complement_cover: CoverResult | None
    best_union_size: int | None
    reasons: list[str]

    def as_dict(self) -> dict:
        return {"verdict": self.verdict, "size": self.size, "s": self.s,
                "matching": self.matching, "cover": self.cover.as_dict(),
                "complement_cover": None if self.complement_cover is None else self.complement_cover.as_dict(),
                "best_union_size": self.best_union_size, "reasons": self.reasons}


def conjecture_audit(Y: Family, s: int, budget_nodes: int = 200_000,
                     hint: list[Family] | None = None) -> AuditVerdict:
    """Compare an s-EM family against the 'union of s intersecting families
    or its complement' structure.

    The complement branch accepts Y when the k-spaces outside Y are covered
    by at most z - s intersecting families.
    """
    cat = Y.catalog
    cert = matching_number(Y, cap=s + 1)
    if cert.value > s:
        raise ValueError(f"family has {cert.value} pairwise disjoint members, not {s}-EM")
    reasons: list[str] = []
    cover = cover_number(Y, Budget(max_nodes=budget_nodes), hint=hint)
    z = z_value(cat.n, cat.k, cat.q) if cat.n >= 2 * cat.k else 1
    union = best_union(cat, s)
    union_size = None if union is None else union.family.size
    comp_cover = None
    if cover.value <= s:
        reasons.append(f"covered by {cover.value} <= {s} intersecting families")
        return AuditVerdict("consistent", Y.size, s, cert.value, cover, None, union_size, reasons)
    comp = Y.complement()
    comp_cover = cover_number(comp, Budget(max_nodes=budget_nodes))
    if comp_cover.value <= z - s:
        reasons.append(f"complement covered by {comp_cover.value} <= z - s = {z - s} intersecting families")
        return AuditVerdict("consistent", Y.size, s, cert.value, cover, comp_cover, union_size, reasons)
    if union_size is not None and Y.size < union_size:
        reasons.append(f"|Y| = {Y.size} is below a union of {s} intersecting families of size {union_size}")
        return AuditVerdict("consistent", Y.size, s, cert.value, cover, comp_cover, union_size, reasons)
    if cover.optimal and (union_size is None or Y.size > union_size):
        reasons.append(f"cover number {cover.value} > {s} proven and |Y| exceeds every constructed union")
        return AuditVerdict("candidate-counterexample", Y.size, s, cert.value, cover, comp_cover,
                            union_size, reasons)
    reasons.append("cover number not proven or |Y| ties a constructed union")
    return AuditVerdict("inconclusive", Y.size, s, cert.value, cover, comp_cover, union_size, reasons)


__all__ = ["SearchConfig", "SearchReport", "exact_max_em", "local_search_em", "run_search",
           "conjecture_audit", "AuditVerdict", "benchmarks", "constructive_seeds", "best_union",
           "max_em_graph"]
