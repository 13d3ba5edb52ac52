"""Bit-set graph search: maximum clique and exact colouring.

Graphs are lists of neighbour bit-sets indexed by vertex id. Vertices
outside the ``vertices`` mask passed to a solver are ignored.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .geometry import bits


class _Stop(Exception):
    pass


@dataclass
class Budget:
    max_nodes: int | None = None
    max_seconds: float | None = None
    nodes: int = 0
    _start: float = field(default_factory=time.monotonic)

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _Stop
        if self.max_seconds is not None and self.nodes % 1024 == 0:
            if time.monotonic() - self._start > self.max_seconds:
                raise _Stop

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self._start


def _colour_order(adj: Sequence[int], P: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of P; returns vertices and colour bounds."""
    order: list[int] = []
    bound: list[int] = []
    U = P
    colour = 0
    while U:
        colour += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v] & ~low
            U &= ~low
            order.append(v)
            bound.append(colour)
    return order, bound


@dataclass
class CliqueResult:
    size: int
    clique: tuple[int, ...]
    optimal: bool
    nodes: int
    log: list[str] = field(default_factory=list)


def max_clique(adj: Sequence[int], vertices: int, *, cap: int | None = None,
               upper: int | None = None, point_masks: Sequence[int] | None = None,
               points_per_member: int = 1, budget: Budget | None = None) -> CliqueResult:
    """Largest clique inside ``vertices``.

    ``cap`` stops the search once a clique of that size is found; ``upper``
    is a known upper bound (search stops when reached). With ``point_masks``
    each vertex occupies a set of points, cliques are sets of vertices with
    pairwise disjoint point sets, and the points still reachable from the
    candidates give a capacity bound.
    """
    budget = budget or Budget()
    best: list[int] = []
    limits = [x for x in (cap, upper) if x is not None]
    target = min(limits) if limits else None

    def expand(R: list[int], P: int) -> None:
        budget.tick()
        if point_masks is not None:
            reach = 0
            for u in bits(P):
                reach |= point_masks[u]
            if len(R) + reach.bit_count() // points_per_member <= len(best):
                return
        order, bound = _colour_order(adj, P)
        for idx in range(len(order) - 1, -1, -1):
            if len(R) + bound[idx] <= len(best):
                return
            v = order[idx]
            R.append(v)
            newP = P & adj[v]
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best[:] = R
                if target is not None and len(best) >= target:
                    raise _Stop
            R.pop()
            P &= ~(1 << v)

    optimal = True
    log: list[str] = []
    try:
        if vertices:
            expand([], vertices)
    except _Stop:
        optimal = target is not None and len(best) >= target
        if not optimal:
            log.append(f"budget exhausted after {budget.nodes} nodes")
    if upper is not None and len(best) >= upper:
        log.append(f"upper bound {upper} reached")
    if cap is not None and len(best) >= cap:
        log.append(f"cap {cap} reached")
    return CliqueResult(len(best), tuple(sorted(best)), optimal, budget.nodes, log)


def all_max_cliques(adj: Sequence[int], vertices: int, size: int,
                    budget: Budget | None = None) -> list[tuple[int, ...]]:
    """Every clique of exactly ``size`` vertices, assuming none is larger."""
    budget = budget or Budget()
    out: list[tuple[int, ...]] = []

    def expand(R: list[int], P: int) -> None:
        budget.tick()
        if len(R) == size:
            out.append(tuple(sorted(R)))
            return
        order, bound = _colour_order(adj, P)
        for idx in range(len(order) - 1, -1, -1):
            if len(R) + bound[idx] < size:
                return
            v = order[idx]
            R.append(v)
            expand(R, P & adj[v])
            R.pop()
            P &= ~(1 << v)

    try:
        expand([], vertices)
    except _Stop:
        raise RuntimeError("clique enumeration exceeded its budget") from None
    return sorted(out)


def has_clique(adj: Sequence[int], vertices: int, size: int) -> bool:
    if size <= 0:
        return True
    return max_clique(adj, vertices, cap=size).size >= size


# -- colouring ----------------------------------------------------------------

@dataclass
class ColouringResult:
    colours: int
    classes: list[tuple[int, ...]]
    optimal: bool
    lower: int
    nodes: int


def _popcount_adj(adj, v, mask):
    return (adj[v] & mask).bit_count()


def dsatur(adj: Sequence[int], vertices: int) -> list[int]:
    """DSATUR greedy colouring; returns the class bit-sets."""
    classes: list[int] = []
    uncoloured = vertices
    while uncoloured:
        best_v, best_key = -1, None
        for v in bits(uncoloured):
            sat = sum(1 for c in classes if adj[v] & c)
            key = (sat, _popcount_adj(adj, v, uncoloured), -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        v = best_v
        for i, c in enumerate(classes):
            if not adj[v] & c:
                classes[i] |= 1 << v
                break
        else:
            classes.append(1 << v)
        uncoloured &= ~(1 << v)
    return classes


def chromatic_number(adj: Sequence[int], vertices: int, *, initial: Sequence[int] | None = None,
                     budget: Budget | None = None, lower: int | None = None) -> ColouringResult:
    """Exact colouring by DSATUR branch and bound, seeded by DSATUR and ``initial``.

    ``initial`` is an optional colouring (class bit-sets) used as the first
    incumbent. The clique number is the lower bound.
    """
    budget = budget or Budget()
    if not vertices:
        return ColouringResult(0, [], True, 0, 0)
    best = dsatur(adj, vertices)
    if initial is not None:
        init = [c & vertices for c in initial if c & vertices]
        covered = 0
        for c in init:
            covered |= c
        valid = covered == vertices and all(not adj[v] & c for c in init for v in bits(c))
        if valid and len(init) < len(best):
            best = init
    if lower is None:
        lower = max_clique(adj, vertices, upper=len(best),
                           budget=Budget(max_nodes=budget.max_nodes)).size
    if len(best) <= lower:
        return ColouringResult(len(best), _classes(best), True, lower, budget.nodes)

    incumbent = [list(best)]

    def rec(classes: list[int], uncoloured: int) -> None:
        budget.tick()
        if not uncoloured:
            if len(classes) < len(incumbent[0]):
                incumbent[0] = list(classes)
                if len(classes) <= lower:
                    raise _Stop
            return
        best_v, best_key = -1, None
        for v in bits(uncoloured):
            sat = sum(1 for c in classes if adj[v] & c)
            key = (sat, _popcount_adj(adj, v, uncoloured), -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        v = best_v
        bit = 1 << v
        for i in range(len(classes)):
            if not adj[v] & classes[i]:
                classes[i] |= bit
                rec(classes, uncoloured & ~bit)
                classes[i] &= ~bit
        if len(classes) + 1 < len(incumbent[0]):
            classes.append(bit)
            rec(classes, uncoloured & ~bit)
            classes.pop()

    optimal = True
    try:
        rec([], vertices)
    except _Stop:
        optimal = len(incumbent[0]) <= lower
    return ColouringResult(len(incumbent[0]), _classes(incumbent[0]), optimal, lower, budget.nodes)


def _classes(masks: Sequence[int]) -> list[tuple[int, ...]]:
    return sorted(tuple(bits(c)) for c in masks)


def restrict(adj: Sequence[int], mask: int) -> list[int]:
    return [a & mask for a in adj]


def is_clique(adj: Sequence[int], members: Sequence[int]) -> bool:
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            if not adj[u] >> v & 1:
                return False
    return True


Bound = Callable[[int], int]
