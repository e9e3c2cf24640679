"""Packings and open packings, solved as independent sets of conflict graphs.

A packing is a set whose closed neighborhoods are pairwise disjoint
(equivalently, pairwise distance >= 3); an open packing needs pairwise
disjoint open neighborhoods. Two vertices conflict when the relevant
neighborhoods intersect, so maximum packings are maximum independent sets
in the conflict graph, handled by the shared branch-and-bound core.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import _search
from .domination import SizeCapExceeded
from .graphs import Graph

__all__ = [
    "PackingResult",
    "is_packing",
    "is_open_packing",
    "packing_number",
    "open_packing_number",
]

PACKING_CAP = 64


@dataclass(frozen=True)
class PackingResult:
    value: int
    certificate: tuple[int, ...]
    kind: str  # "closed" or "open"

    def __post_init__(self):
        if self.kind not in ("closed", "open"):
            raise ValueError(f"kind must be 'closed' or 'open', got {self.kind!r}")


def _as_sorted(g: Graph, s: Iterable[int]) -> list[int]:
    out = sorted(set(s))
    for v in out:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range for a graph on {g.n} vertices")
    return out


def is_packing(g: Graph, s: Iterable[int]) -> bool:
    """True iff the closed neighborhoods of s are pairwise disjoint."""
    vs = _as_sorted(g, s)
    for i, u in enumerate(vs):
        mu = g.closed_mask(u)
        for v in vs[i + 1 :]:
            if mu & g.closed_mask(v):
                return False
    return True


def is_open_packing(g: Graph, s: Iterable[int]) -> bool:
    """True iff the open neighborhoods of s are pairwise disjoint."""
    vs = _as_sorted(g, s)
    for i, u in enumerate(vs):
        mu = g.neighbor_mask(u)
        for v in vs[i + 1 :]:
            if mu & g.neighbor_mask(v):
                return False
    return True


def _conflict_masks(g: Graph, open_variant: bool) -> list[int]:
    if open_variant:
        nb = [g.neighbor_mask(v) for v in g.vertices()]
    else:
        nb = [g.closed_mask(v) for v in g.vertices()]
    conf = []
    for u in g.vertices():
        m = 0
        for v in g.vertices():
            if v != u and nb[u] & nb[v]:
                m |= 1 << v
        conf.append(m)
    return conf


def _lex_min_independent(conf: list[int], order: list[int], value: int) -> tuple[int, ...]:
    """Lexicographically least maximum independent set, by prefix forcing:
    a candidate is kept iff some independent set of the optimal size contains
    the kept prefix plus the candidate and avoids every rejected vertex."""
    n = len(conf)
    chosen: list[int] = []
    chosen_mask = 0
    excl_mask = 0
    blocked = 0  # conflicts of the kept prefix can never join the set
    full = (1 << n) - 1
    for cand in range(n):
        if len(chosen) == value:
            break
        bit = 1 << cand
        if (chosen_mask | excl_mask | blocked) & bit:
            continue
        p0 = full & ~(chosen_mask | excl_mask | blocked | conf[cand] | bit)
        status, _, _, _ = _search.solve_mis(
            conf, order, p0=p0, s0=len(chosen) + 1, target=value
        )
        if status == 1:
            chosen.append(cand)
            chosen_mask |= bit
            blocked |= conf[cand]
        else:
            excl_mask |= bit
    if len(chosen) != value:
        raise AssertionError("canonical reconstruction lost the optimum")
    return tuple(chosen)


def _solve(g: Graph, open_variant: bool, canonical: bool, cap: int) -> PackingResult:
    if g.n > cap:
        raise SizeCapExceeded(f"graph has {g.n} vertices, packing cap is {cap}")
    conf = _conflict_masks(g, open_variant)
    # high conflict degree first shrinks the candidate set fastest
    order = sorted(g.vertices(), key=lambda v: (-conf[v].bit_count(), v))
    full = (1 << g.n) - 1
    inc_val, inc_mask = _search.greedy_independent(conf, full)
    status, value, mask, _ = _search.solve_mis(conf, order, best=inc_val, best_mask=inc_mask)
    if status != 0:
        raise RuntimeError(f"search ended abnormally (status {status})")
    if canonical:
        cert = _lex_min_independent(conf, order, value)
    else:
        cert = _search.bits_of(mask)
    return PackingResult(value, cert, "open" if open_variant else "closed")


def packing_number(g: Graph, canonical: bool = False, cap: int = PACKING_CAP) -> PackingResult:
    """Maximum packing (pairwise disjoint closed neighborhoods)."""
    return _solve(g, open_variant=False, canonical=canonical, cap=cap)


def open_packing_number(g: Graph, canonical: bool = False, cap: int = PACKING_CAP) -> PackingResult:
    """Maximum open packing (pairwise disjoint open neighborhoods)."""
    return _solve(g, open_variant=True, canonical=canonical, cap=cap)
