"""Predicates and exact solvers for k-tuple total and k-tuple domination.

A k-tuple total dominating set needs |N(v) & S| >= k for every vertex v
(open neighborhoods); the closed variant needs |N[v] & S| >= k. Two exact
routes are provided on purpose: plain subset enumeration and branch-and-
bound. They are independent implementations so each can audit the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from . import _search
from .graphs import Graph

__all__ = [
    "DominationResult",
    "Infeasible",
    "SizeCapExceeded",
    "is_ktds",
    "is_kds",
    "feasible",
    "gamma_bruteforce",
    "gamma_bnb",
]

BRUTEFORCE_CAP = 20
BNB_CAP = 64


class Infeasible(ValueError):
    """The graph admits no set of the requested kind for this k."""


class SizeCapExceeded(RuntimeError):
    """The instance is larger than the solver's configured cap."""


@dataclass(frozen=True)
class DominationResult:
    value: int
    certificate: tuple[int, ...]
    kind: str  # "total" or "closed"
    k: int

    def __post_init__(self):
        if self.kind not in ("total", "closed"):
            raise ValueError(f"kind must be 'total' or 'closed', got {self.kind!r}")


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")


def _as_set(g: Graph, s: Iterable[int]) -> set[int]:
    out = set(s)
    for v in out:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range for a graph on {g.n} vertices")
    return out


def _set_mask(s: Iterable[int]) -> int:
    m = 0
    for v in s:
        m |= 1 << v
    return m


def is_ktds(g: Graph, s: Iterable[int], k: int) -> bool:
    """True iff every vertex has at least k neighbors in s (open neighborhoods)."""
    _check_k(k)
    mask = _set_mask(_as_set(g, s))
    return all((g.neighbor_mask(v) & mask).bit_count() >= k for v in g.vertices())


def is_kds(g: Graph, s: Iterable[int], k: int) -> bool:
    """True iff every vertex has at least k closed neighbors in s."""
    _check_k(k)
    mask = _set_mask(_as_set(g, s))
    return all((g.closed_mask(v) & mask).bit_count() >= k for v in g.vertices())


def feasible(g: Graph, k: int, total: bool = True) -> bool:
    """Whether any set of the requested kind exists: min degree >= k for the
    total variant, >= k-1 for the closed one (then V itself works)."""
    _check_k(k)
    return g.min_degree >= (k if total else k - 1)


def _require_feasible(g: Graph, k: int, total: bool) -> None:
    if not feasible(g, k, total):
        kind = "total" if total else "closed"
        need = k if total else k - 1
        raise Infeasible(
            f"no k-tuple {kind} dominating set: min degree {g.min_degree} < {need} (k={k})"
        )


def _cover_masks(g: Graph, total: bool) -> list[int]:
    if total:
        return [g.neighbor_mask(v) for v in g.vertices()]
    return [g.closed_mask(v) for v in g.vertices()]


def gamma_bruteforce(g: Graph, k: int, total: bool = True, cap: int = BRUTEFORCE_CAP) -> DominationResult:
    """Exact value by subset enumeration, smallest size first, lexicographic
    within a size. The certificate is therefore the lexicographically least
    minimum set."""
    _check_k(k)
    if g.n > cap:
        raise SizeCapExceeded(f"graph has {g.n} vertices, brute-force cap is {cap}")
    _require_feasible(g, k, total)
    masks = _cover_masks(g, total)
    verts = range(g.n)
    for size in range(k, g.n + 1):
        for cand in combinations(verts, size):
            m = 0
            for v in cand:
                m |= 1 << v
            if all((masks[v] & m).bit_count() >= k for v in verts):
                return DominationResult(size, cand, "total" if total else "closed", k)
    raise AssertionError("feasible instance exhausted enumeration")


def _lex_min_certificate(masks: list[int], k: int, value: int) -> tuple[int, ...]:
    """Lexicographically least set of the optimal size, built by prefix
    forcing: keep a candidate iff some optimal-size solution extends the kept
    prefix without any rejected vertex."""
    n = len(masks)
    chosen: list[int] = []
    chosen_mask = 0
    excl_mask = 0
    for cand in range(n):
        if len(chosen) == value:
            break
        status, _, _, _ = _search.solve_cover(
            masks,
            k,
            init_in=chosen_mask | (1 << cand),
            init_excl=excl_mask,
            target=value,
        )
        if status == 1:
            chosen.append(cand)
            chosen_mask |= 1 << cand
        else:
            excl_mask |= 1 << cand
    if len(chosen) != value:
        raise AssertionError("canonical reconstruction lost the optimum")
    return tuple(chosen)


def _gamma_bnb_cases(
    g: Graph,
    k: int,
    cases: list[tuple[int, int]],
    total: bool = True,
) -> tuple[int, int]:
    """Branch-and-bound restricted to a list of (forced-in, forced-out) seed
    masks whose cases are jointly exhaustive up to automorphisms of g: every
    set of the requested kind must be mapped by some automorphism onto a set
    honoring one of the seeds. The caller owns that argument. Returns
    (value, mask); the mask is a genuine optimum (it is a concrete set, only
    its discovery used symmetry)."""
    _require_feasible(g, k, total)
    masks = _cover_masks(g, total)
    best, best_mask = _search.improve_cover(masks, k, *_search.greedy_cover(masks, k))
    for init_in, init_excl in cases:
        status, value, mask, _ = _search.solve_cover(
            masks, k, init_in=init_in, init_excl=init_excl, best=best, best_mask=best_mask
        )
        if status == 2:
            continue  # this seed alone is contradictory; other cases cover it
        if status != 0:
            raise RuntimeError(f"search ended abnormally (status {status})")
        best, best_mask = value, mask
    return best, best_mask


def gamma_bnb(
    g: Graph,
    k: int,
    total: bool = True,
    cap: int = BNB_CAP,
    canonical: bool = False,
) -> DominationResult:
    """Exact value by include/exclude branch and bound.

    Branching follows decreasing degree restricted to unmet demand (at the
    root this is plain decreasing degree). Pruning: a demand/coverage lower
    bound, supply-infeasibility detection with unit propagation, dominated-
    alternative elimination on exclude branches, and the incumbent cutoff.
    With canonical=True the certificate is recomputed as the
    lexicographically least minimum set (matching the brute-force
    certificate); otherwise it is the first optimum the search proves.
    """
    _check_k(k)
    if g.n > cap:
        raise SizeCapExceeded(f"graph has {g.n} vertices, branch-and-bound cap is {cap}")
    _require_feasible(g, k, total)
    masks = _cover_masks(g, total)
    inc_val, inc_mask = _search.improve_cover(masks, k, *_search.greedy_cover(masks, k))
    status, value, mask, _ = _search.solve_cover(masks, k, best=inc_val, best_mask=inc_mask)
    if status != 0:
        raise RuntimeError(f"search ended abnormally (status {status})")
    kind = "total" if total else "closed"
    if canonical:
        cert = _lex_min_certificate(masks, k, value)
    else:
        cert = _search.bits_of(mask)
    return DominationResult(value, cert, kind, k)
