"""Shared corpus builders and helpers for the test suite."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from pathlib import Path

import pytest

from ktdom.graphs import Graph, complete, cycle, petersen


@pytest.fixture
def datadir() -> Path:
    return Path(__file__).parent / "data"


@pytest.fixture
def goldendir() -> Path:
    return Path(__file__).parent / "golden"


@lru_cache(maxsize=None)
def all_connected_graphs(max_n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class of connected graphs on
    1..max_n vertices."""
    out: list[Graph] = []
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        perms = list(itertools.permutations(range(n)))
        seen: set[tuple] = set()
        for bits in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
            g = Graph(n, edges)
            if not g.is_connected():
                continue
            canon = min(
                tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
                for p in perms
            )
            if canon in seen:
                continue
            seen.add(canon)
            out.append(g)
    return tuple(out)


def named_generators() -> list[Graph]:
    """The generator family K_2..K_5, C_3..C_6, Petersen."""
    return [complete(n) for n in range(2, 6)] + [cycle(n) for n in range(3, 7)] + [petersen()]


def random_connected_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    """Random connected graph on n vertices (rejection sampling on p-random
    edge sets, falling back to denser draws)."""
    if p is None:
        p = rng.uniform(0.3, 0.9)
    for _ in range(1000):
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
        g = Graph(n, edges)
        if g.is_connected():
            return g
        p = min(1.0, p + 0.05)
    raise AssertionError("rejection sampling failed to produce a connected graph")


def brute_force_packing(g: Graph, open_variant: bool) -> int:
    """Independent exhaustive-enumeration oracle for packing numbers; meant
    for graphs with at most ~12 vertices."""
    if open_variant:
        hoods = [g.neighbor_mask(v) for v in g.vertices()]
    else:
        hoods = [g.closed_mask(v) for v in g.vertices()]
    best = 0
    # packings are downward closed, so the first empty size level is final
    for size in range(1, g.n + 1):
        found = False
        for cand in itertools.combinations(range(g.n), size):
            if all(
                hoods[u] & hoods[v] == 0 for u, v in itertools.combinations(cand, 2)
            ):
                found = True
                break
        if not found:
            break
        best = size
    return best


@pytest.fixture(scope="session", autouse=True)
def warm_solver_kernels():
    """Compile the jit kernels once so timing-sensitive tests measure the
    search, not the one-time compilation."""
    from ktdom.domination import gamma_bnb
    from ktdom.packing import packing_number

    g = cycle(5)
    gamma_bnb(g, 1, canonical=True)
    packing_number(g, canonical=True)
    yield
