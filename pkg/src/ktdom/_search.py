"""Branch-and-bound search cores shared by the domination and packing solvers.

Every instance this package solves fits in one 64-bit word (the solver caps
are 64 vertices), so subsets live in single uint64 bitmasks. The kernels are
written in nopython-compatible style: when numba is importable they are
jit-compiled, otherwise the identical code runs interpreted through numpy.
Counters stay int64, masks stay uint64; the two are never mixed in one
expression (numpy would silently promote to float).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        if args and callable(args[0]):
            return args[0]

        def deco(f):
            return f

        return deco


_ONE = np.uint64(1)
_ZERO = np.uint64(0)
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S56 = np.uint64(56)

DEFAULT_NODE_BUDGET = 1 << 62

# state array slots
_U_IN, _U_EX, _U_UND, _U_POS = 0, 1, 2, 3
_I_TN, _I_INC, _I_TLEN = 0, 1, 2


@njit(cache=True)
def _popcount(x):
    x = x - ((x >> _S1) & _M1)
    x = (x & _M2) + ((x >> _S2) & _M2)
    x = (x + (x >> _S4)) & _M4
    return np.int64((x * _H01) >> _S56)


@njit(cache=True)
def _bit_index(b):
    # b must be a power of two
    return _popcount(b - _ONE)


@njit(cache=True)
def _full_mask(n):
    if n >= 64:
        return _ALL
    return (_ONE << np.uint64(n)) - _ONE


@njit(cache=True)
def _include(cov, need, avail, st_u, st_i, trail_v, trail_t, u):
    bu = _ONE << np.uint64(u)
    st_u[_U_IN] |= bu
    st_u[_U_UND] &= ~bu
    st_i[_I_INC] += 1
    wm = cov[u]
    while wm != _ZERO:
        b = wm & (~wm + _ONE)
        wm ^= b
        w = _bit_index(b)
        avail[w] -= 1
        if need[w] > 0:
            st_i[_I_TN] -= 1
            need[w] -= 1
            if need[w] == 0:
                st_u[_U_POS] &= ~b
        else:
            need[w] -= 1
    t = st_i[_I_TLEN]
    trail_v[t] = u
    trail_t[t] = 0
    st_i[_I_TLEN] = t + 1


@njit(cache=True)
def _exclude(cov, need, avail, st_u, st_i, trail_v, trail_t, u, tq, tql):
    """Returns the new tight-queue length, or -1 on a supply conflict."""
    bu = _ONE << np.uint64(u)
    st_u[_U_EX] |= bu
    st_u[_U_UND] &= ~bu
    conflict = False
    wm = cov[u]
    while wm != _ZERO:
        b = wm & (~wm + _ONE)
        wm ^= b
        w = _bit_index(b)
        avail[w] -= 1
        if need[w] > 0:
            if avail[w] < need[w]:
                conflict = True
            elif avail[w] == need[w]:
                tq[tql] = w
                tql += 1
    t = st_i[_I_TLEN]
    trail_v[t] = u
    trail_t[t] = 1
    st_i[_I_TLEN] = t + 1
    if conflict:
        return np.int64(-1)
    return tql


@njit(cache=True)
def _undo_to(cov, need, avail, st_u, st_i, trail_v, trail_t, mark):
    while st_i[_I_TLEN] > mark:
        st_i[_I_TLEN] -= 1
        t = st_i[_I_TLEN]
        u = trail_v[t]
        bu = _ONE << np.uint64(u)
        if trail_t[t] == 0:
            st_u[_U_IN] &= ~bu
            st_u[_U_UND] |= bu
            st_i[_I_INC] -= 1
            wm = cov[u]
            while wm != _ZERO:
                b = wm & (~wm + _ONE)
                wm ^= b
                w = _bit_index(b)
                avail[w] += 1
                need[w] += 1
                if need[w] > 0:
                    st_i[_I_TN] += 1
                    if need[w] == 1:
                        st_u[_U_POS] |= b
        else:
            st_u[_U_EX] &= ~bu
            st_u[_U_UND] |= bu
            wm = cov[u]
            while wm != _ZERO:
                b = wm & (~wm + _ONE)
                wm ^= b
                w = _bit_index(b)
                avail[w] += 1


@njit(cache=True)
def _propagate(cov, need, avail, st_u, st_i, trail_v, trail_t, tq, tql):
    """Force-include the whole remaining supply of tight vertices.

    Includes never change avail-need slack, so the queue filled by one
    exclusion is complete: no new tight vertices appear while draining it.
    Returns 0, or -1 on conflict.
    """
    head = 0
    while head < tql:
        w = tq[head]
        head += 1
        if need[w] <= 0:
            continue
        if avail[w] < need[w]:
            return np.int64(-1)
        if avail[w] == need[w]:
            fm = cov[w] & st_u[_U_UND]
            while fm != _ZERO:
                b = fm & (~fm + _ONE)
                fm ^= b
                x = _bit_index(b)
                _include(cov, need, avail, st_u, st_i, trail_v, trail_t, x)
    return np.int64(0)


@njit(cache=True)
def _demand_lower_bound(cov, st_u, st_i, hist):
    """Admissible bound: fewest undecided vertices whose combined coverage of
    still-positive demand can reach the total remaining demand. Returns a huge
    value when even all undecided vertices together fall short."""
    tn = st_i[_I_TN]
    if tn == 0:
        return np.int64(0)
    for g in range(65):
        hist[g] = 0
    total_gain = np.int64(0)
    um = st_u[_U_UND]
    pos = st_u[_U_POS]
    while um != _ZERO:
        b = um & (~um + _ONE)
        um ^= b
        u = _bit_index(b)
        g = _popcount(cov[u] & pos)
        hist[g] += 1
        total_gain += g
    if total_gain < tn:
        return np.int64(1) << np.int64(40)
    cnt = np.int64(0)
    acc = np.int64(0)
    g = np.int64(64)
    while acc < tn:
        while hist[g] == 0:
            g -= 1
        take = (tn - acc + g - 1) // g
        if take > hist[g]:
            take = hist[g]
        cnt += take
        acc += take * g
        if acc < tn:
            g -= 1
    return cnt


@njit(cache=True)
def kdom_solve(cov, k, init_in, init_excl, best0, best_mask0, target, node_budget):
    """Include/exclude DFS for minimum k-coverage sets.

    cov[v] is the mask of vertices whose inclusion lowers v's demand; it is
    symmetric (open or closed neighborhoods). target < 0 runs in optimize
    mode against the incumbent (best0, best_mask0); target >= 0 runs in
    decision mode and stops at the first solution of size <= target that
    honors init_in/init_excl.

    Branching takes the vertex covering the most remaining demand (its
    residual degree; at the root this is plain decreasing degree), lowest
    index on ties, include branch first. The exclude branch additionally
    drops every undecided vertex whose remaining coverage is contained in
    the branch vertex's: a solution using such a vertex turns into one of
    equal size using the branch vertex, which the include branch explores.

    Returns (status, value, mask, nodes): status 0 = search exhausted
    (optimize: value/mask is the optimum; decision: no solution), 1 =
    decision solution found, 2 = initial decisions conflict, 3 = node budget
    exceeded.
    """
    n = cov.shape[0]
    need = np.empty(n, np.int64)
    avail = np.empty(n, np.int64)
    for v in range(n):
        need[v] = k
        avail[v] = _popcount(cov[v])
    full = _full_mask(n)
    st_u = np.zeros(4, np.uint64)
    st_u[_U_UND] = full
    st_u[_U_POS] = full
    st_i = np.zeros(3, np.int64)
    st_i[_I_TN] = n * k
    trail_v = np.empty(n + 1, np.int64)
    trail_t = np.empty(n + 1, np.int64)
    tq = np.empty(n + 1, np.int64)
    hist = np.zeros(65, np.int64)

    best = best0
    best_mask = best_mask0

    # seed the search with the forced decisions
    ok = True
    m = init_in
    while m != _ZERO:
        b = m & (~m + _ONE)
        m ^= b
        _include(cov, need, avail, st_u, st_i, trail_v, trail_t, _bit_index(b))
    tql = np.int64(0)
    m = init_excl & ~init_in
    while m != _ZERO and ok:
        b = m & (~m + _ONE)
        m ^= b
        r = _exclude(cov, need, avail, st_u, st_i, trail_v, trail_t, _bit_index(b), tq, tql)
        if r < 0:
            ok = False
        else:
            tql = r
    if ok and _propagate(cov, need, avail, st_u, st_i, trail_v, trail_t, tq, tql) < 0:
        ok = False
    if not ok:
        return np.int64(2), best, best_mask, np.int64(0)

    dec_v = np.empty(n + 1, np.int64)
    dec_ph = np.empty(n + 1, np.int64)
    lev_mark = np.empty(n + 2, np.int64)
    level = np.int64(0)
    status = np.int64(0)
    nodes = np.int64(0)
    descend = True

    while True:
        if descend:
            nodes += 1
            if nodes > node_budget:
                status = np.int64(3)
                break
            prune = False
            if st_i[_I_TN] == 0:
                val = st_i[_I_INC]
                if target >= 0:
                    if val <= target:
                        return np.int64(1), val, st_u[_U_IN], nodes
                else:
                    if val < best:
                        best = val
                        best_mask = st_u[_U_IN]
                prune = True
            else:
                limit = target if target >= 0 else best - 1
                if st_i[_I_INC] > limit:
                    prune = True
                else:
                    lb = _demand_lower_bound(cov, st_u, st_i, hist)
                    if st_i[_I_INC] + lb > limit:
                        prune = True
            v = np.int64(-1)
            if not prune:
                # branch on the undecided vertex covering the most remaining
                # demand; vertices covering none are excluded on the spot
                # (their coverage is already satisfied, so dropping them
                # never hurts)
                best_gain = np.int64(0)
                um = st_u[_U_UND]
                while um != _ZERO:
                    b = um & (~um + _ONE)
                    um ^= b
                    u = _bit_index(b)
                    g = _popcount(cov[u] & st_u[_U_POS])
                    if g == 0:
                        _exclude(cov, need, avail, st_u, st_i, trail_v, trail_t, u, tq, 0)
                    elif g > best_gain:
                        best_gain = g
                        v = u
                if v < 0:
                    prune = True
            if prune:
                descend = False
                continue
            lev_mark[level] = st_i[_I_TLEN]
            dec_v[level] = v
            dec_ph[level] = 0
            _include(cov, need, avail, st_u, st_i, trail_v, trail_t, v)
            level += 1
        else:
            if level == 0:
                break
            level -= 1
            _undo_to(cov, need, avail, st_u, st_i, trail_v, trail_t, lev_mark[level])
            if dec_ph[level] == 1:
                continue
            dec_ph[level] = 1
            v = dec_v[level]
            covv = cov[v] & st_u[_U_POS]
            r = _exclude(cov, need, avail, st_u, st_i, trail_v, trail_t, v, tq, 0)
            if r >= 0:
                # drop dominated alternatives along with v (see docstring);
                # exclusions keep _U_POS fixed, so covv stays valid
                um = st_u[_U_UND]
                while um != _ZERO and r >= 0:
                    b = um & (~um + _ONE)
                    um ^= b
                    u = _bit_index(b)
                    if cov[u] & st_u[_U_POS] & ~covv == _ZERO:
                        r = _exclude(cov, need, avail, st_u, st_i, trail_v, trail_t, u, tq, r)
            if r >= 0:
                r = _propagate(cov, need, avail, st_u, st_i, trail_v, trail_t, tq, r)
            if r < 0:
                _undo_to(cov, need, avail, st_u, st_i, trail_v, trail_t, lev_mark[level])
                continue
            level += 1
            descend = True

    return status, best, best_mask, nodes


@njit(cache=True)
def _clique_cover_bound(conf, mask):
    """Greedy clique cover of the conflict subgraph on `mask`; its size is an
    upper bound on the independence number of that subgraph."""
    cc = np.int64(0)
    q = mask
    while q != _ZERO:
        b = q & (~q + _ONE)
        u = _bit_index(b)
        clique = b
        cand = q & conf[u]
        while cand != _ZERO:
            b2 = cand & (~cand + _ONE)
            w = _bit_index(b2)
            clique |= b2
            cand &= conf[w]
        q &= ~clique
        cc += 1
    return cc


@njit(cache=True)
def mis_solve(conf, order, p0, s0, best0, best_mask0, target, node_budget):
    """Maximum independent set DFS over the conflict masks `conf`.

    p0/s0 allow restricted/decision runs: candidates start at p0 and s0
    vertices are assumed already chosen (they are not part of the returned
    mask). target < 0 maximizes; target >= 0 stops at the first independent
    set reaching target total size.

    Returns (status, value, mask, nodes): status 0 = exhausted, 1 = decision
    hit, 3 = budget exceeded.
    """
    n = conf.shape[0]
    p_stack = np.empty(n + 2, np.uint64)
    m_stack = np.empty(n + 2, np.uint64)
    c_stack = np.empty(n + 2, np.int64)
    dec_v = np.empty(n + 2, np.int64)
    dec_ph = np.empty(n + 2, np.int64)

    level = np.int64(0)
    p_stack[0] = p0
    m_stack[0] = _ZERO
    c_stack[0] = s0
    best = best0
    best_mask = best_mask0
    status = np.int64(0)
    nodes = np.int64(0)
    descend = True

    while True:
        if descend:
            nodes += 1
            if nodes > node_budget:
                status = np.int64(3)
                break
            p = p_stack[level]
            s = c_stack[level]
            if target < 0:
                if s > best:
                    best = s
                    best_mask = m_stack[level]
            else:
                if s >= target:
                    return np.int64(1), s, m_stack[level], nodes
            prune = False
            if p == _ZERO:
                prune = True
            else:
                ub = s + _clique_cover_bound(conf, p)
                if target < 0:
                    if ub <= best:
                        prune = True
                else:
                    if ub < target:
                        prune = True
            v = np.int64(-1)
            if not prune:
                for oi in range(n):
                    u = order[oi]
                    if (p >> np.uint64(u)) & _ONE != _ZERO:
                        v = u
                        break
            if prune or v < 0:
                descend = False
                continue
            dec_v[level] = v
            dec_ph[level] = 0
            bv = _ONE << np.uint64(v)
            p_stack[level + 1] = p & ~conf[v] & ~bv
            m_stack[level + 1] = m_stack[level] | bv
            c_stack[level + 1] = s + 1
            level += 1
        else:
            if level == 0:
                break
            level -= 1
            if dec_ph[level] == 1:
                continue
            dec_ph[level] = 1
            v = dec_v[level]
            bv = _ONE << np.uint64(v)
            p_stack[level + 1] = p_stack[level] & ~bv
            m_stack[level + 1] = m_stack[level]
            c_stack[level + 1] = c_stack[level]
            level += 1
            descend = True

    return status, best, best_mask, nodes


# --- python-side wrappers ---------------------------------------------------


def _as_cov_array(masks: Sequence[int]) -> np.ndarray:
    arr = np.empty(len(masks), np.uint64)
    for i, m in enumerate(masks):
        arr[i] = np.uint64(m)
    return arr


def _order_array(order: Sequence[int]) -> np.ndarray:
    return np.asarray(order, dtype=np.int64)


def bits_of(mask: int) -> tuple[int, ...]:
    """Indices of set bits, ascending."""
    out = []
    m = int(mask)
    while m:
        b = m & -m
        out.append(b.bit_length() - 1)
        m ^= b
    return tuple(out)


def greedy_cover(masks: Sequence[int], k: int) -> tuple[int, int]:
    """Greedy incumbent for the k-coverage problem: repeatedly take the vertex
    covering the most remaining demand (lowest index on ties). Returns
    (size, mask). Assumes the instance is feasible."""
    n = len(masks)
    need = [k] * n
    chosen = 0
    size = 0
    total = n * k
    while total > 0:
        best_v = -1
        best_gain = 0
        for v in range(n):
            if (chosen >> v) & 1:
                continue
            gain = 0
            m = masks[v]
            while m:
                b = m & -m
                w = b.bit_length() - 1
                m ^= b
                if need[w] > 0:
                    gain += 1
            if gain > best_gain:
                best_gain = gain
                best_v = v
        if best_v < 0:
            raise AssertionError("greedy stalled on an infeasible instance")
        chosen |= 1 << best_v
        size += 1
        m = masks[best_v]
        while m:
            b = m & -m
            w = b.bit_length() - 1
            m ^= b
            if need[w] > 0:
                need[w] -= 1
                total -= 1
    return size, chosen


def improve_cover(masks: Sequence[int], k: int, size: int, mask: int) -> tuple[int, int]:
    """Local descent on a valid k-coverage set: drop redundant vertices and
    apply two-for-one exchanges until neither helps. Returns an improved
    (size, mask); the result is always a valid cover of the same kind."""
    n = len(masks)
    counts = [(masks[v] & mask).bit_count() for v in range(n)]

    def removable(v: int) -> bool:
        m = masks[v]
        while m:
            b = m & -m
            m ^= b
            if counts[b.bit_length() - 1] <= k:
                return False
        return True

    def apply_delta(v: int, d: int) -> None:
        m = masks[v]
        while m:
            b = m & -m
            m ^= b
            counts[b.bit_length() - 1] += d

    def strip(mask: int, size: int) -> tuple[int, int]:
        changed = True
        while changed:
            changed = False
            m = mask
            while m:
                b = m & -m
                m ^= b
                v = b.bit_length() - 1
                if removable(v):
                    mask &= ~(1 << v)
                    size -= 1
                    apply_delta(v, -1)
                    changed = True
        return mask, size

    mask, size = strip(mask, size)
    improved = True
    while improved and size > k:
        improved = False
        # masks of vertices at exactly / at most the demand threshold
        eq_k = 0
        le_k = 0
        eq_k1 = 0
        for u in range(n):
            if counts[u] == k:
                eq_k |= 1 << u
            if counts[u] <= k:
                le_k |= 1 << u
            if counts[u] == k + 1:
                eq_k1 |= 1 << u
        members = bits_of(mask)
        for ai in range(len(members)):
            a = members[ai]
            for b in members[ai + 1:]:
                both = masks[a] & masks[b]
                one = masks[a] ^ masks[b]
                if both & le_k:
                    continue  # some vertex would lose two with at most one back
                need = (both & eq_k1) | (one & eq_k)
                pair_removed = mask & ~(1 << a) & ~(1 << b)
                w = -1
                for cand in range(n):
                    if (pair_removed >> cand) & 1 or cand == a or cand == b:
                        continue
                    if need & ~masks[cand] == 0:
                        w = cand
                        break
                if w < 0:
                    continue
                mask = pair_removed | (1 << w)
                size -= 1
                apply_delta(a, -1)
                apply_delta(b, -1)
                apply_delta(w, 1)
                mask, size = strip(mask, size)
                improved = True
                break
            if improved:
                break
    if any(c < k for c in counts):
        raise AssertionError("local improvement produced an invalid cover")
    return size, mask


def greedy_independent(conf: Sequence[int], allowed: int) -> tuple[int, int]:
    """Greedy independent set in the conflict graph, lowest conflict degree
    first. Returns (size, mask)."""
    n = len(conf)
    order = sorted(range(n), key=lambda v: (bin(conf[v] & allowed).count("1"), v))
    taken = 0
    size = 0
    for v in order:
        if not (allowed >> v) & 1:
            continue
        if conf[v] & taken:
            continue
        taken |= 1 << v
        size += 1
    return size, taken


def solve_cover(
    masks: Sequence[int],
    k: int,
    *,
    init_in: int = 0,
    init_excl: int = 0,
    best: int | None = None,
    best_mask: int = 0,
    target: int = -1,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> tuple[int, int, int, int]:
    """Dispatch to the coverage kernel. Returns (status, value, mask, nodes)."""
    n = len(masks)
    cov = _as_cov_array(masks)
    if best is None:
        best = n + 1
    with np.errstate(over="ignore"):
        status, value, mask, nodes = kdom_solve(
            cov,
            np.int64(k),
            np.uint64(init_in),
            np.uint64(init_excl),
            np.int64(best),
            np.uint64(best_mask),
            np.int64(target),
            np.int64(node_budget),
        )
    return int(status), int(value), int(mask), int(nodes)


def solve_mis(
    conf: Sequence[int],
    order: Sequence[int],
    *,
    p0: int | None = None,
    s0: int = 0,
    best: int = 0,
    best_mask: int = 0,
    target: int = -1,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> tuple[int, int, int, int]:
    """Dispatch to the MIS kernel. Returns (status, value, mask, nodes)."""
    n = len(conf)
    conf_arr = _as_cov_array(conf)
    order_arr = _order_array(order)
    if p0 is None:
        p0 = (1 << n) - 1
    with np.errstate(over="ignore"):
        status, value, mask, nodes = mis_solve(
            conf_arr,
            order_arr,
            np.uint64(p0),
            np.int64(s0),
            np.int64(best),
            np.uint64(best_mask),
            np.int64(target),
            np.int64(node_budget),
        )
    return int(status), int(value), int(mask), int(nodes)
