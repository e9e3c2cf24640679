"""Inequality checks between domination parameters, packings, and products.

Every check returns a BoundReport with the convention holds <=> lhs <= rhs
(secondary inequalities carried in the witnesses are ANDed in). Reports are
verdicts computed from exact solver values, never from trusted formulas;
the single exception is the rook reference value, which may take the
verified closed-form path and says so in its witnesses. When a check does
not apply (precondition fails, or an instance exceeds a solver cap) the
report has applicable=False, holds=True vacuously, and lhs = rhs = -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import ceil, comb

from .domination import Infeasible, SizeCapExceeded, feasible, gamma_bnb
from .graphs import Graph, cartesian_product
from .packing import is_open_packing, open_packing_number, packing_number
from .rook import gamma2_rook_formula, gamma_rook_exact, gamma_rook_manycols

__all__ = [
    "BoundReport",
    "check_degree_lb",
    "check_packing_lb",
    "check_vizing_like",
    "check_packing_product",
    "check_open_packing_sum",
    "check_product_upper",
    "check_rook_extremal",
    "check_vizing_conjecture",
    "run_bound_sweep",
    "ALL_BOUND_IDS",
]

ALL_BOUND_IDS = (
    "degree-lb",
    "packing-lb",
    "vizing-like",
    "packing-product",
    "open-packing-sum",
    "product-upper",
    "rook-extremal",
    "vizing-conjecture",
)


@dataclass(frozen=True)
class BoundReport:
    bound_id: str
    lhs: int
    rhs: int
    applicable: bool
    holds: bool
    witnesses: dict[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "applicable": self.applicable,
            "holds": self.holds,
            "witnesses": dict(self.witnesses),
        }


def _not_applicable(bound_id: str, **witnesses: int) -> BoundReport:
    return BoundReport(bound_id, -1, -1, False, True, dict(witnesses))


@lru_cache(maxsize=None)
def _gamma(g: Graph, k: int, total: bool = True) -> int:
    return gamma_bnb(g, k, total=total).value


@lru_cache(maxsize=None)
def _rho(g: Graph) -> int:
    return packing_number(g).value


@lru_cache(maxsize=None)
def _rho_open(g: Graph) -> int:
    return open_packing_number(g).value


@lru_cache(maxsize=None)
def _product(g: Graph, h: Graph) -> Graph:
    return cartesian_product(g, h)


def _is_k2_union(g: Graph) -> bool:
    return all(len(c) == 2 for c in g.components())


_WITNESS_ENUM_BUDGET = 20_000


def _admits_open_sum_witness(g: Graph, packing: tuple[int, ...]) -> bool:
    chosen = set(packing)
    masks = [g.neighbor_mask(v) for v in range(g.n)]
    for s in range(g.n):
        if s in chosen:
            continue
        # s can touch at most one packed vertex (two would share s as a
        # common neighbor); that one is dropped, the rest must have
        # neighborhoods disjoint from N(s)
        rest = (x for x in packing if not (masks[s] >> x) & 1)
        if all(masks[s] & masks[x] == 0 for x in rest):
            return True
    return False


@lru_cache(maxsize=None)
def _open_sum_applicable(g: Graph) -> bool:
    """True when some maximum open packing of g leaves a spare vertex whose
    neighborhood avoids every kept packed vertex's neighborhood. That spare
    vertex seeds the product packing the sum bound is built from; without
    one the bound can fail (a star times an edge already breaks it), so the
    check stands aside."""
    size = _rho_open(g)
    if comb(g.n, size) <= _WITNESS_ENUM_BUDGET:
        return any(
            _admits_open_sum_witness(g, candidate)
            for candidate in combinations(range(g.n), size)
            if is_open_packing(g, candidate)
        )
    return _admits_open_sum_witness(g, open_packing_number(g).certificate)


def check_degree_lb(g: Graph, k: int) -> BoundReport:
    """ceil(k*n / max_degree) <= gamma, for graphs where the value exists."""
    bound_id = "degree-lb"
    if not feasible(g, k, total=True):
        return _not_applicable(bound_id, min_degree=g.min_degree, k=k)
    gamma = _gamma(g, k)
    lhs = ceil(k * g.n / g.max_degree)
    return BoundReport(
        bound_id,
        lhs,
        gamma,
        True,
        lhs <= gamma,
        {"n": g.n, "max_degree": g.max_degree, "k": k, "gamma": gamma},
    )


def check_packing_lb(g: Graph, k: int) -> BoundReport:
    """k * open-packing-number <= gamma, chained over k * packing-number."""
    bound_id = "packing-lb"
    if not feasible(g, k, total=True):
        return _not_applicable(bound_id, min_degree=g.min_degree, k=k)
    gamma = _gamma(g, k)
    rho = _rho(g)
    rho_open = _rho_open(g)
    lhs = k * rho_open
    holds = k * rho <= lhs and lhs <= gamma
    return BoundReport(
        bound_id,
        lhs,
        gamma,
        True,
        holds,
        {"rho": rho, "rho_open": rho_open, "k": k, "gamma": gamma},
    )


def check_vizing_like(g: Graph, h: Graph, k: int) -> BoundReport:
    """packing-number(G) * gamma(H) <= gamma(G x H); when G itself is tight
    enough (gamma(G) <= 2k * packing-number(G)) the product form
    gamma(G) * gamma(H) <= 2k * gamma(G x H) is checked as well."""
    bound_id = "vizing-like"
    if not feasible(h, k, total=True):
        return _not_applicable(bound_id, h_min_degree=h.min_degree, k=k)
    try:
        gamma_prod = _gamma(_product(g, h), k)
    except SizeCapExceeded:
        return _not_applicable(bound_id, product_size=g.n * h.n)
    rho_g = _rho(g)
    gamma_h = _gamma(h, k)
    lhs = rho_g * gamma_h
    holds = lhs <= gamma_prod
    wit = {
        "rho_g": rho_g,
        "gamma_h": gamma_h,
        "gamma_product": gamma_prod,
        "k": k,
        "part2_applicable": 0,
    }
    if feasible(g, k, total=True):
        gamma_g = _gamma(g, k)
        wit["gamma_g"] = gamma_g
        if gamma_g <= 2 * k * rho_g:
            part2_lhs = gamma_g * gamma_h
            part2_rhs = 2 * k * gamma_prod
            part2_holds = part2_lhs <= part2_rhs
            wit.update(
                part2_applicable=1,
                part2_lhs=part2_lhs,
                part2_rhs=part2_rhs,
                part2_holds=int(part2_holds),
            )
            holds = holds and part2_holds
    return BoundReport(bound_id, lhs, gamma_prod, True, holds, wit)


def check_packing_product(g: Graph, h: Graph) -> BoundReport:
    """packing-number(G) * packing-number(H) <= packing-number(G x H)."""
    bound_id = "packing-product"
    try:
        rho_prod = _rho(_product(g, h))
    except SizeCapExceeded:
        return _not_applicable(bound_id, product_size=g.n * h.n)
    rho_g = _rho(g)
    rho_h = _rho(h)
    lhs = rho_g * rho_h
    return BoundReport(
        bound_id,
        lhs,
        rho_prod,
        True,
        lhs <= rho_prod,
        {"rho_g": rho_g, "rho_h": rho_h, "rho_product": rho_prod},
    )


def check_open_packing_sum(g: Graph, h: Graph, k: int) -> BoundReport:
    """k * (open-packing(G) + open-packing(H) - 1) <= gamma(G x H). Applies
    when G has no isolated vertex, is not a disjoint union of edges, and
    admits the spare-vertex witness of _open_sum_applicable; the open-packing
    sum inequality itself is verified alongside."""
    bound_id = "open-packing-sum"
    if g.min_degree < 1 or _is_k2_union(g):
        return _not_applicable(bound_id, g_is_k2_union=int(_is_k2_union(g)))
    try:
        if not _open_sum_applicable(g):
            return _not_applicable(bound_id, g_is_k2_union=0, construction_witness=0)
    except SizeCapExceeded:
        return _not_applicable(bound_id, g_size=g.n)
    prod = _product(g, h)
    if not feasible(prod, k, total=True):
        return _not_applicable(bound_id, product_min_degree=prod.min_degree, k=k)
    try:
        gamma_prod = _gamma(prod, k)
        rho_open_prod = _rho_open(prod)
    except SizeCapExceeded:
        return _not_applicable(bound_id, product_size=prod.n)
    ro_g = _rho_open(g)
    ro_h = _rho_open(h)
    lhs = k * (ro_g + ro_h - 1)
    sum_holds = ro_g + ro_h - 1 <= rho_open_prod
    holds = lhs <= gamma_prod and sum_holds
    return BoundReport(
        bound_id,
        lhs,
        gamma_prod,
        True,
        holds,
        {
            "rho_open_g": ro_g,
            "rho_open_h": ro_h,
            "rho_open_product": rho_open_prod,
            "gamma_product": gamma_prod,
            "k": k,
            "sum_inequality_holds": int(sum_holds),
            "construction_witness": 1,
        },
    )


def check_product_upper(g: Graph, h: Graph, k: int) -> BoundReport:
    """gamma(G x H) <= gamma(G) * |V(H)| whenever gamma(G) exists."""
    bound_id = "product-upper"
    if not feasible(g, k, total=True):
        return _not_applicable(bound_id, g_min_degree=g.min_degree, k=k)
    try:
        gamma_prod = _gamma(_product(g, h), k)
    except SizeCapExceeded:
        return _not_applicable(bound_id, product_size=g.n * h.n)
    gamma_g = _gamma(g, k)
    rhs = gamma_g * h.n
    return BoundReport(
        bound_id,
        gamma_prod,
        rhs,
        True,
        gamma_prod <= rhs,
        {"gamma_g": gamma_g, "h_order": h.n, "k": k, "gamma_product": gamma_prod},
    )


def _rook_reference(n: int, m: int, k: int) -> tuple[int, bool]:
    """Reference value on complete factors of the same orders; True in the
    second slot means the verified closed-form path supplied it."""
    if k == 2:
        case = gamma2_rook_formula(n, m)
        if case.value is not None:
            return case.value, True
    mc = gamma_rook_manycols(n, m, k)
    if mc is not None:
        return mc, True
    return gamma_rook_exact(n, m, k).value, False


def check_rook_extremal(g: Graph, h: Graph, k: int) -> BoundReport:
    """The complete-factor value is a lower bound: adding edges to the factors
    can only lower the total-domination value, so among all factor pairs of
    the same orders the pair of complete graphs is extremal."""
    bound_id = "rook-extremal"
    prod = _product(g, h)
    if not feasible(prod, k, total=True):
        return _not_applicable(bound_id, product_min_degree=prod.min_degree, k=k)
    try:
        gamma_prod = _gamma(prod, k)
        rook_value, via_formula = _rook_reference(g.n, h.n, k)
    except (SizeCapExceeded, Infeasible):
        return _not_applicable(bound_id, product_size=prod.n)
    return BoundReport(
        bound_id,
        rook_value,
        gamma_prod,
        True,
        rook_value <= gamma_prod,
        {
            "n": g.n,
            "m": h.n,
            "k": k,
            "rook_value": rook_value,
            "formula_path": int(via_formula),
            "gamma_product": gamma_prod,
        },
    )


def check_vizing_conjecture(g: Graph, h: Graph) -> BoundReport:
    """Ordinary (closed, k=1) domination: gamma(G) * gamma(H) <= gamma(G x H).
    Checked, never assumed."""
    bound_id = "vizing-conjecture"
    try:
        gamma_prod = _gamma(_product(g, h), 1, total=False)
    except SizeCapExceeded:
        return _not_applicable(bound_id, product_size=g.n * h.n)
    gamma_g = _gamma(g, 1, total=False)
    gamma_h = _gamma(h, 1, total=False)
    lhs = gamma_g * gamma_h
    return BoundReport(
        bound_id,
        lhs,
        gamma_prod,
        True,
        lhs <= gamma_prod,
        {"gamma_g": gamma_g, "gamma_h": gamma_h, "gamma_product": gamma_prod},
    )


def run_bound_sweep(g: Graph, h: Graph, k: int) -> list[BoundReport]:
    """Every check, unary ones on both factors. Infeasible combinations come
    back inapplicable rather than raising."""
    return [
        check_degree_lb(g, k),
        check_degree_lb(h, k),
        check_packing_lb(g, k),
        check_packing_lb(h, k),
        check_vizing_like(g, h, k),
        check_packing_product(g, h),
        check_open_packing_sum(g, h, k),
        check_product_upper(g, h, k),
        check_rook_extremal(g, h, k),
        check_vizing_conjecture(g, h),
    ]
