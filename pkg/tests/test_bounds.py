"""Inequality reports: each check against hand-computed or enumerated values,
inapplicability routing, and the witnesses-recompute law."""

import math

import pytest
from conftest import all_connected_graphs, brute_force_packing, named_generators

from ktdom.bounds import (
    ALL_BOUND_IDS,
    BoundReport,
    check_degree_lb,
    check_open_packing_sum,
    check_packing_lb,
    check_packing_product,
    check_product_upper,
    check_rook_extremal,
    check_vizing_conjecture,
    check_vizing_like,
    run_bound_sweep,
)
from ktdom.domination import gamma_bnb
from ktdom.graphs import Graph, cartesian_product, complete, cycle, petersen, star_subdivide
from ktdom.packing import open_packing_number, packing_number


def recompute_sides(r: BoundReport) -> tuple[int, int]:
    """Rebuild lhs and rhs from the stored witnesses alone."""
    w = r.witnesses
    if r.bound_id == "degree-lb":
        return math.ceil(w["k"] * w["n"] / w["max_degree"]), w["gamma"]
    if r.bound_id == "packing-lb":
        return w["k"] * w["rho_open"], w["gamma"]
    if r.bound_id == "vizing-like":
        return w["rho_g"] * w["gamma_h"], w["gamma_product"]
    if r.bound_id == "packing-product":
        return w["rho_g"] * w["rho_h"], w["rho_product"]
    if r.bound_id == "open-packing-sum":
        return w["k"] * (w["rho_open_g"] + w["rho_open_h"] - 1), w["gamma_product"]
    if r.bound_id == "product-upper":
        return w["gamma_product"], w["gamma_g"] * w["h_order"]
    if r.bound_id == "rook-extremal":
        return w["rook_value"], w["gamma_product"]
    if r.bound_id == "vizing-conjecture":
        return w["gamma_g"] * w["gamma_h"], w["gamma_product"]
    raise AssertionError(r.bound_id)


def assert_recomputable(r: BoundReport):
    if r.applicable:
        assert (r.lhs, r.rhs) == recompute_sides(r)
        if r.bound_id == "vizing-like" and r.witnesses.get("part2_applicable"):
            w = r.witnesses
            assert w["part2_lhs"] == w["gamma_g"] * w["gamma_h"]
            assert w["part2_rhs"] == 2 * w["k"] * w["gamma_product"]
    else:
        assert (r.lhs, r.rhs) == (-1, -1)
        assert r.holds


# --- degree floor ---------------------------------------------------------------


def test_degree_lb_rook_grid():
    r = check_degree_lb(cartesian_product(complete(3), complete(4)), 2)
    assert r.applicable and r.holds
    assert r.lhs == math.ceil(2 * 12 / 5) == 5
    assert r.rhs == 6
    assert_recomputable(r)


def test_degree_lb_regular_equality():
    r = check_degree_lb(cycle(5), 2)
    assert r.applicable and r.holds
    assert (r.lhs, r.rhs) == (5, 5)
    r = check_degree_lb(petersen(), 3)
    assert r.applicable and r.holds
    assert (r.lhs, r.rhs) == (10, 10)


def test_degree_lb_infeasible_k():
    r = check_degree_lb(cycle(5), 3)
    assert not r.applicable and r.holds
    assert (r.lhs, r.rhs) == (-1, -1)
    assert r.witnesses["min_degree"] == 2


# --- packing floor ---------------------------------------------------------------


def test_packing_lb_petersen():
    p = petersen()
    r = check_packing_lb(p, 2)
    assert r.applicable and r.holds
    assert r.rhs == 8
    assert r.lhs == 2 * brute_force_packing(p, open_variant=True)
    assert r.witnesses["rho"] == 1
    assert_recomputable(r)


def test_packing_lb_cycle():
    c6 = cycle(6)
    r = check_packing_lb(c6, 1)
    assert r.applicable and r.holds
    assert r.rhs == 4
    assert r.lhs == brute_force_packing(c6, open_variant=True)


def test_packing_lb_complete():
    r = check_packing_lb(complete(5), 3)
    assert r.applicable and r.holds
    assert (r.lhs, r.rhs) == (3, 4)
    assert r.witnesses["rho"] == 1 and r.witnesses["rho_open"] == 1


# --- product floor with packing factor --------------------------------------------


def test_vizing_like_equality_family():
    gs = star_subdivide(cycle(5), 1)
    r = check_vizing_like(gs, complete(2), 1)
    assert r.applicable and r.holds
    # gamma_t(Gs) = 10 = rho(Gs) * gamma_t(K_2) x 5: lhs 5*2, product value 10
    assert (r.lhs, r.rhs) == (10, 10)
    w = r.witnesses
    assert w["part2_applicable"] == 1
    assert w["part2_lhs"] == 10 * 2 and w["part2_rhs"] == 2 * 1 * 10
    assert w["part2_lhs"] == w["part2_rhs"]  # the tight instance
    assert_recomputable(r)


def test_vizing_like_k3_square():
    r = check_vizing_like(complete(3), complete(3), 2)
    assert r.applicable and r.holds
    assert (r.lhs, r.rhs) == (1 * 3, 5)
    w = r.witnesses
    assert w["gamma_g"] == 3 and w["part2_applicable"] == 1
    assert w["part2_lhs"] == 9 and w["part2_rhs"] == 20
    assert_recomputable(r)


def test_vizing_like_part2_gate():
    # C_5 at k=2 is 2-regular so its value is 5, above 2k*rho = 4: part 2
    # stays out of the verdict while part 1 is still checked
    r = check_vizing_like(cycle(5), cycle(4), 2)
    assert r.applicable and r.holds
    w = r.witnesses
    assert w["gamma_g"] == 5 and w["rho_g"] == 1
    assert w["part2_applicable"] == 0
    assert "part2_lhs" not in w
    assert_recomputable(r)


def test_vizing_like_prism():
    r = check_vizing_like(complete(2), cycle(4), 1)
    assert r.applicable and r.holds
    assert r.lhs == 1 * 2
    assert r.rhs == gamma_bnb(cartesian_product(complete(2), cycle(4)), 1).value == 4


def test_vizing_like_inapplicable_factor():
    r = check_vizing_like(complete(3), complete(2), 2)
    assert not r.applicable and r.holds


# --- packings multiply -------------------------------------------------------------


def test_packing_product_complete_factors():
    r = check_packing_product(complete(3), complete(4))
    assert r.applicable and r.holds
    assert (r.lhs, r.rhs) == (1, 1)
    assert_recomputable(r)


def test_packing_product_cycles():
    r = check_packing_product(cycle(7), cycle(7))
    assert r.applicable and r.holds
    assert r.lhs == 4
    assert r.rhs == packing_number(cartesian_product(cycle(7), cycle(7))).value
    assert r.witnesses["rho_g"] == 2 == r.witnesses["rho_h"]


def test_packing_product_petersen_prism():
    r = check_packing_product(petersen(), complete(2))
    assert r.applicable and r.holds
    assert r.lhs == 1


def test_packing_product_cap():
    r = check_packing_product(petersen(), cycle(7))
    assert not r.applicable and r.holds
    assert r.witnesses["product_size"] == 70


# --- open packing sum ----------------------------------------------------------------


def test_open_packing_sum_k2_union_inapplicable():
    r = check_open_packing_sum(complete(2), complete(3), 1)
    assert not r.applicable and r.holds
    assert r.witnesses["g_is_k2_union"] == 1
    two_edges = Graph(4, [(0, 1), (2, 3)])
    r = check_open_packing_sum(two_edges, complete(3), 1)
    assert not r.applicable


def test_open_packing_sum_needs_spare_vertex():
    # a star times an edge breaks the raw sum (the product's open packing
    # number is 2, below 2 + 2 - 1), so factors without a spare vertex
    # clear of the packing must come back inapplicable rather than alarmed
    star = Graph(3, [(0, 1), (0, 2)])
    assert brute_force_packing(star, open_variant=True) == 2
    prod = cartesian_product(star, complete(2))
    assert brute_force_packing(prod, open_variant=True) == 2
    r = check_open_packing_sum(star, complete(2), 1)
    assert not r.applicable and r.holds
    assert r.witnesses["construction_witness"] == 0
    r = check_open_packing_sum(cycle(4), complete(2), 1)
    assert not r.applicable  # the cube is the other sharp failure


def _bridged_triangles() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])


def test_open_packing_sum_bridged_triangles():
    g = _bridged_triangles()
    assert brute_force_packing(g, open_variant=True) == 2
    r = check_open_packing_sum(g, complete(2), 1)
    assert r.applicable and r.holds
    assert r.lhs == 2 + 2 - 1
    assert r.witnesses["sum_inequality_holds"] == 1
    assert r.witnesses["construction_witness"] == 1
    assert_recomputable(r)


def test_open_packing_sum_cycle_pair():
    # C_6 admits no spare vertex, so the report stands aside even though
    # this particular product satisfies the sum numerically
    r = check_open_packing_sum(cycle(6), cycle(6), 1)
    assert not r.applicable and r.holds
    assert r.witnesses["construction_witness"] == 0
    prod = cartesian_product(cycle(6), cycle(6))
    assert open_packing_number(prod).value >= 2 + 2 - 1
    assert gamma_bnb(prod, 1).value >= 2 + 2 - 1


def test_open_packing_sum_k3_square():
    r = check_open_packing_sum(complete(3), complete(3), 2)
    assert r.applicable and r.holds
    assert (r.lhs, r.rhs) == (2, 5)
    assert_recomputable(r)


# --- product ceiling -------------------------------------------------------------------


def test_product_upper_rook_grid():
    r = check_product_upper(complete(3), complete(4), 2)
    assert r.applicable and r.holds
    assert (r.lhs, r.rhs) == (6, 3 * 4)
    assert_recomputable(r)


def test_product_upper_prism():
    r = check_product_upper(cycle(5), complete(2), 1)
    assert r.applicable and r.holds
    assert r.rhs == 3 * 2
    assert_recomputable(r)


def test_product_upper_needs_feasible_factor():
    # the ceiling needs gamma of the first factor to exist; K_2 at k=2 has none
    r = check_product_upper(complete(2), complete(2), 2)
    assert not r.applicable and r.holds
    assert (r.lhs, r.rhs) == (-1, -1)


# --- complete factors are extremal ---------------------------------------------------


def test_rook_extremal_cycle_square():
    r = check_rook_extremal(cycle(5), cycle(5), 2)
    assert r.applicable and r.holds
    assert r.lhs == 8
    assert r.witnesses["formula_path"] == 1
    assert_recomputable(r)


def test_rook_extremal_equality_on_complete_factors():
    r = check_rook_extremal(complete(3), complete(4), 2)
    assert r.applicable and r.holds
    assert (r.lhs, r.rhs) == (6, 6)


def test_rook_extremal_total_domination():
    r = check_rook_extremal(cycle(4), cycle(4), 1)
    assert r.applicable and r.holds
    assert r.lhs == 4  # complete 4x4 factors need one full line
    assert r.rhs == 4


def test_rook_extremal_infeasible_product():
    r = check_rook_extremal(complete(2), complete(2), 3)
    assert not r.applicable and r.holds


# --- ordinary domination products ------------------------------------------------------


def test_vizing_conjecture_examples():
    r = check_vizing_conjecture(complete(2), complete(2))
    assert r.applicable and r.holds
    assert (r.lhs, r.rhs) == (1, 2)
    assert_recomputable(r)

    r = check_vizing_conjecture(cycle(5), cycle(5))
    assert r.applicable and r.holds
    assert r.lhs == 4 and r.rhs == 5

    r = check_vizing_conjecture(petersen(), complete(2))
    assert r.applicable and r.holds
    assert r.lhs == 3
    assert r.witnesses["gamma_g"] == 3


def test_vizing_conjecture_cap():
    r = check_vizing_conjecture(petersen(), cycle(7))
    assert not r.applicable and r.holds


# --- the sweep -------------------------------------------------------------------------


def test_sweep_order_and_ids():
    reports = run_bound_sweep(complete(3), complete(4), 2)
    assert len(reports) == 10
    ids = [r.bound_id for r in reports]
    assert ids == [
        "degree-lb",
        "degree-lb",
        "packing-lb",
        "packing-lb",
        "vizing-like",
        "packing-product",
        "open-packing-sum",
        "product-upper",
        "rook-extremal",
        "vizing-conjecture",
    ]
    assert set(ids) <= set(ALL_BOUND_IDS)
    assert all(r.holds for r in reports)
    for r in reports:
        assert_recomputable(r)


def test_sweep_infeasible_k_never_raises():
    reports = run_bound_sweep(complete(2), complete(2), 3)
    applicable = {r.bound_id for r in reports if r.applicable}
    assert applicable == {"packing-product", "vizing-conjecture"}
    assert all(r.holds for r in reports)


def test_sweep_small_corpus_sound():
    generators = [complete(2), complete(3), cycle(4)]
    for g in all_connected_graphs(4):
        for h in generators:
            for k in (1, 2):
                for r in run_bound_sweep(g, h, k):
                    assert r.holds, (g.edges, h.edges, k, r.as_dict())
                    assert_recomputable(r)


def test_sweep_with_petersen_factor():
    for g in (cycle(5), complete(4)):
        for r in run_bound_sweep(g, petersen(), 2):
            assert r.holds
            assert_recomputable(r)


def test_as_dict_shape():
    r = check_degree_lb(cycle(5), 1)
    d = r.as_dict()
    assert d == {
        "bound_id": "degree-lb",
        "lhs": r.lhs,
        "rhs": r.rhs,
        "applicable": True,
        "holds": True,
        "witnesses": dict(r.witnesses),
    }
    assert d["witnesses"] is not r.witnesses  # detached copy
