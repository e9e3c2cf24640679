"""End-to-end acceptance gate.

Eight checks, each printing a single pass/fail verdict line. Budgets are
asserted inside the tests; solver kernel warmup happens once in the session
fixture, so the clocks here time the checks themselves.
"""

import json
import random
from pathlib import Path
from time import perf_counter

from conftest import all_connected_graphs, named_generators, random_connected_graph

from ktdom.bounds import run_bound_sweep
from ktdom.domination import Infeasible, feasible, gamma_bnb, gamma_bruteforce, is_ktds
from ktdom.graphs import cartesian_product, complete, cycle, petersen, star_subdivide
from ktdom.packing import packing_number
from ktdom.rook import (
    ZeroOneMatrix,
    build_min_2tds,
    component_graph,
    gamma2_rook_formula,
    gamma_rook_exact,
    is_ktds_matrix,
    make_B,
    make_C,
    make_J,
    matrix_to_set,
    set_to_matrix,
    switch_components,
)

GOLDEN = Path(__file__).parent / "golden"


def _verdict(capsys, num, label, checks, elapsed):
    failed = [name for name, ok in checks if not ok]
    status = "PASS" if not failed else "FAIL"
    with capsys.disabled():
        print(f"criterion {num} {status}: {label} [{elapsed:.1f}s]")
    assert not failed, f"criterion {num} sub-checks failed: {failed}"


def test_criterion_1_rook_3x4_both_routes(capsys):
    t0 = perf_counter()
    g = cartesian_product(complete(3), complete(4))
    bnb = gamma_bnb(g, 2)
    brute = gamma_bruteforce(g, 2)
    elapsed = perf_counter() - t0
    checks = [
        ("branch-and-bound value 6", bnb.value == 6),
        ("brute-force value 6", brute.value == 6),
        ("certificate verifies", is_ktds(g, bnb.certificate, 2)),
        ("within 1s budget", elapsed < 1.0),
    ]
    _verdict(capsys, 1, "3x4 rook board optimum is 6 by two routes", checks, elapsed)


def test_criterion_2_petersen_ladder(capsys):
    t0 = perf_counter()
    p = petersen()
    values = {k: gamma_bnb(p, k) for k in (1, 2, 3)}
    rho = packing_number(p).value
    elapsed = perf_counter() - t0
    checks = [
        ("total domination 4", values[1].value == 4),
        ("double total domination 8", values[2].value == 8),
        ("triple total domination 10", values[3].value == 10),
        ("packing number 1", rho == 1),
        ("certificates verify", all(is_ktds(p, values[k].certificate, k) for k in values)),
        ("within 10s budget", elapsed < 10.0),
    ]
    _verdict(capsys, 2, "Petersen ladder 4/8/10 and packing 1", checks, elapsed)


def test_criterion_3_formula_matches_solver(capsys):
    t0 = perf_counter()
    mismatches = []
    cells = 0
    for n in range(1, 8):
        for m in range(n, 8):
            want = gamma2_rook_formula(n, m).value
            if want is None:
                continue
            cells += 1
            got = gamma_rook_exact(n, m, 2).value
            if got != want:
                mismatches.append((n, m, want, got))
    elapsed = perf_counter() - t0
    checks = [
        ("26 defined boards up to 7x7", cells == 26),
        ("zero mismatches", not mismatches),
        ("within 300s budget", elapsed < 300.0),
    ]
    _verdict(capsys, 3, "closed formula agrees with the exact solver", checks, elapsed)


def test_criterion_4_constructions_match_formula(capsys):
    t0 = perf_counter()
    bad = []
    built = 0
    for n in range(1, 41):
        for m in range(1, 41):
            want = gamma2_rook_formula(n, m).value
            if want is None:
                continue
            built += 1
            mat = build_min_2tds(n, m)
            if not is_ktds_matrix(mat, 2) or mat.ones != want:
                bad.append((n, m))
    elapsed = perf_counter() - t0
    checks = [
        ("1597 boards built", built == 1597),
        ("every matrix verifies at the formula count", not bad),
        ("within 30s budget", elapsed < 30.0),
    ]
    _verdict(capsys, 4, "constructions meet the formula on all boards to 40x40", checks, elapsed)


def test_criterion_5_value_grids(capsys):
    t0 = perf_counter()
    bad = []
    cells = 0
    files = sorted(GOLDEN.glob("gamma_rook_k*.json"))
    for path in files:
        data = json.loads(path.read_text())
        k = data["k"]
        for n, m, want in data["cells"]:
            cells += 1
            res = gamma_rook_exact(n, m, k)
            mat = set_to_matrix(res.certificate, n, m)
            if res.value != want or not is_ktds_matrix(mat, k) or mat.ones != want:
                bad.append((n, m, k))
        for n, m in data["infeasible"]:
            cells += 1
            try:
                gamma_rook_exact(n, m, k)
                bad.append((n, m, k, "expected infeasible"))
            except Infeasible:
                pass
    elapsed = perf_counter() - t0
    checks = [
        ("grids for k=2,3,4 present", len(files) == 3),
        ("75 cells checked", cells == 75),
        ("all values reproduce with verifying certificates", not bad),
    ]
    _verdict(capsys, 5, "frozen value grids for k=2,3,4 reproduced exactly", checks, elapsed)


def test_criterion_6_bound_sweep_corpus(capsys):
    t0 = perf_counter()
    corpus = all_connected_graphs(5)
    gens = named_generators()
    alarms = []
    applicable = 0
    sweeps = 0
    for g in corpus:
        for h in gens:
            for k in (1, 2):
                sweeps += 1
                for rep in run_bound_sweep(g, h, k):
                    if rep.applicable:
                        applicable += 1
                        if not rep.holds:
                            alarms.append((g.n, h.n, k, rep.bound_id))
    elapsed = perf_counter() - t0
    checks = [
        ("31 connected classes up to 5 vertices", len(corpus) == 31),
        ("9 generator partners", len(gens) == 9),
        ("558 sweeps run", sweeps == 558),
        ("thousands of applicable checks", applicable > 1000),
        ("zero alarms", not alarms),
        ("within 600s budget", elapsed < 600.0),
    ]
    _verdict(capsys, 6, "every applicable bound holds across the corpus", checks, elapsed)


def test_criterion_7_subdivided_star_equality(capsys):
    t0 = perf_counter()
    host = star_subdivide(cycle(5), 1)
    rho = packing_number(host).value
    gamma_closed = gamma_bnb(host, 1, total=False).value
    gamma_total = gamma_bnb(host, 1).value
    gt_k2 = gamma_bnb(complete(2), 1).value
    prod = cartesian_product(host, complete(2))
    gamma_prod = gamma_bnb(prod, 1).value
    elapsed = perf_counter() - t0
    checks = [
        ("20-vertex host", host.n == 20),
        ("packing number 5", rho == 5),
        ("domination number 5", gamma_closed == 5),
        ("total domination 10", gamma_total == 10),
        ("product equality", gamma_total * gt_k2 == 2 * gamma_prod),
        ("within 600s budget", elapsed < 600.0),
    ]
    _verdict(capsys, 7, "subdivided 5-cycle star hits the doubled-product equality", checks, elapsed)


def _switch_replacements(x, y):
    candidates = [make_J(x, y)]
    if x >= 3 and y >= 3:
        candidates.append(make_B(x, y))
    if x >= 4 and y >= 4:
        candidates.append(make_C(x, y))
    return [
        r
        for r in candidates
        if is_ktds_matrix(r, 2) and all(r.row_sums) and all(r.col_sums)
    ]


def test_criterion_8_oracle_property_suite(capsys):
    t0 = perf_counter()
    rng = random.Random(20260819)
    fails = []

    compared = 0
    for _ in range(200):
        g = random_connected_graph(rng, rng.randint(6, 10))
        for k in (1, 2, 3):
            if not feasible(g, k):
                continue
            a = gamma_bnb(g, k)
            b = gamma_bruteforce(g, k)
            compared += 1
            if a.value != b.value or not is_ktds(g, a.certificate, k):
                fails.append(("route", g.n, k))

    kappa_checked = 0
    for _ in range(500):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        p = rng.choice((0.3, 0.6, 0.9))
        mat = ZeroOneMatrix(
            [[1 if rng.random() < p else 0 for _ in range(m)] for _ in range(n)]
        )
        k = rng.randint(1, 3)
        rook = cartesian_product(complete(n), complete(m))
        if is_ktds_matrix(mat, k) != is_ktds(rook, matrix_to_set(mat), k):
            fails.append(("kappa", n, m, k))
        kappa_checked += 1

    switches = 0
    for n in range(2, 9):
        for m in range(n, 9):
            mat = build_min_2tds(n, m)
            if not all(mat.row_sums) or not all(mat.col_sums):
                continue
            for comp in component_graph(mat):
                for rep in _switch_replacements(comp.x, comp.y):
                    out = switch_components(mat, [comp], rep)
                    switches += 1
                    if not is_ktds_matrix(out, 2):
                        fails.append(("switch", n, m, comp.x, comp.y))
                    elif out.ones != mat.ones - comp.ones + rep.ones:
                        fails.append(("switch-count", n, m, comp.x, comp.y))

    components_checked = 0
    for n in range(2, 13):
        for m in range(n, 13):
            for comp in component_graph(build_min_2tds(n, m)):
                components_checked += 1
                if comp.ones < comp.x + comp.y - 1:
                    fails.append(("component-ones", n, m))

    permutations_checked = 0
    for _ in range(200):
        n, m = rng.randint(2, 5), rng.randint(2, 5)
        p = rng.choice((0.3, 0.6, 0.9))
        mat = ZeroOneMatrix(
            [[1 if rng.random() < p else 0 for _ in range(m)] for _ in range(n)]
        )
        k = rng.randint(1, 3)
        rows = rng.sample(range(n), n)
        cols = rng.sample(range(m), m)
        permuted = ZeroOneMatrix(
            [[mat.entry(rows[i], cols[j]) for j in range(m)] for i in range(n)]
        )
        if is_ktds_matrix(mat, k) != is_ktds_matrix(permuted, k):
            fails.append(("permutation", n, m, k))
        permutations_checked += 1

    elapsed = perf_counter() - t0
    checks = [
        ("200+ feasible route comparisons", compared >= 200),
        ("500 kappa equivalence boards", kappa_checked == 500),
        ("switch closure exercised", switches >= 20),
        ("component law coverage", components_checked >= 50),
        ("200 permutation boards", permutations_checked == 200),
        ("no property failures", not fails),
    ]
    _verdict(capsys, 8, "dual-route values and matrix invariants all agree", checks, elapsed)
