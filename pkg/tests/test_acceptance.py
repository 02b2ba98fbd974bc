"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""

import random
import time
from math import comb

import networkx as nx
import pytest

from conftest import random_coloring_instance, representation_trial
from cws.battery import formula_battery
from cws.cli import bench_family, run_bench
from cws.cnf import CnfFormula
from cws.coloring import RunStats, naive_solve, reduction_applies, solve_reduced
from cws.graph import Arrangement, Graph, cutwidth_of, enumerate_cycles, subdivide_twice
from cws.linalg import CDS_MATRIX, CVC_MATRIX, coloring_matrix, rank_over
from cws.oracles import all_assignments, brute_coloring_count, brute_minimum, brute_sat, feasible
from cws.reductions import SAT_MODE, build_witness, coct_reference_budget, generate, validate_structure
from cws.solve import SOLVERS, solve
from cws.subdivision import build_pipeline


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {title} [{detail}]")
        assert ok, detail

    return emit


def atlas(max_n, connected=False, min_edges=0):
    graphs = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if not 1 <= n <= max_n or G.number_of_edges() < min_edges:
            continue
        if connected and not nx.is_connected(G):
            continue
        graphs.append(Graph.from_edges(n, list(G.edges())))
    return graphs


def shuffled(n, rng):
    order = list(range(n))
    rng.shuffle(order)
    return Arrangement.of(order)


# Shared runs, computed once and reused by the support-bound criterion.

@pytest.fixture(scope="session")
def coloring_runs():
    rng = random.Random("acceptance/2")
    start = time.perf_counter()
    runs = []
    for _ in range(200):
        inst = random_coloring_instance(rng, max_n=6, max_colors=4, primes=(2, 3))
        stats = RunStats()
        reduced = solve_reduced(inst, stats)
        runs.append((inst, reduced, naive_solve(inst), brute_coloring_count(inst), stats))
    return runs, time.perf_counter() - start


@pytest.fixture(scope="session")
def representation_runs():
    rng = random.Random("acceptance/3")
    start = time.perf_counter()
    seen, trials = [], []
    while len(trials) < 100:
        res = representation_trial(rng, max_n=5, seen=seen)
        if res is not None:
            trials.append(res)
    return trials, seen, time.perf_counter() - start


@pytest.fixture(scope="session")
def decision_runs():
    start = time.perf_counter()
    runs = []
    for idx, g in enumerate(atlas(6, connected=True)):
        order = shuffled(g.n, random.Random(f"acceptance/4/{idx}"))
        for problem in SOLVERS:
            best = brute_minimum(problem, g)
            for k in range(g.n + 1):
                out = solve(problem, g, order, k, seed=idx)
                runs.append((problem, g, k, best is not None and best <= k, out))
    return runs, time.perf_counter() - start


def test_criterion_1_rank_facts(report):
    start = time.perf_counter()
    bad = []
    if rank_over(CVC_MATRIX, 2) != 2:
        bad.append("cvc")
    if rank_over(CDS_MATRIX, 2) != 3:
        bad.append("cds")
    for q in range(2, 7):
        for p in (2, 3, 5):
            want = q - 1 if (q - 1) % p == 0 else q
            if rank_over(coloring_matrix(q), p) != want:
                bad.append(f"q={q},p={p}")
    elapsed = time.perf_counter() - start
    report(1, "rank facts", not bad and elapsed < 1, f"mismatches={bad} time={elapsed:.3f}s")


def test_criterion_2_coloring_engine(report, coloring_runs):
    runs, elapsed = coloring_runs
    bad = sum(1 for _, r, nv, b, _ in runs if not r == nv == b)
    used = sum(1 for inst, *_ in runs if reduction_applies(inst) is not None)
    ok = bad == 0 and len(runs) == 200 and elapsed < 120
    report(2, "reduced = naive = brute", ok, f"instances={len(runs)} rank-reduced={used} mismatches={bad} time={elapsed:.1f}s")


def test_criterion_3_representation(report, representation_runs):
    trials, _, elapsed = representation_runs
    checked = sum(c for c, _ in trials)
    bad = sum(b for _, b in trials)
    ok = bad == 0 and len(trials) == 100 and elapsed < 120
    report(3, "representation property", ok, f"triples={len(trials)} y-checked={checked} mismatches={bad} time={elapsed:.1f}s")


def test_criterion_4_decisions(report, decision_runs):
    runs, elapsed = decision_runs
    graphs = len({id(g) for _, g, *_ in runs})
    oct_bad = sum(1 for p, _, _, truth, out in runs if p == "oct" and out.answer != truth)
    false_yes = sum(1 for p, _, _, truth, out in runs if p != "oct" and out.answer and not truth)
    randomized = [(truth, out) for p, _, _, truth, out in runs if p != "oct"]
    misses = sum(1 for truth, out in randomized if truth and not out.answer)
    rate = misses / len(randomized)
    ok = graphs == 143 and oct_bad == 0 and false_yes == 0 and rate < 0.01 and elapsed < 600
    detail = f"graphs={graphs} pairs={len(runs)} oct-mismatch={oct_bad} false-yes={false_yes} misses={misses} ({rate:.4%}) time={elapsed:.1f}s"
    report(4, "decision equivalence", ok, detail)


def test_criterion_5_support_bounds(report, coloring_runs, representation_runs, decision_runs):
    violations = []
    checked = 0
    for inst, *_, stats in coloring_runs[0]:
        rep = reduction_applies(inst)
        if rep is None:
            continue
        bound = inst.num_colors * rep.rank ** cutwidth_of(inst.graph, inst.order)
        checked += 1
        if stats.max_support > bound:
            violations.append(("engine", stats.max_support, bound))
    graphs = [(inst.graph, inst.order) for inst, *_ in coloring_runs[0]] + representation_runs[1]
    for g, order in graphs:
        for problem in SOLVERS:
            out = solve(problem, g, order, g.n // 2, repeats=1)
            checked += 1
            if out.max_support > out.support_bound:
                violations.append((problem, out.max_support, out.support_bound))
    for problem, _, _, _, out in decision_runs[0]:
        checked += 1
        if out.max_support > out.support_bound:
            violations.append((problem, out.max_support, out.support_bound))
    for family in ("cvc", "oct"):
        for row in run_bench(bench_family(family)):
            checked += 1
            if row["support"] > row["support_bound"]:
                violations.append((row["id"], row["support"], row["support_bound"]))
    report(5, "support bounds", not violations, f"runs={checked} violations={violations[:5]}")


def test_criterion_6_subdivision(report):
    start = time.perf_counter()
    rng = random.Random("acceptance/6")
    graphs = atlas(7, min_edges=1)
    problems = []
    for g in graphs:
        for order in (Arrangement.identity(g.n), shuffled(g.n, rng)):
            ctw = cutwidth_of(g, order)
            sub, hat = subdivide_twice(g, order)
            if cutwidth_of(sub.graph, hat) != ctw:
                problems.append(("ctw", g))
            pipe = build_pipeline(g, order)
            pipe.decomposition.validate(pipe.graph)
            if pipe.pathwidth > ctw:
                problems.append(("width", g))
            if any(len(bag & pipe.originals) > 1 for bag in pipe.decomposition.bags):
                problems.append(("originals", g))
            before = sorted(3 * len(c) for c in enumerate_cycles(g))
            after = sorted(len(c) for c in enumerate_cycles(sub.graph))
            if before != after:
                problems.append(("cycles", g))
    elapsed = time.perf_counter() - start
    report(6, "subdivision invariants", not problems, f"graphs={len(graphs)} arrangements={2 * len(graphs)} violations={len(problems)} time={elapsed:.1f}s")


def test_criterion_7_end_to_end(report):
    start = time.perf_counter()
    formulas = formula_battery()
    mismatches, width_bad, runs = [], [], 0
    for f in formulas:
        sat = brute_sat(f, "sat")[0]
        nae = brute_sat(f, "nae")[0]
        for problem, truth in (("cvc", sat), ("fvs", sat), ("oct", nae)):
            if problem == "oct" and min(len(c) for c in f.clauses) < 2:
                continue
            out = generate(problem, f, 3)
            d = 3
            limit = {"cvc": f.n + comb(d, 2) + d + 2, "fvs": f.n + comb(d + 1, 2) + 3 * d + 3, "oct": f.n + comb(d, 2) + d + 3}[problem]
            width = cutwidth_of(out.graph, out.arrangement)
            if width > min(limit, out.claimed_bound):
                width_bad.append((problem, f, width))
            res = solve(problem, out.graph, out.arrangement, out.budget)
            runs += 1
            if res.answer != truth:
                mismatches.append((problem, f))
    elapsed = time.perf_counter() - start
    ok = len(formulas) >= 50 and not mismatches and not width_bad and elapsed < 900
    detail = f"formulas={len(formulas)} runs={runs} mismatches={len(mismatches)} width-violations={len(width_bad)} time={elapsed:.1f}s"
    report(7, "reduction end-to-end", ok, detail)


def test_criterion_8_structure(report):
    start = time.perf_counter()
    formulas = [CnfFormula.of(2, [(1, -2)])] + formula_battery(24, max_n=4, max_m=2, seed=8)
    failures = []
    witnesses = 0
    for f in formulas:
        for problem in ("st", "cds", "coct"):
            out = generate(problem, f, 3, t0=1)
            rep = validate_structure(out)
            if not rep.ok:
                failures.append((problem, f, "structure", rep.failures))
            # the COCT budget is compared against the reference closed form
            expected = out.closed_form
            if problem == "coct":
                expected = coct_reference_budget(out.params["n_prime"], f.m)
            if out.budget != expected:
                failures.append((problem, f, "budget", out.budget, expected))
            for a in all_assignments(f, SAT_MODE[problem]):
                s = build_witness(out, a)
                witnesses += 1
                if len(s) != out.budget or not feasible(problem, out.graph, s, out.terminals):
                    failures.append((problem, f, "witness"))
    smallest = generate("coct", formulas[0], 3)
    if smallest.budget != 55:
        failures.append(("coct", formulas[0], "k=55", smallest.budget))
    elapsed = time.perf_counter() - start
    kinds = sorted({(fl[0], fl[2]) for fl in failures})
    ok = not failures and elapsed < 300
    detail = f"formulas={len(formulas)} witnesses={witnesses} failures={len(failures)} kinds={kinds} coct(n'=1,m=1) k={smallest.budget} time={elapsed:.1f}s"
    report(8, "ST/CDS/COCT structure", ok, detail)
