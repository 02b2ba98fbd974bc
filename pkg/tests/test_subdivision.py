import itertools

import numpy as np
import pytest

from conftest import complete, cycle, path, random_graph, random_order, star
from cws.graph import Arrangement, Graph, make_nice, path_decomposition_from_arrangement
from cws.oracles import brute_minimum, is_bipartite_without
from cws.subdivision import (
    DpStats,
    FvsWeights,
    build_pipeline,
    count_fvs_cuts,
    fvs_count_table,
    fvs_repeat,
    solve_fvs,
    solve_oct,
    solve_oct_prime,
)


def _nice(g, order=None):
    order = order or Arrangement.identity(g.n)
    return make_nice(path_decomposition_from_arrangement(g, order))


def test_oct_prime_examples():
    c5 = cycle(5)
    pd = _nice(c5)
    assert solve_oct_prime(c5, pd, 1)
    assert not solve_oct_prime(c5, pd, 0)
    assert not solve_oct_prime(c5, pd, 5, forbidden=range(5))
    with pytest.raises(ValueError):
        solve_oct_prime(c5, pd, 1, forced={0}, forbidden={0})


def test_oct_prime_random_against_enumeration(rng):
    for _ in range(40):
        n = rng.randint(1, 7)
        g = random_graph(rng, n)
        pd = _nice(g, random_order(rng, n))
        forced = {v for v in range(n) if rng.random() < 0.15}
        forbidden = {v for v in range(n) if v not in forced and rng.random() < 0.25}
        free = [v for v in range(n) if v not in forced | forbidden]
        best = None
        for size in range(len(free) + 1):
            if any(is_bipartite_without(g, forced | set(s)) for s in itertools.combinations(free, size)):
                best = len(forced) + size
                break
        for k in range(n + 1):
            assert solve_oct_prime(g, pd, k, forced, forbidden) == (best is not None and k >= best)


def test_oct_examples():
    tri = complete(3)
    assert solve_oct(tri, Arrangement.identity(3), 1)
    assert not solve_oct(tri, Arrangement.identity(3), 0)
    assert solve_oct(cycle(6), Arrangement.identity(6), 0)
    with pytest.raises(ValueError):
        solve_oct(tri, Arrangement.identity(3), -1)


def test_fvs_count_empty_graph():
    g = Graph.from_edges(0, [])
    pd = _nice(g)
    assert count_fvs_cuts(g, pd, (), FvsWeights((), ()), 0, 0, 0, 0) == 1


def test_fvs_count_single_vertex():
    g = Graph.from_edges(1, [])
    w = FvsWeights((2,), (3,))
    assert count_fvs_cuts(g, _nice(g), (), w, 1, 0, 1, 5, p=None) == 1


def _brute_fvs_counts(g, keep, weights):
    counts = {}
    verts = range(g.n)
    for xs in itertools.chain.from_iterable(itertools.combinations(verts, r) for r in range(g.n + 1)):
        x = set(xs)
        if not keep <= x:
            continue
        ex = g.induced_edges(x)
        for side in itertools.product((0, 1), repeat=len(xs)):
            left = {v for v, s in zip(xs, side) if s == 0}
            if any((u in left) != (v in left) for u, v in ex):
                continue
            for r in range(len(left) + 1):
                for ms in itertools.combinations(sorted(left), r):
                    w = sum(weights.forest[v] for v in x) + sum(weights.marker[v] for v in ms)
                    key = (len(x), len(ex), len(ms), w)
                    counts[key] = counts.get(key, 0) + 1
    return counts


def test_fvs_counts_match_enumeration(rng):
    for _ in range(15):
        n = rng.randint(1, 5)
        g = random_graph(rng, n)
        weights = FvsWeights.draw(n, rng, bound=3)
        keep = {v for v in range(n) if rng.random() < 0.3}
        table = fvs_count_table(g, _nice(g, random_order(rng, n)), keep, weights, p=None)
        counts = _brute_fvs_counts(g, keep, weights)
        got = {idx: int(x) for idx, x in np.ndenumerate(table) if x}
        assert got == counts


def test_fvs_examples():
    k4 = complete(4)
    order = Arrangement.identity(4)
    assert solve_fvs(k4, order, 2, seed=7).answer
    assert not solve_fvs(k4, order, 1).answer
    assert solve_fvs(star(4), Arrangement.identity(5), 0).answer
    assert solve_fvs(path(5), Arrangement.identity(5), 0).answer


def test_fvs_detects_minimum_without_false_positives(rng):
    for _ in range(40):
        n = rng.randint(1, 7)
        g = random_graph(rng, n)
        p = build_pipeline(g, random_order(rng, n))
        mn = brute_minimum("fvs", g)
        found = [min(fvs_repeat(p, n, 0, r) or [n + 1]) for r in range(4)]
        assert min(found) >= mn
        assert mn in found


def test_draw_zero_forest_weight_for_kept_vertices(rng):
    w = FvsWeights.draw(6, rng, always_kept={1, 4})
    assert w.forest[1] == w.forest[4] == 0
    assert all(1 <= x <= 24 for i, x in enumerate(w.forest) if i not in (1, 4))
    assert all(1 <= x <= 24 for x in w.marker)


def test_support_bounds(rng):
    for _ in range(30):
        n = rng.randint(1, 7)
        g = random_graph(rng, n)
        order = random_order(rng, n)
        p = build_pipeline(g, order)
        assert all(len(b & p.originals) <= 1 for b in p.decomposition.bags)
        s1, s2 = DpStats(), DpStats()
        solve_oct(g, order, n, stats=s1)
        fvs_repeat(p, n, 0, 0, s2)
        assert s1.max_support <= 3 * 2**p.pathwidth
        assert s2.max_support <= 9 * 2**p.pathwidth
        assert s1.max_free <= 1 and s2.max_free <= 1
