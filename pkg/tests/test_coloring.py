import pytest

from conftest import complete, cycle, path, random_coloring_instance, representation_trial
from cws.algebra import ExactBackend
from cws.coloring import (
    ColoringInstance,
    RunStats,
    Table,
    compatible,
    naive_solve,
    reduce,
    reduced_sets,
    solve_reduced,
)
from cws.graph import Arrangement, Graph, cutwidth_of
from cws.linalg import CVC_MATRIX, basis_representation, coloring_matrix
from cws.oracles import brute_coloring_count

X, L, R = 0, 1, 2


def test_compatible_examples():
    g = path(2)
    assert compatible({0: L}, {}, Graph.from_edges(2, []), CVC_MATRIX)
    assert not compatible({0: L}, {1: R}, g, CVC_MATRIX)
    assert compatible({0: X}, {1: L}, g, CVC_MATRIX)
    assert not compatible({0: X}, {0: L}, g, CVC_MATRIX)


def test_triangle_proper_colorings():
    inst = ColoringInstance.build(complete(3), Arrangement.identity(3), coloring_matrix(3))
    assert naive_solve(inst) == 6
    assert brute_coloring_count(inst) == 6
    inst5 = ColoringInstance.build(complete(3), Arrangement.identity(3), coloring_matrix(3), p=5)
    assert solve_reduced(inst5) == 1


def test_single_vertex_special():
    inst = ColoringInstance.build(Graph.from_edges(1, []), Arrangement.identity(1), [[1]], {0}, [{0}], [1], 1, 1)
    assert naive_solve(inst) == 1


def test_path_cvc_matches_brute():
    g = path(2)
    for k in (1, 2):
        inst = ColoringInstance.build(g, Arrangement.identity(2), CVC_MATRIX, {L, R}, None, [1, 1], k, k)
        assert naive_solve(inst) == brute_coloring_count(inst)
        inst2 = ColoringInstance.build(g, Arrangement.identity(2), CVC_MATRIX, {L, R}, None, [1, 1], k, k, p=2)
        assert solve_reduced(inst2) == brute_coloring_count(inst2)


def test_p3_cvc_matches_naive():
    inst = ColoringInstance.build(path(3), Arrangement.identity(3), CVC_MATRIX, {L, R}, None, [1, 2, 3], 2, 3, p=2)
    assert solve_reduced(inst) == naive_solve(inst) == brute_coloring_count(inst)


def test_empty_list_gives_zero():
    inst = ColoringInstance.build(path(3), Arrangement.identity(3), coloring_matrix(2), lists=[{0, 1}, set(), {0}])
    assert naive_solve(inst) == 0 == brute_coloring_count(inst)


def test_negative_targets_are_zero():
    inst = ColoringInstance.build(path(2), Arrangement.identity(2), CVC_MATRIX, {L}, target_order=-1, p=2)
    assert naive_solve(inst) == 0 and solve_reduced(inst) == 0


def test_build_validation():
    with pytest.raises(ValueError):
        ColoringInstance.build(path(2), Arrangement.identity(2), CVC_MATRIX, lists=[{5}, {0}])
    with pytest.raises(ValueError):
        ColoringInstance.build(path(2), Arrangement.identity(2), CVC_MATRIX, weights=[0, 1])


def test_reduce_without_mass_on_reduced_colors():
    rep = basis_representation(CVC_MATRIX, 2)
    be = ExactBackend((1,), 0, 2)
    vals = be.zeros(2)
    vals[:, 0, 0] = 1
    table = Table((0,), [(X,), (L,)], vals)
    out = reduce(table, 0, rep, be)
    assert dict(zip(out.keys, out.values[:, 0, 0])) == {(X,): 1, (L,): 1}
    assert out.reduced == {0}


def test_reduce_moves_mass_of_reduced_color():
    rep = basis_representation(CVC_MATRIX, 2)
    be = ExactBackend((1,), 0, 2)
    vals = be.zeros(1)
    vals[0, 0, 0] = 1
    out = reduce(Table((0,), [(R,)], vals), 0, rep, be)
    assert sorted(out.keys) == [(X,), (L,)]
    assert (out.values[:, 0, 0] == 1).all()


def test_reduce_checks_precondition():
    rep = basis_representation(CVC_MATRIX, 2)
    be = ExactBackend((1,), 0, 2)
    table = Table((0,), [(R,)], be.unit())
    with pytest.raises(ValueError):
        reduce(table, 0, rep, be, complete(3), [1, 2])
    with pytest.raises(ValueError):
        reduce(table, 1, rep, be)


def test_representation_property(rng):
    checked = 0
    while checked < 25:
        res = representation_trial(rng)
        if res is None:
            continue
        ys, bad = res
        assert bad == 0
        checked += 1


def test_three_way_agreement(rng):
    for _ in range(60):
        inst = random_coloring_instance(rng)
        expected = brute_coloring_count(inst)
        assert naive_solve(inst) == expected
        assert solve_reduced(inst) == expected


def test_support_within_rank_bound_on_c6():
    g = cycle(6)
    order = Arrangement.identity(6)
    inst = ColoringInstance.build(g, order, CVC_MATRIX, {L, R}, None, [1] * 6, 3, 3, p=2)
    stats = RunStats()
    solve_reduced(inst, stats)
    assert stats.violations == []
    assert stats.max_support <= 3 * 2 ** cutwidth_of(g, order)


def test_reduced_run_respects_rank_bound(rng):
    for _ in range(20):
        inst = random_coloring_instance(rng, primes=(2,))
        stats = RunStats()
        solve_reduced(inst, stats)
        assert stats.violations == []


def test_reduced_sets_exclude_current_vertex():
    g, order = path(4), Arrangement.identity(4)
    for i in range(4):
        assert order.order[i] not in reduced_sets(g, order, i)
