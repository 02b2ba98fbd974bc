import random

import pytest
from networkx.generators.atlas import graph_atlas_g

from conftest import complete, cycle, path
from cws.cnf import CnfFormula, parse_dimacs
from cws.graph import Graph
from cws.oracles import (
    LimitExceeded,
    all_assignments,
    brute_minimum,
    brute_sat,
    brute_solve,
    feasible,
    is_forest_without,
    size_limit,
)


def _components(g):
    seen, count = set(), 0
    for s in range(g.n):
        if s in seen:
            continue
        count += 1
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for w in g.adj[u] - seen:
                seen.add(w)
                stack.append(w)
    return count


def test_forest_check_matches_component_count():
    for nxg in graph_atlas_g()[1:]:
        g = Graph.from_edges(nxg.number_of_nodes(), nxg.edges())
        assert is_forest_without(g, set()) == (_components(g) == g.n - g.m)


def test_oct_c5():
    ok, wit = brute_solve("oct", cycle(5), 1)
    assert ok and len(wit) == 1


def test_st_path():
    g = path(3)
    ok, wit = brute_solve("st", g, 3, terminals=[0, 2])
    assert ok and wit == {0, 1, 2}
    assert not brute_solve("st", g, 2, terminals=[0, 2])[0]


def test_coct_triangle():
    assert brute_solve("coct", complete(3), 1)[0]


def test_first_witness_is_lexicographic():
    ok, wit = brute_solve("cvc", path(4), 2)
    assert wit == {1, 2}
    assert brute_solve("fvs", complete(4), 2)[1] == {0, 1}


def test_minimum_none_when_infeasible():
    assert brute_minimum("cds", Graph.from_edges(2, [])) is None


def test_unknown_problem():
    with pytest.raises(ValueError):
        feasible("xyz", path(2), [])
    with pytest.raises(ValueError):
        brute_solve("xyz", path(2), 1)


def test_limit(monkeypatch):
    monkeypatch.setenv("CWS_LIMIT", "3")
    assert size_limit() == 3
    with pytest.raises(LimitExceeded):
        brute_solve("cvc", path(4), 2)


def test_sat_examples():
    ok, bits = brute_sat(CnfFormula.of(2, [(1, 2)]), "nae")
    assert ok and bits[0] != bits[1]
    assert not brute_sat(CnfFormula.of(1, [(1,), (-1,)]))[0]
    with pytest.raises(ValueError):
        brute_sat(CnfFormula.of(1, [(1,)]), "xyz")


def test_nae_implies_sat():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(3, 10)
        clauses = [[v if rng.random() < 0.5 else -v for v in rng.sample(range(1, n + 1), 3)] for _ in range(rng.randint(1, 8))]
        f = CnfFormula.of(n, clauses)
        nae = set(all_assignments(f, "nae"))
        assert nae <= set(all_assignments(f, "sat"))
        assert brute_sat(f, "nae")[0] == bool(nae)


def test_dimacs_round_trip_and_errors():
    f = CnfFormula.of(3, [(1, -2, 3), (-1,)])
    assert parse_dimacs(f.to_dimacs()) == f
    assert parse_dimacs("c hi\np cnf 2 1\n1 -2\n0\n") == CnfFormula.of(2, [(1, -2)])
    for bad in ["1 2 0\n", "p cnf 2 2\n1 0\n", "p cnf 1 1\n2 0\n", "p cnf 2 1\n1 1 0\n"]:
        with pytest.raises(ValueError):
            parse_dimacs(bad)
