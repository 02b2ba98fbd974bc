import random

import pytest

from cws.graph import Arrangement, Graph


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_graph(rng, n, p=0.5):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_order(rng, n):
    order = list(range(n))
    rng.shuffle(order)
    return Arrangement.of(order)


def identity(g):
    return Arrangement.identity(g.n)


@pytest.fixture
def rng():
    return random.Random(12345)


# Coloring-engine instances shared by the unit and acceptance suites.

import itertools  # noqa: E402

import numpy as np  # noqa: E402

from cws.algebra import ExactBackend  # noqa: E402
from cws.coloring import ColoringInstance, Table, boundary_sums, reduce  # noqa: E402
from cws.graph import boundaries  # noqa: E402
from cws.linalg import CDS_MATRIX, CVC_MATRIX, basis_representation, coloring_matrix  # noqa: E402

# Matrices whose rank drops over the paired prime.
DEFICIENT = [
    (CVC_MATRIX, 2),
    (CDS_MATRIX, 2),
    (coloring_matrix(3), 2),
    (coloring_matrix(4), 3),
    (((1, 1), (1, 1)), 2),
    (((1, 1), (1, 1)), 3),
]


def random_symmetric(rng, q):
    m = [[0] * q for _ in range(q)]
    for i in range(q):
        for j in range(i, q):
            m[i][j] = m[j][i] = int(rng.random() < 0.6)
    return m


def random_coloring_instance(rng, max_n=6, max_colors=4, primes=(2, 3)):
    n = rng.randint(1, max_n)
    g = random_graph(rng, n, rng.choice([0.3, 0.5, 0.7]))
    order = random_order(rng, n)
    if rng.random() < 0.6:
        matrix, p = rng.choice([(m, p) for m, p in DEFICIENT if len(m) <= max_colors and p in primes])
    else:
        matrix, p = random_symmetric(rng, rng.randint(1, max_colors)), rng.choice(primes)
    q = len(matrix)
    special = {c for c in range(q) if rng.random() < 0.5}
    lists = []
    for _ in range(n):
        if rng.random() < 0.3:
            lists.append({c for c in range(q) if rng.random() < 0.6} or {rng.randrange(q)})
        else:
            lists.append(set(range(q)))
    weights = [rng.randint(1, 3) for _ in range(n)]
    # aim the target at a realizable (order, weight) pair
    pick = [rng.choice(sorted(a)) for a in lists]
    k = sum(1 for c in pick if c in special)
    w = sum(weights[v] for v, c in enumerate(pick) if c in special)
    return ColoringInstance.build(g, order, matrix, special, lists, weights, k, w, p)


def representation_trial(rng, max_n=5, seen=None):
    """Reduce a random table at a random eligible vertex; return (checked y count, mismatches) or None.

    Each sampled (graph, order) is appended to ``seen`` when given.
    """
    n = rng.randint(2, max_n)
    g = random_graph(rng, n, 0.6)
    order = random_order(rng, n)
    if seen is not None:
        seen.append((g, order))
    matrix, p = rng.choice(DEFICIENT)
    inst = ColoringInstance.build(g, order, matrix, special={0}, weights=[1] * n, target_order=n, target_weight=n, p=p)
    rep = basis_representation(matrix, p)
    spots = []
    for xs, ys in boundaries(g, order):
        for v in xs:
            if len(g.adj[v] & set(ys)) == 1:
                spots.append((xs, ys, v))
    if not spots:
        return None
    xs, ys, v = rng.choice(spots)
    backend = ExactBackend((n + 1,), n, p)
    q = len(matrix)
    keys = list(itertools.product(range(q), repeat=len(xs)))
    values = backend.zeros(len(keys))
    values[...] = np.array([rng.randrange(p) for _ in range(values.size)], dtype=np.int64).reshape(values.shape)
    table = Table(tuple(xs), keys, values)
    reduced = reduce(table, v, rep, backend, g, ys)
    before = boundary_sums(table, ys, inst, backend)
    after = boundary_sums(reduced, ys, inst, backend)
    bad = sum(1 for y in before if not np.array_equal(before[y] % p, after[y] % p))
    return len(before), bad
