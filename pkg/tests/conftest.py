import itertools
import random

import pytest
from hypothesis import strategies as st

from graphpoly.graph import Digraph, Multigraph, connected_components


def pipelines(n):
    """Every Tutte route the engine offers for an ``n``-vertex graph."""
    names = ["dense", "polyspace", "connected", "recursion"]
    return names + [f"split:{s}" for s in range(n + 1)]


def _canonical(n, edges):
    best = None
    for perm in itertools.permutations(range(1, n + 1)):
        key = tuple(sorted(tuple(sorted((perm[u - 1], perm[v - 1]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


def exhaustive_graphs():
    """Connected simple graphs on up to 5 vertices and small connected multigraphs on up to 3, up to isomorphism.

    The multigraphs allow edge multiplicity up to 2 and at most one loop per vertex.
    """
    seen = set()
    out = []

    def keep(n, edges):
        G = Multigraph(n, tuple(edges))
        if len(connected_components(G)) != 1:
            return
        key = (n, _canonical(n, edges))
        if key not in seen:
            seen.add(key)
            out.append(G)

    for n in range(1, 6):
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        for bits in range(1 << len(pairs)):
            keep(n, [e for k, e in enumerate(pairs) if bits >> k & 1])
    for n in range(1, 4):
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        for mult in itertools.product(range(3), repeat=len(pairs)):
            for loops in itertools.product(range(2), repeat=n):
                edges = [e for e, k in zip(pairs, mult) for _ in range(k)]
                edges += [(v, v) for v in range(1, n + 1) if loops[v - 1]]
                keep(n, edges)
    return out


def random_multigraph(rng, max_n=7, max_m=12, loops=True):
    n = rng.randint(1, max_n)
    m = rng.randint(0, max_m)
    edges = []
    for _ in range(m):
        u = rng.randint(1, n)
        v = rng.randint(1, n) if loops else rng.choice([x for x in range(1, n + 1) if x != u] or [u])
        edges.append((u, v))
    return Multigraph(n, tuple(edges))


def random_digraph(rng, max_n=6, max_m=12):
    n = rng.randint(1, max_n)
    arcs = tuple((rng.randint(1, n), rng.randint(1, n)) for _ in range(rng.randint(0, max_m)))
    return Digraph(n, arcs)


@st.composite
def multigraphs(draw, max_n=6, max_m=9):
    n = draw(st.integers(1, max_n))
    vertex = st.integers(1, n)
    edges = draw(st.lists(st.tuples(vertex, vertex), max_size=max_m))
    return Multigraph(n, tuple(edges))


@st.composite
def digraphs(draw, max_n=5, max_m=9):
    n = draw(st.integers(1, max_n))
    vertex = st.integers(1, n)
    arcs = draw(st.lists(st.tuples(vertex, vertex), max_size=max_m))
    return Digraph(n, tuple(arcs))


@pytest.fixture
def rng():
    return random.Random(20240607)


FIXTURES = {
    "k3": "3\n1 2\n2 3\n1 3\n",
    "bond": "2\n1 2\n1 2\n",
    "loop": "1\n1 1\n",
    "c4_chord": "# a 4-cycle with one chord\n4\n1 2\n2 3\n3 4\n4 1\n1 3\n",
    "two_pieces": "5\n1 2\n2 3\n3 1\n4 5\n4 5\n",
    "isolated": "3\n1 2\n",
    "petersen": "10\n1 2\n2 3\n3 4\n4 5\n5 1\n1 6\n2 7\n3 8\n4 9\n5 10\n6 8\n8 10\n10 7\n7 9\n9 6\n",
    "weighted": "3\n1 2 2\n2 3 -1\n1 3 3\n1 1 1\n",
}


@pytest.fixture
def fixture_dir(tmp_path):
    for name, text in FIXTURES.items():
        (tmp_path / f"{name}.txt").write_text(text)
    return tmp_path
