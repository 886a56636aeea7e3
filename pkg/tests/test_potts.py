import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import multigraphs, random_multigraph
from graphpoly.errors import ConsistencyError
from graphpoly.graph import Multigraph, complete_graph, connected_components, cycle_graph
from graphpoly.induced import InducedProduct
from graphpoly.oracles import potts_bruteforce, potts_edge_subsets, z_bruteforce
from graphpoly.potts import (
    PottsInstance,
    Strategy,
    ZCoefficients,
    potts_node_values,
    potts_value,
    z_coefficient_table,
)

P = 1_000_003
ALL = ["dense", "polyspace", "split:0", "split:1", "split:2", "split:9", "connected", "recursion"]


def test_strategy_parsing():
    assert Strategy.parse("polyspace") == Strategy("direct")
    assert Strategy.parse("split:3") == Strategy("split", 3)
    assert str(Strategy.parse("split:3")) == "split:3"
    assert Strategy("split", 9).split_size(4) == 4
    for bad in ["quantum", "split"]:
        with pytest.raises(ValueError):
            Strategy.parse(bad)


def test_instance_needs_large_prime():
    with pytest.raises(ValueError):
        PottsInstance(complete_graph(4), 7, 1)


@pytest.mark.parametrize("algorithm", ALL)
def test_known_tables(algorithm):
    assert z_coefficient_table(complete_graph(3), algorithm).a == [
        [0, 0, 0, 0],
        [0, 0, 3, 1],
        [0, 3, 0, 0],
        [1, 0, 0, 0],
    ]
    bond = Multigraph(2, ((1, 2), (1, 2)))
    assert z_coefficient_table(bond, algorithm).a == [[0, 0, 0], [0, 2, 1], [1, 0, 0]]
    loop = Multigraph(1, ((1, 1),))
    assert z_coefficient_table(loop, algorithm).a == [[0, 0], [1, 1]]


def test_rejects_disconnected():
    with pytest.raises(ValueError):
        z_coefficient_table(Multigraph(3, ((1, 2),)))


def test_coefficient_checks():
    good = ZCoefficients(2, 1, [[0, 0], [0, 1], [1, 0]])
    good.check()
    for bad in (
        [[0, 0], [0, 2], [1, 0]],
        [[1, 0], [0, 1], [0, 0]],
        [[0, 0], [1, 0], [0, 1]],
        [[0, 0], [-1, 3], [0, 0]],
    ):
        with pytest.raises(ConsistencyError):
            ZCoefficients(2, 1, bad).check()


@given(multigraphs(max_n=5, max_m=8))
@settings(max_examples=40, deadline=None)
def test_table_matches_edge_subset_enumeration(G):
    if len(connected_components(G)) != 1:
        return
    want = z_bruteforce(G)
    for algorithm in ("dense", "split:1", "connected", "recursion"):
        assert z_coefficient_table(G, algorithm).a == want


@pytest.mark.parametrize("algorithm", ALL)
def test_potts_value_matches_spin_sum(algorithm):
    rng = random.Random(11)
    for _ in range(15):
        G = random_multigraph(rng, max_n=5, max_m=7)
        w = rng.randrange(0, 5)
        inst = PottsInstance(G, P, w, Strategy.parse(algorithm))
        for q in range(1, min(G.n + 1, 3) + 1):
            assert potts_value(inst, q) == potts_bruteforce(G, q, w, P)


def test_potts_value_beyond_nodes():
    G = cycle_graph(3)
    inst = PottsInstance(G, P, 1)
    for q in (5, 9):
        assert potts_value(inst, q) == potts_edge_subsets(G, q, 1) % P
    with pytest.raises(ValueError):
        potts_value(inst, 0)


def test_per_edge_weights():
    rng = random.Random(2)
    for _ in range(20):
        G = random_multigraph(rng, max_n=5, max_m=7)
        weights = [rng.randint(-3, 3) for _ in range(G.m)]
        f = InducedProduct(G, np.array([[(1 + r) % P] for r in weights]).reshape(G.m, 1), P)
        vals = potts_node_values(G, f, Strategy("dense"))
        for q in range(1, G.n + 2):
            want = potts_edge_subsets(G, q, weights) % P
            assert vals[q - 1, 0] == want
            if q <= 3:
                assert potts_bruteforce(G, q, weights, P) == want


@given(multigraphs(max_n=5, max_m=8), st.lists(st.integers(0, P - 1), min_size=1, max_size=4))
@settings(max_examples=40, deadline=None)
def test_batched_strategies_agree(G, ws):
    f = InducedProduct.uniform(G, ws, P)
    ref = potts_node_values(G, f, Strategy("dense"))
    assert ref.shape == (G.n + 1, len(ws))
    for strategy in (Strategy("direct"), Strategy("split", 2), Strategy("connected"), Strategy("recursion")):
        assert (potts_node_values(G, f, strategy) == ref).all()


def test_induced_product_uniform_matches_generic():
    rng = random.Random(5)
    for _ in range(20):
        G = random_multigraph(rng, max_n=6, max_m=10)
        ws = [0, 3, P - 1]
        uni = InducedProduct.uniform(G, ws, P)
        gen = InducedProduct(G, np.tile([(1 + w) % P for w in ws], (G.m, 1)), P)
        assert (uni.table() == gen.table()).all()
        masks = np.arange(1 << G.n)
        assert (uni(masks) == gen(masks)).all()
