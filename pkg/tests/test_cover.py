import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import digraphs
from graphpoly.cover import CoverTable, count_walks, cover_evaluate, cover_table, spanning_paths_cycles
from graphpoly.graph import Digraph
from graphpoly.oracles import cover_bruteforce

P = 1_000_003
TWO_CYCLE = Digraph(2, ((1, 2), (2, 1)))


def test_count_walks_examples():
    assert count_walks(TWO_CYCLE, 0b11, 1, 1, 0) == 1
    assert count_walks(TWO_CYCLE, 0b11, 1, 1, 2) == 1
    assert count_walks(TWO_CYCLE, 0b11, 1, 2, 2) == 0
    assert count_walks(TWO_CYCLE, 0b01, 1, 2, 1) == 0
    D = Digraph(2, ((1, 2), (1, 2), (2, 2)))
    assert count_walks(D, 0b11, 1, 2, 3) == 2
    assert count_walks(D, 0b11, 1, 2, 3, p=2) == 0


def _hamiltonian(D, X):
    """Brute-force spanning path and cycle counts of D[X], arc multiplicities included."""
    A = D.adjacency_matrix()
    verts = [v for v in range(D.n) if X >> v & 1]
    if not verts:
        return 0, 0
    paths = 0
    for order in itertools.permutations(verts):
        term = 1
        for a, b in zip(order, order[1:]):
            term *= A[a][b]
        paths += term
    cycles = 0
    first = verts[0]
    for rest in itertools.permutations(verts[1:]):
        order = (first,) + rest
        term = 1
        for a, b in zip(order, order[1:] + (first,)):
            term *= A[a][b]
        cycles += term
    if len(verts) == 1:
        paths = 1
    return paths, cycles


def test_spanning_examples():
    paths, cycles = spanning_paths_cycles(Digraph(1, ((1, 1),)), P)
    assert paths.tolist() == [0, 1] and cycles.tolist() == [0, 1]
    paths, cycles = spanning_paths_cycles(TWO_CYCLE, P)
    assert paths[3] == 2 and cycles[3] == 1
    paths, cycles = spanning_paths_cycles(Digraph(2, ()), P)
    assert paths[3] == 0 and cycles[3] == 0


def test_cycle_count_with_loop_above_minimum():
    # rooting closed walks anywhere but at min X miscounts this set
    D = Digraph(2, ((1, 2), (2, 2)))
    paths, cycles = spanning_paths_cycles(D, P)
    assert cycles[0b11] == 0
    assert cycles[0b10] == 1


@given(digraphs(max_n=5, max_m=9))
@settings(max_examples=60, deadline=None)
def test_spanning_counts_against_permutations(D):
    paths, cycles = spanning_paths_cycles(D, P)
    for X in range(1, 1 << D.n):
        assert (paths[X], cycles[X]) == _hamiltonian(D, X)


def test_cover_examples():
    assert cover_table(Digraph(1, ())).items() == [(1, 0, 1)]
    assert cover_table(Digraph(1, ((1, 1),))).items() == [(0, 1, 1), (1, 0, 1)]
    t = cover_table(TWO_CYCLE)
    assert t.items() == [(0, 1, 1), (1, 0, 2), (2, 0, 1)]
    assert cover_table(TWO_CYCLE, "polyspace") == t


def test_cover_mode_validation():
    with pytest.raises(ValueError):
        cover_table(TWO_CYCLE, "bogus")


@given(digraphs(max_n=5, max_m=9))
@settings(max_examples=60, deadline=None)
def test_modes_match_enumeration(D):
    want = {k: v for k, v in cover_bruteforce(D).items() if v}
    fast = cover_table(D)
    assert fast.coeffs == want
    assert cover_table(D, "polyspace") == fast
    assert all(i + j <= D.n for i, j, _ in fast.items())
    assert sum(fast.coeffs.values()) <= 1 << D.m


def test_parallel_arcs_count_with_multiplicity():
    D = Digraph(2, ((1, 2), (1, 2), (2, 1)))
    assert cover_table(D).coeffs == cover_bruteforce(D) == {(2, 0): 1, (1, 0): 3, (0, 1): 2}


def test_threads_do_not_change_result():
    D = Digraph(6, tuple((u, v) for u in range(1, 7) for v in range(1, 7) if (u * v) % 4 != 1))
    assert cover_table(D, threads=3) == cover_table(D)


def test_cover_evaluate_examples():
    t = cover_table(TWO_CYCLE)
    assert cover_evaluate(t, 1, 1) == 3
    assert cover_evaluate(cover_table(Digraph(1, ((1, 1),))), 2, 3) == 5
    assert cover_evaluate(t, 0, Fraction(7, 2)) == Fraction(7, 2)
    # x**2 + x + y in the ordinary basis
    assert cover_evaluate(t, Fraction(1, 3), 5) == Fraction(1, 9) + Fraction(1, 3) + 5


def test_relabelling_invariance():
    D = Digraph(5, ((1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3), (2, 2), (5, 1)))
    t = cover_table(D)
    for perm in itertools.islice(itertools.permutations(range(1, 6)), 0, 120, 13):
        assert cover_table(D.relabel(list(perm))) == t
    assert isinstance(t, CoverTable)
