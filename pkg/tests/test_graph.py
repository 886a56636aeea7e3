import itertools

import pytest
from hypothesis import given, settings

from conftest import multigraphs
from graphpoly.errors import CapacityError, GraphFormatError
from graphpoly.graph import (
    Digraph,
    Multigraph,
    complete_graph,
    component_masks,
    connected_components,
    count_connected_sets,
    cycle_graph,
    format_graph,
    induced_edge_count,
    induced_edge_table,
    is_connected_mask,
    mask_of,
    parse_graph,
    path_graph,
    petersen_graph,
    spanning_tree_count,
    vertices_of,
)


def test_parse_basic_with_comments_and_crlf():
    G = parse_graph("# triangle\r\n3\r\n\r\n1 2\r\n# mid comment\r\n2 3\r\n1 3\r\n")
    assert G.n == 3
    assert G.edges == ((1, 2), (2, 3), (1, 3))
    assert G.weights is None


def test_parse_keeps_loops_and_parallel_edges():
    G = parse_graph("2\n1 2\n1 2\n2 2\n")
    assert G.m == 3
    assert G.multiplicity()[0][1] == 2


def test_parse_weights():
    G = parse_graph("2\n1 2 5\n2 2 -3\n")
    assert G.weights == (5, -3)


def test_parse_directed():
    D = parse_graph("2\n1 2\n2 1\n1 1\n", directed=True)
    assert isinstance(D, Digraph)
    assert D.adjacency_matrix() == [[1, 1], [1, 0]]


@pytest.mark.parametrize(
    "text, line",
    [
        ("3\n1 4\n", 2),
        ("3\n1 x\n", 2),
        ("3\n1\n", 2),
        ("3 4\n", 1),
        ("0\n", 1),
        ("2\n1 2 3\n1 2\n", None),
        ("# only a comment\n", None),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert info.value.line == line
    if line is not None:
        assert str(info.value).startswith(f"line {line}:")


def test_capacity():
    with pytest.raises(CapacityError):
        parse_graph("33\n1 2\n")
    assert parse_graph("32\n1 32\n").n == 32


def test_format_round_trip():
    for text in ["3\n1 2\n2 3\n3 3\n", "2\n1 2 4\n2 1 -1\n"]:
        assert format_graph(parse_graph(text)) == text


def test_masks():
    assert mask_of([1, 3]) == 0b101
    assert vertices_of(0b1010) == [2, 4]


def test_components_sorted_by_lowest_vertex():
    G = Multigraph(6, ((5, 6), (1, 3), (2, 2)))
    assert connected_components(G) == [0b000101, 0b000010, 0b001000, 0b110000]


def test_component_masks_of_subset():
    G = path_graph(5)
    assert component_masks(G.adjacency, 0b11011) == [0b00011, 0b11000]
    assert is_connected_mask(G.adjacency, 0b00111)
    assert not is_connected_mask(G.adjacency, 0b00101)


def test_induced_edge_count_examples():
    G = Multigraph(3, ((1, 2), (1, 2), (2, 2), (2, 3)))
    assert induced_edge_count(G, 0b011) == 3
    assert induced_edge_count(G, 0b010) == 1
    assert induced_edge_count(G, 0b101) == 0
    assert induced_edge_count(G, 0) == 0


@given(multigraphs(max_n=6, max_m=10))
@settings(max_examples=60, deadline=None)
def test_induced_edge_table_matches_direct_count(G):
    table = induced_edge_table(G)
    for X in range(1 << G.n):
        assert table[X] == induced_edge_count(G, X)


def test_spanning_tree_counts():
    # Cayley's formula n**(n-2)
    for n in range(1, 9):
        assert spanning_tree_count(complete_graph(n)) == n ** max(n - 2, 0)
    assert spanning_tree_count(cycle_graph(7)) == 7
    assert spanning_tree_count(petersen_graph()) == 2000
    assert spanning_tree_count(Multigraph(2, ((1, 2), (1, 2), (1, 1)))) == 2
    assert spanning_tree_count(Multigraph(3, ((1, 2),))) == 0


def _brute_tau(G):
    from graphpoly.oracles import components_of_edges

    return sum(
        1 for F in itertools.combinations(G.edges, G.n - 1) if components_of_edges(G.n, F) == 1
    )


@given(multigraphs(max_n=5, max_m=8))
@settings(max_examples=60, deadline=None)
def test_spanning_tree_count_matches_enumeration(G):
    assert spanning_tree_count(G) == _brute_tau(G)


def _brute_sigma(G):
    return sum(1 for X in range(1, 1 << G.n) if is_connected_mask(G.adjacency, X))


def test_connected_sets_examples():
    assert count_connected_sets(complete_graph(5)) == 31
    # paths: one connected set per interval
    assert count_connected_sets(path_graph(6)) == 21
    assert count_connected_sets(Multigraph(3, ())) == 3


@given(multigraphs(max_n=7, max_m=10))
@settings(max_examples=60, deadline=None)
def test_connected_sets_match_enumeration(G):
    assert count_connected_sets(G) == _brute_sigma(G)


def test_induced_relabels_in_order():
    G = Multigraph(4, ((1, 3), (3, 4), (2, 4)), (7, 8, 9))
    H = G.induced(0b1101)
    assert H.n == 3
    assert H.edges == ((1, 2), (2, 3))
    assert H.weights == (7, 8)


def test_relabel_preserves_tau():
    G = Multigraph(4, ((1, 2), (2, 3), (3, 4), (4, 1), (1, 3)))
    assert spanning_tree_count(G.relabel([3, 1, 4, 2])) == spanning_tree_count(G) == 8
