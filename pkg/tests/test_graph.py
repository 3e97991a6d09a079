import pytest

from rdss.errors import FormatError
from rdss.graph import (Graph, complete_graph, cycle_graph, empty_graph, neighborhood, neighborhood_of_set,
                        parse_graph, pentagon, serialize_graph)

FIG1 = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)])


def test_parse_single_edge():
    G = parse_graph("p rdss 2 1 u\ne 0 1")
    assert G == Graph.from_edges(2, [(0, 1)])
    assert not G.directed


def test_parse_directed_triangle():
    G = parse_graph("p rdss 3 3 d\ne 0 1\ne 1 2\ne 2 0")
    assert G.directed and G.edges == {(0, 1), (1, 2), (2, 0)}


def test_parse_pentagon_round_trip():
    text = "# pentagon\np rdss 5 5 u\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n"
    G = parse_graph(text)
    assert G == pentagon()
    assert parse_graph(serialize_graph(G)) == G


@pytest.mark.parametrize("text,line", [
    ("p rdss 2 1 x\ne 0 1", 1),
    ("p rdss 2 1 u\ne 0 2", 2),
    ("p rdss 2 1 u\ne 1 1", 2),
    ("p rdss 3 2 u\ne 0 1\ne 1 0", 3),
    ("p rdss 2 1 u\nf 0 1", 2),
    ("p rdss 2 1 u\ne a 1", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(FormatError) as info:
        parse_graph(text)
    assert info.value.line == line


def test_parse_edge_count_mismatch():
    with pytest.raises(FormatError):
        parse_graph("p rdss 3 2 u\ne 0 1")
    with pytest.raises(FormatError):
        parse_graph("")


def test_isolated_vertex_warns():
    with pytest.warns(UserWarning):
        parse_graph("p rdss 3 1 u\ne 0 1")


def test_directed_pairs_are_distinct_arcs():
    G = parse_graph("p rdss 2 2 d\ne 0 1\ne 1 0")
    assert G.m == 2


def test_neighborhood_examples():
    assert neighborhood(FIG1, 2) == {0, 1, 3}
    assert neighborhood(empty_graph(3), 1) == frozenset()
    assert neighborhood(cycle_graph(3, directed=True), 0) == {1}


def test_neighborhood_of_set_examples():
    P = pentagon()
    assert neighborhood_of_set(P, {0, 2}) == {1, 3, 4}
    assert neighborhood_of_set(P, set()) == frozenset()
    assert neighborhood_of_set(P, range(5)) == frozenset()


def test_neighborhood_never_contains_vertex():
    for G in (FIG1, complete_graph(4), complete_graph(4, directed=True)):
        for v in range(G.n):
            assert v not in neighborhood(G, v)


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 1), (1, 0)])
