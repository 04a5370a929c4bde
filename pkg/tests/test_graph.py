import pytest
from hypothesis import given, strategies as st

from repgraph.errors import DisconnectedGraph, MalformedGraph, ParseError
from repgraph.fixtures import l22_graph, one_vertex_graph, three_loop_graph
from repgraph.graph import (Edge, PathWord, WeightedGraph, ghost, hat_graph, hat_universal_cover,
                            is_covering, is_immersion, is_reduced, length_vector, parse_letter,
                            real, universal_cover)


def test_weights_and_sinks():
    E = WeightedGraph(["u", "v"], [Edge("e", "u", "v", 2), Edge("f", "u", "u", 3)])
    assert E.vertex_weight("u") == 3
    assert E.vertex_weight("v") == 0
    assert E.is_sink("v")
    assert E.max_weight == 3
    assert not E.is_weight_one


def test_malformed_graphs():
    with pytest.raises(MalformedGraph):
        WeightedGraph(["u"], [Edge("e", "u", "w", 1)])
    with pytest.raises(MalformedGraph):
        WeightedGraph(["u"], [Edge("e", "u", "u", 0)])
    with pytest.raises(MalformedGraph):
        WeightedGraph(["u", "u"], [])


def test_hat_graph_two_weight_three_loops():
    E = one_vertex_graph({"e": 3, "f": 3})
    H = hat_graph(E)
    assert len(H.edges) == 6
    assert [e.id for e in H.edges] == ["e[1]", "e[2]", "e[3]", "f[1]", "f[2]", "f[3]"]
    assert H.is_weight_one


@pytest.mark.parametrize("n,k", [(1, 0), (2, 1), (2, 3), (3, 2)])
def test_hat_graph_counts_for_leavitt_graphs(n, k):
    # n+k loops of weight n
    E = one_vertex_graph({f"e{j}": n for j in range(n + k)})
    assert len(hat_graph(E).edges) == n * (n + k)


def test_letters_order_real_before_ghost():
    E = l22_graph()
    assert [str(x) for x in E.letters] == ["e[1]", "e[1]*", "e[2]", "e[2]*",
                                           "f[1]", "f[1]*", "f[2]", "f[2]*"]


def test_parse_letter():
    assert parse_letter("e[2]*") == ghost("e", 2)
    assert parse_letter(" f [1] ") == real("f", 1)
    with pytest.raises(ParseError):
        parse_letter("e2")


def test_is_reduced():
    E = l22_graph()
    assert is_reduced(E.parse_word("e[1] f[2]*"))
    assert not is_reduced(E.parse_word("e[1] e[1]*"))
    assert not is_reduced(E.parse_word("f[2]* f[2]"))
    assert is_reduced(E.parse_word("e[1] e[2]*"))
    assert is_reduced(PathWord("v"))


def test_length_vector_example():
    E = l22_graph()
    assert tuple(length_vector(E.parse_word("e[1] f[2]"), 2)) == (1, 1)
    assert tuple(length_vector(E.parse_word("e[1] f[2]*"), 2)) == (1, -1)


letters22 = st.lists(st.sampled_from(l22_graph().letters), max_size=8)


@given(letters22, letters22)
def test_length_vector_is_additive(a, b):
    E = l22_graph()
    p, q = E.word("v", a), E.word("v", b)
    assert length_vector(p.concat(q), 2) == length_vector(p, 2) + length_vector(q, 2)


@given(letters22)
def test_length_vector_negates_under_reversal(a):
    p = l22_graph().word("v", a)
    assert length_vector(p.reversed(), 2) == -length_vector(p, 2)


def test_word_composability():
    E = WeightedGraph(["u", "v"], [Edge("e", "u", "v", 1)])
    assert E.parse_word("e[1] e[1]*").target == "u"
    with pytest.raises(ParseError):
        E.parse_word("e[1] e[1]")


def _is_tree(G):
    return len(G.edges) == len(G.vertices) - 1 and G.is_connected()


def test_cover_of_hat_graph_three_weight_three_loops():
    E = one_vertex_graph({"e": 3, "f": 3, "g": 3})
    T = hat_universal_cover(E, "v", 1)
    assert len(T.graph.vertices) - 1 == 18


def test_cover_of_hat_graph_l22_depth_two():
    T = hat_universal_cover(l22_graph(), "v", 2)
    assert len(T.graph.vertices) == 65
    assert _is_tree(T.graph)


def test_cover_of_e_differs_from_cover_of_hat():
    # E itself has 2 loops, so 1 + 4 + 12 words
    T = universal_cover(l22_graph(), "v", 2)
    assert len(T.graph.vertices) == 17


def test_cover_tree_projection():
    E = WeightedGraph(["u", "v"], [Edge("e", "u", "v", 1), Edge("f", "v", "u", 2),
                                   Edge("g", "v", "v", 1)])
    T = universal_cover(E, "u", 4)
    assert _is_tree(T.graph)
    assert is_immersion(T.graph, E, T.vertex_map, T.edge_map)
    assert is_covering(T.graph, E, T.vertex_map, T.edge_map, partial=T.frontier)
    assert not is_covering(T.graph, E, T.vertex_map, T.edge_map)


def test_cover_depth_zero():
    T = universal_cover(l22_graph(), "v", 0)
    assert T.graph.vertices == ("v",)
    assert T.frontier == {"v"}


def test_cover_of_disconnected_graph():
    E = WeightedGraph(["u", "v"], [])
    with pytest.raises(DisconnectedGraph):
        universal_cover(E, "u", 1)


def test_covering_of_two_cycle_onto_loop():
    C2 = WeightedGraph(["a", "b"], [Edge("x", "a", "b", 1), Edge("y", "b", "a", 1)])
    L = WeightedGraph(["v"], [Edge("e", "v", "v", 1)])
    assert is_covering(C2, L, {"a": "v", "b": "v"}, {"x": "e", "y": "e"})
    L2 = one_vertex_graph({"e": 1, "f": 1})
    assert not is_covering(C2, L2, {"a": "v", "b": "v"}, {"x": "e", "y": "e"})
    assert is_immersion(C2, L2, {"a": "v", "b": "v"}, {"x": "e", "y": "f"})


def test_three_loop_graph_is_weight_one():
    assert three_loop_graph().is_weight_one
