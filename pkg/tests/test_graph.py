import networkx as nx
import pytest

from graphbraid.catalog import complete_graph, figure1_tree, path_graph, star, y_graph
from graphbraid.graph import (
    Graph,
    GraphError,
    GraphParseError,
    delta,
    essential_structure,
    format_graph,
    parse_graph,
    smooth_degree_two,
    subdivide_for,
    subdivision_violations,
    topological_components,
)


def to_nx(g: Graph) -> nx.MultiGraph:
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.num_vertices))
    h.add_edges_from(g.edges)
    return h


def test_essential_structure_figure1():
    s = essential_structure(figure1_tree())
    assert s.essential_vertices == (2, 4)
    assert len(s.essential_edges) == 5
    assert s.degree_sequence == (3, 3)


def test_essential_structure_small_cases():
    assert essential_structure(path_graph(1)).essential_edges == ()
    s = essential_structure(star(5))
    assert s.essential_vertices == (0,)
    assert len(s.essential_edges) == 5


def test_disconnected_rejected():
    g = Graph.from_edges([(0, 1), (2, 3)])
    with pytest.raises(GraphError, match="graph not connected"):
        essential_structure(g)


def test_delta_figure1():
    g = figure1_tree()
    assert delta(g, 0) == 1
    assert delta(g, 1) == 3
    assert delta(g, 2) == 5
    assert delta(g, 3) == 0


def test_delta_counts_loose_half_edges():
    # Removing both ends of an edge still leaves the open edge behind.
    g = Graph.from_edges([(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (0, 1)])
    comps = topological_components(g, [0, 1])
    assert len(comps) == 6


def test_delta_matches_networkx_on_k5():
    g = subdivide_for(complete_graph(5), 2)
    # oracle: delete the vertex, then count components of the line graph-like model
    for v in range(5):
        h = to_nx(g)
        h.remove_node(v)
        assert len(topological_components(g, [v])) == nx.number_connected_components(h)


def test_subdivide_figure1_unchanged_for_three():
    g = figure1_tree()
    assert subdivide_for(g, 3) == g


def test_subdivide_single_edge():
    h = subdivide_for(path_graph(1), 3)
    assert h.num_edges >= 2
    assert not subdivision_violations(h, 3)


def test_subdivide_k5():
    h = subdivide_for(complete_graph(5), 2)
    assert not subdivision_violations(h, 2)
    # every original edge joined two essential vertices, so each was split
    assert h.num_edges == 20
    assert nx.girth(nx.Graph(to_nx(h))) >= 3


def test_subdivide_preserves_essential_structure():
    g = figure1_tree()
    for n in range(1, 7):
        s0, s1 = essential_structure(g), essential_structure(subdivide_for(g, n))
        assert s0.essential_vertices == s1.essential_vertices
        assert len(s0.essential_edges) == len(s1.essential_edges)


def test_smooth():
    # two essential vertices and four leaves (the drawn tree has leaves 0, 6, 8, 10)
    s = smooth_degree_two(figure1_tree())
    assert s.num_vertices == 6
    assert sorted(s.degree(v) for v in range(6)) == [1, 1, 1, 1, 3, 3]
    assert smooth_degree_two(path_graph(2)).num_edges == 1
    assert smooth_degree_two(y_graph()).num_edges == 3


def test_smooth_circle_rejected():
    with pytest.raises(GraphError, match="circle has no smoothing base"):
        smooth_degree_two(Graph.from_edges([(0, 1), (1, 2), (2, 0)]))


def test_smooth_subdivide_smooth_isomorphic():
    for g in (figure1_tree(), complete_graph(5), y_graph()):
        a = smooth_degree_two(g)
        b = smooth_degree_two(subdivide_for(smooth_degree_two(g), 4))
        assert nx.is_isomorphic(to_nx(a), to_nx(b))


def test_parse_round_trip():
    g = figure1_tree()
    h = parse_graph(format_graph(g))
    assert format_graph(h) == format_graph(g)
    assert sorted(h.edges) == sorted(g.edges)
    assert all(h.neighbors(v) == g.neighbors(v) for v in range(g.num_vertices))


def test_parse_loops_and_multi_edges():
    g = parse_graph("root 1\nadj 0: 1 0 0 1\nadj 1: 0 0\n")
    assert g.num_edges == 3
    assert g.degree(0) == 4
    assert g.edges.count((0, 0)) == 1


@pytest.mark.parametrize(
    "text, where",
    [
        ("adj 0: 1\nadj 1:\n", "line 1"),
        ("adj 0: 1\nbogus\n", "line 2"),
        ("adj 0: 0\n", "line 1"),
        ("adj 0: 2\nadj 2: 0\n", "dense"),
        ("root 9\nadj 0: 1\nadj 1: 0\n", "root 9"),
    ],
)
def test_parse_errors(text, where):
    with pytest.raises(GraphParseError, match=where):
        parse_graph(text)
