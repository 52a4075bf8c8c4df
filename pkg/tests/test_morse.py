from itertools import product

import networkx as nx
import pytest

from graphbraid.catalog import complete_bipartite, complete_graph, cycle_with_whisker, figure1_tree, star, y_graph
from graphbraid.cubes import Cell, closure, cubical_complex, enumerate_cells
from graphbraid.layout import build_layout, prepare
from graphbraid.morse import (
    ActionError,
    Kind,
    classify,
    classify_from_definition,
    commutation_probe,
    critical_cell_list,
    critical_cells,
    generators,
    is_blocked,
    is_order_respecting,
    morse_complex,
    sg_action,
    vector_field,
)


@pytest.fixture(scope="module")
def fig1():
    return build_layout(figure1_tree())


def cell(t, verts, edges):
    return Cell(tuple(sorted(verts)), tuple(sorted(t.edge_between(a, b) for a, b in edges)))


def test_classification_examples(fig1):
    assert classify(fig1, cell(fig1, [0, 5], [(4, 7)])).kind is Kind.CRITICAL
    assert classify(fig1, cell(fig1, [0, 1], [(9, 10)])).kind is Kind.COLLAPSIBLE
    red = classify(fig1, cell(fig1, [1, 5], [(4, 7)]))
    assert red.kind is Kind.REDUNDANT and red.vertex == 1


def test_order_respecting_examples(fig1):
    c = cell(fig1, [0, 1], [(9, 10)])
    assert is_order_respecting(fig1, c, fig1.edge_between(9, 10))
    c = cell(fig1, [0, 5], [(4, 7)])
    assert not is_order_respecting(fig1, c, fig1.edge_between(4, 7))


def test_deleted_edges_never_order_respecting():
    t = prepare(complete_graph(4), 2)
    for c in enumerate_cells(t, 2, 1):
        for e in c.edges:
            if not t.in_tree[e]:
                assert not is_order_respecting(t, c, e)


def test_blocked_examples():
    t = build_layout(y_graph())
    center = t.label[0]
    e = t.ends[center][2]
    w = t.iota[t.ends[center][1]]  # leg vertex next to the centre
    c = Cell((w,), (e,))
    assert is_blocked(t, c, w)
    assert is_blocked(t, Cell((0, w), ()), 0)
    far = max(range(t.num_vertices))
    assert not is_blocked(t, Cell((far,), ()), far)


def test_vector_field_example(fig1):
    assert vector_field(fig1, Cell((0, 1, 10), ())) == cell(fig1, [0, 1], [(9, 10)])
    assert vector_field(fig1, cell(fig1, [0, 5], [(4, 7)])) is None
    assert vector_field(fig1, cell(fig1, [0, 1], [(9, 10)])) is None


GRAPHS = [
    ("y", y_graph(), 3),
    ("figure1", figure1_tree(), 3),
    ("star4", star(4, 2), 3),
    ("k4", complete_graph(4), 3),
    ("k33", complete_bipartite(3, 3), 2),
    ("whisker", cycle_with_whisker(), 3),
]


@pytest.mark.parametrize("name, g, n", GRAPHS, ids=[x[0] for x in GRAPHS])
def test_classification_matches_definition(name, g, n):
    t = prepare(g, n)
    memo = {}
    for i in range(n + 1):
        for c in enumerate_cells(t, n, i):
            assert classify(t, c).kind is classify_from_definition(t, c, memo)


@pytest.mark.parametrize("name, g, n", GRAPHS, ids=[x[0] for x in GRAPHS])
def test_vector_field_is_a_matching(name, g, n):
    t = prepare(g, n)
    for i in range(n):
        images = {}
        for c in enumerate_cells(t, n, i):
            up = vector_field(t, c)
            if up is None:
                continue
            assert up not in images, "V must be injective"
            images[up] = c
            assert classify(t, up).kind is Kind.COLLAPSIBLE
            # c is a face of V(c) with coefficient +-1
            from graphbraid.cubes import faces

            assert abs(faces(t, up)[c]) == 1
        ups = {c for c in enumerate_cells(t, n, i + 1) if classify(t, c).kind is Kind.COLLAPSIBLE}
        assert ups == set(images)


def test_enumerators_agree_on_trees():
    for g in (y_graph(), figure1_tree(), star(4, 2), star(5, 1)):
        for n in range(0, 6):
            t = prepare(g, n)
            for i in range(0, 3):
                ex = critical_cell_list(t, n, i, "exhaustive")
                assert critical_cell_list(t, n, i, "brute") == ex
                assert critical_cell_list(t, n, i, "direct") == ex


def test_enumerators_agree_on_graphs():
    for g in (complete_graph(4), complete_bipartite(3, 3), cycle_with_whisker()):
        for n in range(0, 4):
            t = prepare(g, n)
            for i in range(0, n + 1):
                assert critical_cell_list(t, n, i, "brute") == critical_cell_list(t, n, i, "exhaustive")


def test_direct_requires_tree():
    t = prepare(complete_graph(4), 2)
    with pytest.raises(ValueError):
        critical_cell_list(t, 2, 1, "direct")


def test_critical_counts_examples(fig1):
    y = build_layout(y_graph())
    assert len(critical_cell_list(y, 2, 1, "exhaustive")) == 1
    assert len(critical_cell_list(fig1, 3, 1)) == 6
    assert len(critical_cell_list(fig1, 2, 2)) == 0


def test_critical_cell_metadata():
    for g, n in ((figure1_tree(), 5), (star(5, 2), 4), (complete_graph(5), 2)):
        t = prepare(g, n)
        for i in range(1, 3):
            for cc in critical_cells(t, n, i):
                for info in cc.edges:
                    assert info.deleted or t.degree[info.tau] >= 3
                    if not info.deleted:
                        assert info.witnesses, "a tree edge of a critical cell needs a witness"
                        assert info.direction >= 2


def _component_counts(t, c):
    """Vertex counts per component of T minus the edge closures of ``c``."""
    occ = closure(t, c.edges)
    h = nx.Graph()
    h.add_nodes_from(v for v in range(t.num_vertices) if v not in occ)
    h.add_edges_from((v, t.parent[v]) for v in range(1, t.num_vertices) if v not in occ and t.parent[v] not in occ)
    comps = sorted(nx.connected_components(h), key=min)
    return tuple(len(comp & set(c.vertices)) for comp in comps)


def test_critical_cells_determined_by_edges_and_counts():
    for g, n in ((figure1_tree(), 6), (star(4, 2), 5), (complete_graph(4), 3)):
        t = prepare(g, n)
        for i in range(1, 3):
            seen = {}
            for c in critical_cell_list(t, n, i):
                key = (c.edges, _component_counts(t, c))
                assert key not in seen
                seen[key] = c


def test_squarefree_witnesses():
    for g, n in ((figure1_tree(), 6), (star(5, 2), 5)):
        t = prepare(g, n)
        for i in range(1, 3):
            for cc in critical_cells(t, n, i):
                houses = [t.essential_edge_of[w] for info in cc.edges for w in set(info.witnesses)]
                per_edge = [{t.essential_edge_of[w] for w in info.witnesses} for info in cc.edges]
                for a in range(len(per_edge)):
                    for b in range(a + 1, len(per_edge)):
                        assert not (per_edge[a] & per_edge[b])
                assert houses  # at least one witness somewhere


def test_morse_trivial_on_trees():
    for g in (y_graph(), figure1_tree(), star(4, 2)):
        for n in range(1, 5):
            mc = morse_complex(prepare(g, n), n)
            assert mc.is_trivial()


def test_morse_one_point():
    for g in (complete_graph(5), cycle_with_whisker(), figure1_tree()):
        t = prepare(g, 1)
        h = morse_complex(t, 1).homology()
        assert str(h[0]) == "Z"


def test_morse_equals_cubical_k5():
    t = prepare(complete_graph(5), 2)
    a = [str(h) for h in morse_complex(t, 2).homology()]
    b = [str(h) for h in cubical_complex(t, 2).homology()]
    assert a == b == ["Z", "Z^6 + Z/2", "0"]


def test_morse_differential_squares_to_zero():
    for g, n in ((complete_graph(5), 2), (complete_bipartite(3, 3), 2), (cycle_with_whisker(), 3), (complete_graph(4), 3)):
        mc = morse_complex(prepare(g, n), n)
        for i in range(2, len(mc.differential)):
            assert (mc.differential[i - 1] @ mc.differential[i]).is_zero()


# -- action -------------------------------------------------------------------


def test_action_y_example():
    t = prepare(y_graph(), 3)
    (c2,) = critical_cells(t, 2, 1)
    center = t.essential_labels()[0]
    leg1 = t.essential_edge_of[t.iota[t.ends[center][1]]]
    up = sg_action(t, c2, leg1)
    assert up.degree == 3
    assert up.cell in critical_cell_list(t, 3, 1)
    # only the vertex next to the centre is a witness; the pile behind it has two
    assert len(up.edges[0].witnesses) == 1
    assert len(up.edges[0].branch_vertices) == 2
    assert len(critical_cell_list(t, 3, 1)) == 3


def test_action_between_essential_vertices(fig1):
    t = prepare(figure1_tree(), 4)
    e47 = t.edge_between(t.label[4], t.label[7])
    v5 = t.label[5]
    c = Cell(tuple(sorted((0, v5))), (e47,))
    assert classify(t, c).kind is Kind.CRITICAL
    ee = t.essential_edge_of[t.label[6]]
    up = sg_action(t, c, ee)
    assert up.cell.edges == c.edges
    (added,) = set(up.cell.vertices) - set(c.vertices)
    # the pile {v5} in the upper branch grows by the next vertex towards v6
    assert t.parent[added] == v5
    assert t.essential_edge_of[added] == ee


def test_action_root_side():
    t = prepare(figure1_tree(), 4)
    for c in critical_cell_list(t, 3, 1):
        up = sg_action(t, c, t.essential_edge_of[0])
        added = (set(up.cell.vertices) - set(c.vertices)).pop()
        root_pile = [v for v in c.vertices if v < t.label[2]]
        assert added == len(root_pile)


def test_action_grading_and_edges():
    t = prepare(star(4, 2), 6)
    for n in range(2, 6):
        for c in critical_cells(t, n, 1):
            for ee in range(t.num_essential_edges):
                up = sg_action(t, c, ee)
                assert up.degree == n + 1
                assert up.cell.edges == c.cell.edges


def test_action_saturated():
    t = build_layout(figure1_tree())  # sufficient for n = 3 only
    c = critical_cell_list(t, 3, 1)[0]
    with pytest.raises(ActionError, match="insufficient subdivision for action"):
        sg_action(t, c, 0)


def test_generators():
    y = prepare(y_graph(), 3)
    gens = generators(y, 1)
    assert [g.cell.degree for g in gens] == [2]
    t = prepare(figure1_tree(), 5)
    gens = generators(t, 2)
    assert all(g.cell.degree <= 4 for g in gens)
    assert sum(g.cell.degree == 4 for g in gens) == 1
    (g0,) = generators(t, 0)
    assert g0.cell.cell == Cell((), ()) and g0.minimal


def test_generators_complete():
    for g in (figure1_tree(), star(4, 2), complete_graph(4)):
        t = prepare(g, 5)
        for i in range(0, 3):
            for n in range(2 * i + 1, 6):
                image = set()
                for c in critical_cell_list(t, n - 1, i):
                    for ee in range(t.num_essential_edges):
                        try:
                            image.add(sg_action(t, c, ee).cell)
                        except ActionError:
                            pass
                assert set(critical_cell_list(t, n, i)) <= image


def test_probe_tree_and_empty():
    t = prepare(figure1_tree(), 6)
    rep = commutation_probe(t, 1, 5)
    assert rep.checked > 0 and not rep.mismatches
    assert commutation_probe(t, 2, 3).checked == 0


def test_probe_whisker_runs():
    t = prepare(cycle_with_whisker(), 4)
    rep = commutation_probe(t, 1, 3)
    d = rep.to_dict()
    assert d["i"] == 1 and d["checked"] + d["skipped"] > 0
