from math import comb

import pytest

from graphbraid.catalog import complete_graph, figure1_tree, y_graph
from graphbraid.cubes import (
    Cell,
    SubdivisionError,
    boundary_matrix,
    count_cells,
    cubical_complex,
    enumerate_cells,
    faces,
    is_valid_cell,
)
from graphbraid.layout import build_layout, prepare


@pytest.fixture(scope="module")
def y():
    return build_layout(y_graph())


def test_y_cell_counts(y):
    assert y.num_vertices == 7
    assert len(enumerate_cells(y, 2, 0)) == 21
    assert len(enumerate_cells(y, 2, 1)) == 30
    assert count_cells(y, 2, 1) == 30


def test_one_point_one_cells_are_edges(y):
    assert len(enumerate_cells(y, 1, 1)) == y.num_edges


def test_cells_valid_unique_and_sorted(y):
    for i in range(3):
        cells = enumerate_cells(y, 3, i)
        assert len(set(cells)) == len(cells)
        assert cells == sorted(cells, key=lambda c: (c.edges, c.vertices))
        assert all(is_valid_cell(y, c) and c.size == 3 and c.dim == i for c in cells)


def test_cell_count_oracle():
    # independent count: choose the cell's members among all vertices and edges
    t = prepare(figure1_tree(), 3)
    members = [("v", v) for v in range(t.num_vertices)] + [("e", r) for r in range(t.num_edges)]
    from itertools import combinations

    total = [0] * 4
    for combo in combinations(members, 3):
        pts = []
        for kind, x in combo:
            pts += [x] if kind == "v" else [t.tau[x], t.iota[x]]
        if len(set(pts)) == len(pts):
            total[sum(kind == "e" for kind, _ in combo)] += 1
    assert total == [len(enumerate_cells(t, 3, i)) for i in range(4)]


def test_insufficient_subdivision_rejected():
    with pytest.raises(SubdivisionError, match="insufficient subdivision"):
        enumerate_cells(build_layout(y_graph()), 4, 0)


def test_one_cell_boundary(y):
    e = 0
    v = next(u for u in range(y.num_vertices) if u not in (y.tau[e], y.iota[e]))
    c = Cell((v,), (e,))
    up = Cell(tuple(sorted((v, y.tau[e]))), ())
    down = Cell(tuple(sorted((v, y.iota[e]))), ())
    assert faces(y, c) == {up: 1, down: -1}


def test_boundary_squares_to_zero():
    for g, n in ((y_graph(), 2), (figure1_tree(), 3), (complete_graph(4), 3)):
        t = prepare(g, n)
        cc = cubical_complex(t, n)
        for i in range(2, len(cc.boundary)):
            assert (cc.boundary[i - 1] @ cc.boundary[i]).is_zero()


def test_column_support_is_2i():
    t = prepare(complete_graph(4), 3)
    for i in (1, 2, 3):
        m = boundary_matrix(t, 3, i)
        assert all(len(col) == 2 * i for col in m.columns)


def test_y_homology(y):
    h = cubical_complex(y, 2).homology()
    assert [str(x) for x in h] == ["Z", "Z", "0"]


def test_zero_cells_count():
    t = prepare(figure1_tree(), 4)
    assert count_cells(t, 4, 0) == comb(t.num_vertices, 4)
