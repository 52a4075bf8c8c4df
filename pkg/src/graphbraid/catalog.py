"""Small named graphs used by the corpus, the tests and the scripts."""

from __future__ import annotations

from .graph import Graph


def path_graph(k: int) -> Graph:
    """Path with ``k`` edges."""
    return Graph.from_edges([(j, j + 1) for j in range(k)], num_vertices=k + 1, root=0)


def star(degree: int, leg: int = 1) -> Graph:
    """Star whose centre (vertex 0) has ``degree`` legs of ``leg`` edges each.

    The root is the tip of the first leg.
    """
    edges = []
    nxt = 1
    tips = []
    for _ in range(degree):
        prev = 0
        for _ in range(leg):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        tips.append(prev)
    return Graph.from_edges(edges, num_vertices=nxt, root=tips[0])


def y_graph() -> Graph:
    """Star with three legs of two edges each."""
    return star(3, 2)


def figure1_tree() -> Graph:
    """The 11-vertex tree with essential vertices 2 and 4 used throughout."""
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7), (7, 8), (2, 9), (9, 10)]
    return Graph.from_edges(edges, num_vertices=11, root=0)


def caterpillar(degrees: list[int], spacing: int = 1, leg: int = 1) -> Graph:
    """Spine of essential vertices with the given degrees.

    Consecutive spine vertices are joined by paths of ``spacing`` edges; every
    remaining valence becomes a leg of ``leg`` edges. Root is the first leg tip.
    """
    edges = []
    count = 0

    def new():
        nonlocal count
        count += 1
        return count - 1

    spine = [new() for _ in degrees]
    legs_needed = []
    for k, d in enumerate(degrees):
        used = (k > 0) + (k < len(degrees) - 1)
        legs_needed.append(d - used)
    root = None
    for k, v in enumerate(spine):
        if k > 0:
            prev = spine[k - 1]
            for _ in range(spacing - 1):
                w = new()
                edges.append((prev, w))
                prev = w
            edges.append((prev, v))
        for _ in range(legs_needed[k]):
            prev = v
            for _ in range(leg):
                w = new()
                edges.append((prev, w))
                prev = w
            if root is None:
                root = prev
    return Graph.from_edges(edges, num_vertices=count, root=root)


def complete_graph(k: int) -> Graph:
    edges = [(a, b) for a in range(k) for b in range(a + 1, k)]
    return Graph.from_edges(edges, num_vertices=k, root=0)


def complete_bipartite(a: int, b: int) -> Graph:
    edges = [(x, a + y) for x in range(a) for y in range(b)]
    return Graph.from_edges(edges, num_vertices=a + b, root=0)


def cycle_with_whisker(cycle: int = 3, whisker: int = 1) -> Graph:
    """A cycle of ``cycle`` edges with a path of ``whisker`` edges hanging off vertex 0."""
    edges = [(j, (j + 1) % cycle) for j in range(cycle)]
    prev = 0
    for j in range(whisker):
        edges.append((prev, cycle + j))
        prev = cycle + j
    return Graph.from_edges(edges, num_vertices=cycle + whisker, root=prev)


CATALOG = {
    "y": y_graph,
    "figure1": figure1_tree,
    "k4": lambda: complete_graph(4),
    "k5": lambda: complete_graph(5),
    "k33": lambda: complete_bipartite(3, 3),
    "whisker": cycle_with_whisker,
}
