"""Spanning tree, depth-first labelling and the order data built on it.

Everything downstream (cells, the gradient field, the action of the
polynomial ring) works in *layout coordinates*: vertices are referred to
by their depth-first label and edges by their rank in the edge order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import (
    Graph,
    GraphError,
    _chains,
    _DisjointSets,
    _shortest_cycle,
    essential_structure,
    subdivide_edge,
    subdivide_for,
)


class LayoutError(GraphError):
    pass


@dataclass(frozen=True, eq=False)
class LabeledTree:
    base: Graph
    root: int
    label: tuple[int, ...]  # base vertex -> label
    vertex_of: tuple[int, ...]  # label -> base vertex
    tree_edges: frozenset[int]  # base edge ids
    deleted_edges: frozenset[int]
    edge_ids: tuple[int, ...]  # rank -> base edge id
    rank_of: tuple[int, ...]  # base edge id -> rank
    tau: tuple[int, ...]  # rank -> smaller endpoint label
    iota: tuple[int, ...]  # rank -> larger endpoint label
    in_tree: tuple[bool, ...]  # by rank
    parent: tuple[int, ...]  # label -> label of tau(e(v)), -1 at the root
    parent_edge: tuple[int, ...]  # label -> rank of e(v), -1 at the root
    children: tuple[tuple[int, ...], ...]  # label -> tree children, increasing
    ends: tuple[tuple[int, ...], ...]  # label -> incident edge ranks by direction
    degree: tuple[int, ...]  # label -> degree in the base graph
    essential_edge_of: tuple[int, ...]  # label -> essential edge index, -1 if essential
    num_essential_edges: int
    max_points: float  # largest n for which the base graph is sufficiently subdivided
    capacity: float  # largest n for which every pile, including the root's, fits

    @property
    def num_vertices(self) -> int:
        return len(self.label)

    @property
    def num_edges(self) -> int:
        return len(self.edge_ids)

    @property
    def is_tree(self) -> bool:
        return not self.deleted_edges

    def essential_labels(self) -> list[int]:
        return [v for v in range(self.num_vertices) if self.degree[v] >= 3]

    def edge_name(self, rank: int) -> str:
        return f"e({self.tau[rank]},{self.iota[rank]})"

    def edge_between(self, a: int, b: int) -> int:
        """Rank of the edge joining labels ``a`` and ``b``."""
        lo, hi = min(a, b), max(a, b)
        for r in self.ends[lo]:
            if self.tau[r] == lo and self.iota[r] == hi:
                return r
        raise LayoutError(f"no edge between labels {a} and {b}")


def _choose_root(g: Graph, tree_degree: list[int]) -> int:
    if g.root is not None and g.degree(g.root) == 1:
        return g.root
    leaves = [v for v in range(g.num_vertices) if g.degree(v) == 1]
    if leaves:
        return leaves[0]
    tree_leaves = [v for v in range(g.num_vertices) if tree_degree[v] == 1]
    plain = [v for v in tree_leaves if g.degree(v) < 3]
    if plain:
        return plain[0]
    if tree_leaves:
        return tree_leaves[0]
    return 0


def _spanning_tree(g: Graph) -> set[int]:
    # Edges avoiding essential vertices must stay in the tree; they cannot
    # close a cycle unless the graph is a circle.
    ess = set(g.essential_vertices())
    ds = _DisjointSets(range(g.num_vertices))
    tree = set()
    for e, (a, b) in enumerate(g.edges):
        if a not in ess and b not in ess:
            if not ds.union(a, b):
                raise LayoutError("no spanning tree has all deleted edges at essential vertices")
            tree.add(e)
    for e, (a, b) in enumerate(g.edges):
        if e not in tree and ds.union(a, b):
            tree.add(e)
    return tree


def build_layout(g: Graph) -> LabeledTree:
    if not g.is_connected():
        raise GraphError("graph not connected")
    if g.is_circle():
        raise LayoutError("a circle has no admissible spanning tree")
    tree = _spanning_tree(g)
    tree_degree = [0] * g.num_vertices
    for e in tree:
        a, b = g.edges[e]
        tree_degree[a] += 1
        tree_degree[b] += 1
    root = _choose_root(g, tree_degree)

    nv = g.num_vertices
    label = [-1] * nv
    order = [root]
    label[root] = 0
    parent_base_edge = [-1] * nv
    direction_positions = [None] * nv

    def positions(v, arrival):
        d = g.degree(v)
        start = 0 if arrival is None else arrival
        return [(start + k) % d for k in range(d)]

    direction_positions[root] = positions(root, None)
    stack = [(root, iter(direction_positions[root]))]
    while stack:
        v, it = stack[-1]
        for q in it:
            e = g.rotation[v][q]
            if e not in tree:
                continue
            u = g.other_end(e, v)
            if label[u] != -1:
                continue
            label[u] = len(order)
            order.append(u)
            parent_base_edge[u] = e
            arrival = g.rotation[u].index(e)
            direction_positions[u] = positions(u, arrival)
            stack.append((u, iter(direction_positions[u][1:])))
            break
        else:
            stack.pop()

    edge_keys = []
    for e, (a, b) in enumerate(g.edges):
        la, lb = label[a], label[b]
        edge_keys.append((min(la, lb), max(la, lb), e))
    edge_keys.sort()
    edge_ids = tuple(k[2] for k in edge_keys)
    rank_of = [0] * g.num_edges
    for r, e in enumerate(edge_ids):
        rank_of[e] = r
    tau = tuple(k[0] for k in edge_keys)
    iota = tuple(k[1] for k in edge_keys)
    in_tree = tuple(e in tree for e in edge_ids)

    parent = [-1] * nv
    parent_edge = [-1] * nv
    for u in range(nv):
        e = parent_base_edge[u]
        if e >= 0:
            parent[label[u]] = label[g.other_end(e, u)]
            parent_edge[label[u]] = rank_of[e]
    children = [[] for _ in range(nv)]
    for lv in range(1, nv):
        children[parent[lv]].append(lv)
    ends = [()] * nv
    for u in range(nv):
        ends[label[u]] = tuple(rank_of[g.rotation[u][q]] for q in direction_positions[u])

    structure = essential_structure(g)
    ee_of = [-1] * nv
    for k, comp in enumerate(structure.essential_edges):
        for u in comp.vertices:
            ee_of[label[u]] = k
    ess = set(structure.essential_vertices)
    deleted = frozenset(e for e in range(g.num_edges) if e not in tree)
    for e in deleted:
        if not (set(g.edges[e]) & ess):
            raise LayoutError(f"deleted edge {e} is not adjacent to an essential vertex")

    kids = tuple(tuple(c) for c in children)
    degree = tuple(g.degree(order[lv]) for lv in range(nv))
    bound = max_points(g)
    return LabeledTree(
        base=g,
        root=root,
        label=tuple(label),
        vertex_of=tuple(order),
        tree_edges=frozenset(tree),
        deleted_edges=deleted,
        edge_ids=edge_ids,
        rank_of=tuple(rank_of),
        tau=tau,
        iota=iota,
        in_tree=in_tree,
        parent=tuple(parent),
        parent_edge=tuple(parent_edge),
        children=kids,
        ends=tuple(ends),
        degree=degree,
        essential_edge_of=tuple(ee_of),
        num_essential_edges=len(structure.essential_edges),
        max_points=bound,
        capacity=min(bound, _root_run(kids, degree)),
    )


def _root_run(children, degree) -> int:
    """Vertices on the tree path from the root up to the first branch point."""
    count, cur = 0, 0
    while True:
        count += 1
        if degree[cur] >= 3 or len(children[cur]) != 1:
            return count
        cur = children[cur][0]


def max_points(g: Graph) -> float:
    """Largest n satisfying both subdivision conditions (``inf`` if unbounded)."""
    bound = math.inf
    for start, end, path in _chains(g):
        if start != end:
            bound = min(bound, len(path) + 1)
    cyc = _shortest_cycle(g)
    if cyc is not None:
        bound = min(bound, cyc[0] - 1)
    return bound


def prepare(g: Graph, n: int) -> LabeledTree:
    """Subdivide ``g`` for ``n`` points and lay out the result.

    Without a degree-1 vertex the root is a leaf of T cut off by a deleted
    edge, so its chain is one edge short of holding n points; that chain is
    lengthened until the root pile fits.
    """
    h = subdivide_for(g, n)
    t = build_layout(h)
    short = n - _root_run(t.children, t.degree)
    if short > 0 and t.num_vertices > 1:
        root = t.root
        h = subdivide_edge(h, t.edge_ids[t.parent_edge[1]], short + 1)
        t = build_layout(h)
        if t.root != root:
            raise LayoutError("root moved while lengthening its chain")
    return t


def edge_order(t: LabeledTree) -> list[int]:
    """Base edge ids sorted by (label of tau, label of iota)."""
    return list(t.edge_ids)


def direction_index(t: LabeledTree, v: int, e: int) -> int:
    """Direction of edge rank ``e`` at label ``v``; 0 is the rootward end.

    For a loop the first of its two ends is reported.
    """
    try:
        return t.ends[v].index(e)
    except ValueError:
        raise LayoutError(f"edge {e} is not incident to vertex {v}") from None


def edge_in_direction(t: LabeledTree, v: int, d: int) -> int:
    return t.ends[v][d]
