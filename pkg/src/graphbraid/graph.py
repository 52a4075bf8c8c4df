"""Finite multigraphs with rotation systems.

A graph is stored as a list of edges (endpoint pairs, loops and parallel
edges allowed) together with a rotation: for every vertex, the cyclic order
of its incident edge-ends.  A loop shows up twice in the rotation of its
vertex, so ``degree`` counts it twice.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field


class GraphError(ValueError):
    pass


class GraphParseError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]
    root: int | None = None

    def __post_init__(self):
        counts = [dict() for _ in self.rotation]
        for v, ends in enumerate(self.rotation):
            for e in ends:
                if not 0 <= e < len(self.edges):
                    raise GraphError(f"vertex {v}: unknown edge {e}")
                counts[v][e] = counts[v].get(e, 0) + 1
        for e, (a, b) in enumerate(self.edges):
            if not (0 <= a < len(self.rotation) and 0 <= b < len(self.rotation)):
                raise GraphError(f"edge {e}: endpoint out of range")
            if a == b:
                ok = counts[a].get(e, 0) == 2
            else:
                ok = counts[a].get(e, 0) == 1 and counts[b].get(e, 0) == 1
            if not ok:
                raise GraphError(f"edge {e} does not appear once per end in the rotation")
        for v, c in enumerate(counts):
            for e in c:
                if v not in self.edges[e]:
                    raise GraphError(f"vertex {v} lists edge {e} which is not incident")
        if self.root is not None and not 0 <= self.root < len(self.rotation):
            raise GraphError(f"root {self.root} is not a vertex")

    @classmethod
    def from_edges(cls, edges, num_vertices=None, root=None) -> "Graph":
        """Build a graph whose rotation follows the order edges are listed."""
        edges = tuple((int(a), int(b)) for a, b in edges)
        if num_vertices is None:
            num_vertices = 1 + max((max(e) for e in edges), default=-1)
        rotation = [[] for _ in range(num_vertices)]
        for k, (a, b) in enumerate(edges):
            rotation[a].append(k)
            rotation[b].append(k)
        return cls(edges, tuple(tuple(r) for r in rotation), root)

    @property
    def num_vertices(self) -> int:
        return len(self.rotation)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def neighbors(self, v: int) -> list[int]:
        return [self.other_end(e, v) for e in self.rotation[v]]

    def essential_vertices(self) -> list[int]:
        return [v for v in range(self.num_vertices) if self.degree(v) >= 3]

    def is_connected(self) -> bool:
        if self.num_vertices == 0:
            return False
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for u in self.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == self.num_vertices

    def is_tree(self) -> bool:
        return self.is_connected() and self.num_edges == self.num_vertices - 1

    def is_circle(self) -> bool:
        return self.is_connected() and all(self.degree(v) == 2 for v in range(self.num_vertices))

    def with_root(self, root: int | None) -> "Graph":
        return Graph(self.edges, self.rotation, root)


@dataclass(frozen=True)
class EssentialEdge:
    """A connected component of the graph minus its essential vertices."""

    vertices: frozenset[int]
    edges: frozenset[int]


@dataclass(frozen=True)
class EssentialStructure:
    essential_vertices: tuple[int, ...]
    essential_edges: tuple[EssentialEdge, ...]
    degree_sequence: tuple[int, ...] = field(default=())

    @property
    def num_essential_vertices(self) -> int:
        return len(self.essential_vertices)


class _DisjointSets:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def _require_connected(g: Graph):
    if not g.is_connected():
        raise GraphError("graph not connected")


def topological_components(g: Graph, removed) -> list[EssentialEdge]:
    """Components of the space ``g`` minus the points ``removed``.

    Removing a vertex of degree d leaves d loose half-edges behind, so an
    edge with both ends removed still forms a component of its own.
    """
    removed = set(removed)
    ds = _DisjointSets()
    for v in range(g.num_vertices):
        if v not in removed:
            ds.add(("v", v))
    for e, (a, b) in enumerate(g.edges):
        ds.add(("e", e))
        for x in (a, b):
            if x not in removed:
                ds.union(("e", e), ("v", x))
    comps = []
    for group in ds.groups():
        verts = frozenset(x for kind, x in group if kind == "v")
        edges = frozenset(x for kind, x in group if kind == "e")
        comps.append(EssentialEdge(verts, edges))
    comps.sort(key=lambda c: (min(c.edges) if c.edges else g.num_edges, min(c.vertices, default=-1)))
    return comps


def essential_structure(g: Graph) -> EssentialStructure:
    _require_connected(g)
    ess = g.essential_vertices()
    degrees = tuple(sorted((g.degree(v) for v in ess), reverse=True))
    if not ess:
        return EssentialStructure((), (), degrees)
    return EssentialStructure(tuple(ess), tuple(topological_components(g, ess)), degrees)


def delta(g: Graph, i: int) -> int:
    """Maximum number of components left after removing ``i`` essential vertices."""
    if i < 0:
        raise ValueError("i must be non-negative")
    if i == 0:
        return 1
    ess = g.essential_vertices()
    if i > len(ess):
        return 0
    return max(len(topological_components(g, subset)) for subset in itertools.combinations(ess, i))


# -- editing -----------------------------------------------------------------


def subdivide_edge(g: Graph, e: int, pieces: int) -> Graph:
    """Split edge ``e`` into ``pieces`` edges by inserting degree-2 vertices.

    The edge keeps its id on the segment touching its first endpoint; new
    vertices and edges get fresh ids appended after the existing ones.
    """
    if pieces <= 1:
        return g
    a, b = g.edges[e]
    edges = list(g.edges)
    rotation = [list(r) for r in g.rotation]
    new_vertices = list(range(g.num_vertices, g.num_vertices + pieces - 1))
    chain = [a] + new_vertices + [b]
    ids = [e] + list(range(len(edges), len(edges) + pieces - 1))
    edges[e] = (chain[0], chain[1])
    for k in range(1, pieces):
        edges.append((chain[k], chain[k + 1]))
    # the far end of the original edge now sees the last segment
    ends_at_b = [pos for pos, x in enumerate(rotation[b]) if x == e]
    rotation[b][ends_at_b[-1]] = ids[-1]
    for k, w in enumerate(new_vertices):
        rotation.append([ids[k], ids[k + 1]])
    return Graph(tuple(edges), tuple(tuple(r) for r in rotation), g.root)


def _chains(g: Graph) -> list[tuple[int, int, list[int]]]:
    """Maximal paths through degree-2 vertices as (start, end, edge ids)."""
    branch = [v for v in range(g.num_vertices) if g.degree(v) != 2]
    seen = set()
    out = []
    for v in branch:
        for e in g.rotation[v]:
            if e in seen:
                continue
            path = [e]
            cur = g.other_end(e, v)
            last = e
            while g.degree(cur) == 2 and cur != v:
                first, second = g.rotation[cur]
                if first == second:
                    break
                last = second if first == last else first
                path.append(last)
                cur = g.other_end(last, cur)
            seen.update(path)
            out.append((v, cur, path))
    return out


def _shortest_cycle(g: Graph) -> tuple[int, list[int]] | None:
    """Length and edges of a shortest cycle; the first such cycle by edge id."""
    best = None
    for e, (a, b) in enumerate(g.edges):
        if a == b:
            return 1, [e]
        # BFS from a to b avoiding e
        prev = {a: None}
        queue = deque([a])
        while queue and b not in prev:
            v = queue.popleft()
            for f in g.rotation[v]:
                if f == e:
                    continue
                u = g.other_end(f, v)
                if u not in prev:
                    prev[u] = (v, f)
                    queue.append(u)
        if b not in prev:
            continue
        path = [e]
        x = b
        while prev[x] is not None:
            x, f = prev[x]
            path.append(f)
        if best is None or len(path) < best[0]:
            best = (len(path), path)
    return best


def subdivision_violations(g: Graph, n: int) -> list[str]:
    """Conditions under which the discretized model is not faithful for ``n`` points."""
    problems = []
    for start, end, path in _chains(g):
        if start != end and len(path) < n - 1:
            problems.append(
                f"path between vertices {start} and {end} has length {len(path)} < n-1 = {n - 1}"
            )
    cyc = _shortest_cycle(g)
    if cyc is not None and cyc[0] < n + 1:
        problems.append(f"cycle of length {cyc[0]} < n+1 = {n + 1}")
    return problems


def subdivide_for(g: Graph, n: int) -> Graph:
    """Subdivide ``g`` so that the cubical model of ``n`` points is faithful.

    Every edge joining two essential vertices (loops included) is split once
    first, so that a spanning tree whose deleted edges all touch essential
    vertices exists.  Paths between distinct vertices of degree other than 2
    then get at least ``n-1`` edges and cycles at least ``max(n+1, 3)``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    ess = set(g.essential_vertices())
    for e in [e for e, (a, b) in enumerate(g.edges) if a in ess and b in ess]:
        g = subdivide_edge(g, e, 2)
    for start, end, path in _chains(g):
        if start != end and len(path) < n - 1:
            g = subdivide_edge(g, max(path), n - len(path))
    target = max(n + 1, 3)
    while True:
        cyc = _shortest_cycle(g)
        if cyc is None or cyc[0] >= target:
            return g
        length, path = cyc
        g = subdivide_edge(g, max(path), target - length + 1)


def smooth_degree_two(g: Graph) -> Graph:
    """Suppress every degree-2 vertex, keeping the rotation at the survivors."""
    _require_connected(g)
    if g.is_circle():
        raise GraphError("circle has no smoothing base")
    edges = {k: list(ab) for k, ab in enumerate(g.edges)}
    rotation = {v: list(r) for v, r in enumerate(g.rotation)}
    for w in range(g.num_vertices):
        if len(rotation[w]) != 2:
            continue
        a, b = rotation[w]
        if a == b:
            raise GraphError("circle has no smoothing base")
        x = edges[a][0] if edges[a][1] == w else edges[a][1]
        y = edges[b][0] if edges[b][1] == w else edges[b][1]
        # edge a survives and now runs x -- y, taking b's slot at y
        edges[a] = [x, y]
        pos = [p for p, f in enumerate(rotation[y]) if f == b]
        rotation[y][pos[-1]] = a
        del edges[b]
        del rotation[w]
    keep_v = sorted(rotation)
    vmap = {v: k for k, v in enumerate(keep_v)}
    keep_e = sorted(edges)
    emap = {e: k for k, e in enumerate(keep_e)}
    new_edges = tuple((vmap[edges[e][0]], vmap[edges[e][1]]) for e in keep_e)
    new_rot = tuple(tuple(emap[e] for e in rotation[v]) for v in keep_v)
    root = vmap.get(g.root) if g.root is not None else None
    return Graph(new_edges, new_rot, root)


# -- text format -------------------------------------------------------------

_ADJ = re.compile(r"^adj\s+(-?\d+)\s*:\s*(.*)$")
_ROOT = re.compile(r"^root\s+(-?\d+)$")


def parse_graph(text: str) -> Graph:
    """Parse the line-based format (``root v`` and ``adj v: u1 u2 ...``)."""
    adj: dict[int, list[int]] = {}
    line_of: dict[int, int] = {}
    root = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _ROOT.match(line)
        if m:
            if root is not None:
                raise GraphParseError(f"line {lineno}: duplicate root statement")
            root = int(m.group(1))
            continue
        m = _ADJ.match(line)
        if not m:
            raise GraphParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
        v = int(m.group(1))
        if v in adj:
            raise GraphParseError(f"line {lineno}: vertex {v} listed twice")
        try:
            adj[v] = [int(x) for x in m.group(2).split()]
        except ValueError:
            raise GraphParseError(f"line {lineno}: neighbours must be integers") from None
        line_of[v] = lineno
    if not adj:
        raise GraphParseError("no vertices")
    nv = len(adj)
    if sorted(adj) != list(range(nv)):
        raise GraphParseError("vertex ids must be the dense range 0..V-1")
    for v, nbrs in adj.items():
        for u in nbrs:
            if u not in adj:
                raise GraphParseError(f"line {line_of[v]}: unknown neighbour {u}")
            if u != v and nbrs.count(u) != adj[u].count(v):
                raise GraphParseError(
                    f"line {line_of[v]}: edge {v}-{u} must appear in both adjacency lists equally often"
                )
        if nbrs.count(v) % 2:
            raise GraphParseError(f"line {line_of[v]}: a loop must list its vertex twice")
    if root is not None and root not in adj:
        raise GraphParseError(f"root {root} is not a vertex")

    edges: list[tuple[int, int]] = []
    slot: dict[tuple[int, int, int], int] = {}  # (v, u, k-th occurrence) -> edge id
    rotation = []
    for v in range(nv):
        seen: dict[int, int] = {}
        ends = []
        for u in adj[v]:
            k = seen.get(u, 0)
            seen[u] = k + 1
            if u == v:
                key = (v, v, k // 2)
                if k % 2 == 0:
                    slot[key] = len(edges)
                    edges.append((v, v))
                ends.append(slot[key])
            elif u > v:
                slot[(v, u, k)] = len(edges)
                edges.append((v, u))
                ends.append(slot[(v, u, k)])
            else:
                ends.append(slot[(u, v, k)])
        rotation.append(tuple(ends))
    return Graph(tuple(edges), tuple(rotation), root)


def format_graph(g: Graph) -> str:
    lines = []
    if g.root is not None:
        lines.append(f"root {g.root}")
    for v in range(g.num_vertices):
        nbrs = " ".join(str(u) for u in g.neighbors(v))
        lines.append(f"adj {v}: {nbrs}".rstrip())
    return "\n".join(lines) + "\n"


def load_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())
