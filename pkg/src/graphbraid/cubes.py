"""The discretized configuration space UD_n(G) and its cubical boundary."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .algebra import HomologyGroup, IntegerMatrix, homology_of
from .graph import GraphError, subdivision_violations
from .layout import LabeledTree


class SubdivisionError(GraphError):
    pass


class Cell(NamedTuple):
    """An unordered configuration of vertices and edges with disjoint closures.

    Vertices are labels, edges are ranks in the edge order; both sorted.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.edges)

    @property
    def size(self) -> int:
        return len(self.vertices) + len(self.edges)


def cell_key(c: Cell):
    return (c.edges, c.vertices)


def format_cell(t: LabeledTree, c: Cell) -> str:
    parts = [f"v{v}" for v in c.vertices] + [t.edge_name(e) for e in c.edges]
    return "{" + ", ".join(parts) + "}"


def closure(t: LabeledTree, edges) -> set[int]:
    out = set()
    for e in edges:
        out.add(t.tau[e])
        out.add(t.iota[e])
    return out


def is_valid_cell(t: LabeledTree, c: Cell) -> bool:
    seen = set(c.vertices)
    if len(seen) != len(c.vertices):
        return False
    for e in c.edges:
        a, b = t.tau[e], t.iota[e]
        if a == b or a in seen or b in seen:
            return False
        seen.add(a)
        seen.add(b)
    return True


def check_subdivision(t: LabeledTree, n: int):
    if n <= t.max_points:
        return
    problems = subdivision_violations(t.base, n)
    if problems:
        raise SubdivisionError("insufficient subdivision: " + "; ".join(problems))


def edge_sets(t: LabeledTree, i: int):
    """All sets of ``i`` edges with pairwise disjoint closures, in lex order."""
    m = t.num_edges
    tau, iota = t.tau, t.iota

    def rec(start, chosen, used):
        if len(chosen) == i:
            yield tuple(chosen)
            return
        for e in range(start, m - (i - len(chosen)) + 1):
            a, b = tau[e], iota[e]
            if a == b or a in used or b in used:
                continue
            chosen.append(e)
            used.add(a)
            used.add(b)
            yield from rec(e + 1, chosen, used)
            used.discard(a)
            used.discard(b)
            chosen.pop()

    yield from rec(0, [], set())


def enumerate_cells(t: LabeledTree, n: int, i: int, check: bool = True) -> list[Cell]:
    if check:
        check_subdivision(t, n)
    if i > n or i < 0:
        return []
    out = []
    labels = range(t.num_vertices)
    for es in edge_sets(t, i):
        used = closure(t, es)
        free = [v for v in labels if v not in used]
        for vs in combinations(free, n - i):
            out.append(Cell(vs, es))
    return out


def count_cells(t: LabeledTree, n: int, i: int) -> int:
    if i > n or i < 0:
        return 0
    total = 0
    for es in edge_sets(t, i):
        total += math.comb(t.num_vertices - 2 * i, n - i)
    return total


def faces(t: LabeledTree, c: Cell) -> dict[Cell, int]:
    """Signed cubical boundary of ``c``.

    The j-th edge (1-based, in edge order) contributes
    ``(-1)**(j+1) * (c with e_j -> tau(e_j)  -  c with e_j -> iota(e_j))``.
    """
    out: dict[Cell, int] = {}
    for j, e in enumerate(c.edges):
        sign = 1 if j % 2 == 0 else -1
        rest = c.edges[:j] + c.edges[j + 1 :]
        for end, s in ((t.tau[e], sign), (t.iota[e], -sign)):
            f = Cell(tuple(sorted(c.vertices + (end,))), rest)
            out[f] = out.get(f, 0) + s
    return {f: v for f, v in out.items() if v}


def boundary_matrix(t: LabeledTree, n: int, i: int, cells=None) -> IntegerMatrix:
    """Matrix of the boundary from i-cells (columns) to (i-1)-cells (rows)."""
    if i < 1:
        raise ValueError("boundary is defined from dimension 1 up")
    if cells is None:
        cells = {i: enumerate_cells(t, n, i), i - 1: enumerate_cells(t, n, i - 1)}
    index = {c: k for k, c in enumerate(cells[i - 1])}
    cols = []
    for c in cells[i]:
        cols.append({index[f]: v for f, v in faces(t, c).items()})
    return IntegerMatrix(len(cells[i - 1]), len(cells[i]), cols)


@dataclass
class ChainComplexRep:
    cells_by_dim: list[list[Cell]]
    boundary: list[IntegerMatrix | None]  # boundary[i]: C_i -> C_{i-1}; entry 0 is None

    @property
    def dims(self) -> list[int]:
        return [len(c) for c in self.cells_by_dim]

    def homology(self) -> list[HomologyGroup]:
        return homology_of(self.dims, self.boundary)

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))


def cubical_complex(t: LabeledTree, n: int) -> ChainComplexRep:
    """The full cellular chain complex of UD_n(G)."""
    check_subdivision(t, n)
    cells = []
    for i in range(n + 1):
        cells.append(enumerate_cells(t, n, i, check=False))
    boundaries: list[IntegerMatrix | None] = [None]
    for i in range(1, len(cells)):
        boundaries.append(boundary_matrix(t, n, i, {i: cells[i], i - 1: cells[i - 1]}))
    return ChainComplexRep(cells, boundaries)
