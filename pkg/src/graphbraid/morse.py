"""Discrete gradient field on UD_n(G), critical cells, the Morse complex and
the polynomial-ring action on critical cells."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product

from .algebra import HomologyGroup, IntegerMatrix, homology_of
from .cubes import (
    Cell,
    cell_key,
    check_subdivision,
    closure,
    count_cells,
    enumerate_cells,
    faces,
    format_cell,
)
from .graph import GraphError, _DisjointSets
from .layout import LabeledTree


class MorseError(RuntimeError):
    """Internal inconsistency, e.g. the reduction map failed to stabilise."""


class ActionError(GraphError):
    pass


class Kind(str, Enum):
    CRITICAL = "critical"
    REDUNDANT = "redundant"
    COLLAPSIBLE = "collapsible"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    vertex: int | None = None  # smallest unblocked vertex
    edge: int | None = None  # minimal order-respecting edge


# -- predicates ---------------------------------------------------------------


def occupancy(t: LabeledTree, c: Cell) -> set[int]:
    occ = set(c.vertices)
    occ.update(closure(t, c.edges))
    return occ


def is_blocked(t: LabeledTree, c: Cell, v: int, occ: set[int] | None = None) -> bool:
    if v == 0:
        return True
    if occ is None:
        occ = occupancy(t, c)
    return t.parent[v] in occ


def is_order_respecting(t: LabeledTree, c: Cell, e: int) -> bool:
    if not t.in_tree[e]:
        return False
    top, bottom = t.tau[e], t.iota[e]
    parent = t.parent
    return all(v > bottom for v in c.vertices if parent[v] == top)


def unblocked_vertices(t: LabeledTree, c: Cell) -> list[int]:
    occ = occupancy(t, c)
    return [v for v in c.vertices if not is_blocked(t, c, v, occ)]


def classify(t: LabeledTree, c: Cell) -> Classification:
    unblocked = unblocked_vertices(t, c)
    respecting = [e for e in c.edges if is_order_respecting(t, c, e)]
    if not respecting:
        if unblocked:
            return Classification(Kind.REDUNDANT, vertex=unblocked[0])
        return Classification(Kind.CRITICAL)
    # Order-respecting edges have distinct iota, so this minimum is unique.
    e = min(respecting, key=lambda r: t.iota[r])
    if unblocked and unblocked[0] < t.iota[e]:
        return Classification(Kind.REDUNDANT, vertex=unblocked[0], edge=e)
    return Classification(Kind.COLLAPSIBLE, edge=e)


def vector_field(t: LabeledTree, c: Cell) -> Cell | None:
    """V(c) for redundant cells; ``None`` on critical and collapsible cells."""
    cls = classify(t, c)
    if cls.kind is not Kind.REDUNDANT:
        return None
    v = cls.vertex
    verts = tuple(u for u in c.vertices if u != v)
    return Cell(verts, tuple(sorted(c.edges + (t.parent_edge[v],))))


def classify_from_definition(t: LabeledTree, c: Cell, memo: dict | None = None) -> Kind:
    """Reference classification straight from the recursive definition of V.

    A cell is collapsible when it equals V(c') for some c' in the domain of V;
    otherwise it is redundant if it has an unblocked vertex, else critical.
    Independent of the case analysis in :func:`classify`.
    """
    if memo is None:
        memo = {}
    if c in memo:
        return memo[c]
    kind = None
    for e in c.edges:
        if not t.in_tree[e]:
            continue
        w = t.iota[e]
        rest = tuple(r for r in c.edges if r != e)
        prev = Cell(tuple(sorted(c.vertices + (w,))), rest)
        unblocked = unblocked_vertices(t, prev)
        if not unblocked or unblocked[0] != w:
            continue
        if classify_from_definition(t, prev, memo) is Kind.COLLAPSIBLE:
            continue
        kind = Kind.COLLAPSIBLE
        break
    if kind is None:
        kind = Kind.REDUNDANT if unblocked_vertices(t, c) else Kind.CRITICAL
    memo[c] = kind
    return kind


# -- critical cells -----------------------------------------------------------


@dataclass(frozen=True)
class EdgeInfo:
    edge: int  # rank
    tau: int
    direction: int  # direction index of the edge at tau
    deleted: bool
    witnesses: tuple[int, ...]  # vertices v with tau(e(v)) = tau(e) and v < iota(e)
    branch_vertices: tuple[int, ...]  # all cell vertices in smaller directions at tau


@dataclass(frozen=True)
class CriticalCell:
    cell: Cell
    edges: tuple[EdgeInfo, ...]

    @property
    def dim(self) -> int:
        return self.cell.dim

    @property
    def degree(self) -> int:
        return self.cell.size

    def stable_edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as (essential vertex label, direction) pairs."""
        return tuple((info.tau, info.direction) for info in self.edges)


def describe_critical(t: LabeledTree, c: Cell) -> CriticalCell:
    infos = []
    for e in c.edges:
        top = t.tau[e]
        deleted = not t.in_tree[e]
        d = t.ends[top].index(e)
        if deleted:
            wit, below = (), ()
        else:
            wit = tuple(v for v in c.vertices if t.parent[v] == top and v < t.iota[e])
            below = tuple(v for v in c.vertices if 0 < _direction_below(t, top, v) < d)
        infos.append(EdgeInfo(e, top, d, deleted, wit, below))
    return CriticalCell(c, tuple(infos))


def _direction_below(t: LabeledTree, top: int, v: int) -> int:
    """Direction at ``top`` through which ``v`` hangs below it, or -1."""
    u = v
    while u > top:
        if t.parent[u] == top:
            return t.ends[top].index(t.parent_edge[u])
        u = t.parent[u]
    return -1


def _blocked_configurations(t: LabeledTree, k: int, occ: set[int]):
    """All k-sets of free labels in which every vertex is blocked."""
    free = [v for v in range(t.num_vertices) if v not in occ]
    parent = t.parent
    chosen: list[int] = []
    taken: set[int] = set()

    def rec(pos):
        need = k - len(chosen)
        if need == 0:
            yield tuple(chosen)
            return
        if len(free) - pos < need:
            return
        v = free[pos]
        # Labels increase away from the root, so a parent is decided before v.
        if v == 0 or parent[v] in occ or parent[v] in taken:
            chosen.append(v)
            taken.add(v)
            yield from rec(pos + 1)
            chosen.pop()
            taken.discard(v)
        yield from rec(pos + 1)

    yield from rec(0)


def _edge_sets_at_essential(t: LabeledTree, i: int):
    """Edge sets that could appear in a critical cell: each edge deleted or
    with essential tau, all closures disjoint."""
    cand = [e for e in range(t.num_edges) if not t.in_tree[e] or t.degree[t.tau[e]] >= 3]
    for es in combinations(cand, i):
        used = set()
        ok = True
        for e in es:
            a, b = t.tau[e], t.iota[e]
            if a == b or a in used or b in used:
                ok = False
                break
            used.add(a)
            used.add(b)
        if ok:
            yield es


def _critical_exhaustive(t, n, i):
    return [c for c in enumerate_cells(t, n, i, check=False) if classify(t, c).kind is Kind.CRITICAL]


def _critical_brute(t, n, i):
    out = []
    for es in _edge_sets_at_essential(t, i):
        occ = closure(t, es)
        for vs in _blocked_configurations(t, n - i, occ):
            c = Cell(vs, es)
            if classify(t, c).kind is Kind.CRITICAL:
                out.append(c)
    return out


def _pile_path(t: LabeledTree, start: int | None, occ: set[int]) -> list[int]:
    """Vertices a pile entering at ``start`` may occupy, in filling order."""
    path = []
    cur = start
    while cur is not None and cur not in occ:
        path.append(cur)
        kids = t.children[cur]
        if t.degree[cur] >= 3 or len(kids) != 1:
            break
        cur = kids[0]
    return path


def _distributions(total: int, caps: list[int]):
    if not caps:
        if total == 0:
            yield ()
        return
    head, rest = caps[0], caps[1:]
    room = sum(rest)
    for a in range(max(0, total - room), min(head, total) + 1):
        for tail in _distributions(total - a, rest):
            yield (a,) + tail


def _critical_direct(t, n, i):
    if not t.is_tree:
        raise ValueError("direct enumeration requires a tree")
    out = []
    for vbar in combinations(t.essential_labels(), i):
        ranges = [range(2, t.degree[v]) for v in vbar]
        for dirs in product(*ranges):
            es = [t.ends[v][d] for v, d in zip(vbar, dirs)]
            occ = closure(t, es)
            if len(occ) != 2 * i:
                continue
            paths = [_pile_path(t, 0, occ)]
            groups = []
            for v, d, e in zip(vbar, dirs, es):
                group = []
                for j in range(1, t.degree[v]):
                    if j == d:
                        kids = t.children[t.iota[e]]
                        start = kids[0] if kids else None
                    else:
                        start = t.iota[t.ends[v][j]]
                    if j < d:
                        group.append(len(paths))
                    paths.append(_pile_path(t, start, occ))
                groups.append(group)
            caps = [len(p) for p in paths]
            for dist in _distributions(n - i, caps):
                if any(sum(dist[g] for g in group) == 0 for group in groups):
                    continue
                verts = []
                for p, a in zip(paths, dist):
                    verts.extend(p[:a])
                out.append(Cell(tuple(sorted(verts)), tuple(sorted(es))))
    return out


METHODS = ("auto", "exhaustive", "brute", "direct")


def critical_cell_list(t: LabeledTree, n: int, i: int, method: str = "auto") -> list[Cell]:
    """Critical i-cells of UD_n in canonical order."""
    check_subdivision(t, n)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if i < 0 or i > n:
        return []
    if method == "auto":
        method = "direct" if t.is_tree else "brute"
    if method == "exhaustive":
        cells = _critical_exhaustive(t, n, i)
    elif method == "brute":
        cells = _critical_brute(t, n, i)
    else:
        cells = _critical_direct(t, n, i)
    cells.sort(key=cell_key)
    return cells


def critical_cells(t: LabeledTree, n: int, i: int, method: str = "auto") -> list[CriticalCell]:
    return [describe_critical(t, c) for c in critical_cell_list(t, n, i, method)]


def classification_counts(t: LabeledTree, n: int, i: int) -> dict[Kind, int]:
    counts = {k: 0 for k in Kind}
    for c in enumerate_cells(t, n, i):
        counts[classify(t, c).kind] += 1
    return counts


def max_critical_dimension(t: LabeledTree, n: int) -> int:
    return min(n, len(t.essential_labels()))


# -- Morse complex ------------------------------------------------------------


class _Flow:
    """Caches the one-step reduction map R on cells of one UD_n."""

    def __init__(self, t: LabeledTree):
        self.t = t
        self.cache: dict[Cell, dict[Cell, int]] = {}

    def step(self, c: Cell) -> dict[Cell, int]:
        hit = self.cache.get(c)
        if hit is not None:
            return hit
        cls = classify(self.t, c)
        if cls.kind is Kind.CRITICAL:
            out = {c: 1}
        elif cls.kind is Kind.COLLAPSIBLE:
            out = {}
        else:
            up = vector_field(self.t, c)
            bd = faces(self.t, up)
            eps = bd[c]
            # c + (-eps) * d(V c): the c terms cancel since eps = +-1.
            out = {f: -eps * a for f, a in bd.items() if f != c}
        self.cache[c] = out
        return out

    def apply(self, chain: dict[Cell, int]) -> dict[Cell, int]:
        out: dict[Cell, int] = {}
        for c, a in chain.items():
            for f, b in self.step(c).items():
                out[f] = out.get(f, 0) + a * b
        return {f: a for f, a in out.items() if a}

    def stabilise(self, chain: dict[Cell, int], cap: int) -> dict[Cell, int]:
        for _ in range(cap + 1):
            nxt = self.apply(chain)
            if nxt == chain:
                return chain
            chain = nxt
        raise MorseError("reduction map did not stabilise; the field has a closed path")


@dataclass
class MorseComplexRep:
    n: int
    critical: list[list[Cell]]
    differential: list[IntegerMatrix | None]  # differential[i]: M_i -> M_{i-1}

    @property
    def dims(self) -> list[int]:
        return [len(c) for c in self.critical]

    def homology(self) -> list[HomologyGroup]:
        return homology_of(self.dims, self.differential)

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))

    def is_trivial(self) -> bool:
        return all(m is None or m.is_zero() for m in self.differential)


def morse_boundary(t: LabeledTree, n: int, c: Cell, flow: _Flow | None = None) -> dict[Cell, int]:
    """The Morse differential of a critical cell, as a chain of critical cells."""
    if flow is None:
        flow = _Flow(t)
    if c.dim == 0:
        return {}
    cap = count_cells(t, n, c.dim - 1) + 1
    return flow.stabilise(faces(t, c), cap)


def morse_complex(t: LabeledTree, n: int, method: str = "auto") -> MorseComplexRep:
    check_subdivision(t, n)
    # Dimensions above N_G carry no critical cells; they are kept (empty) so
    # the result lines up with the cubical complex.
    top = max_critical_dimension(t, n)
    critical = [critical_cell_list(t, n, i, method) if i <= top else [] for i in range(n + 1)]
    flow = _Flow(t)
    diffs: list[IntegerMatrix | None] = [None]
    for i in range(1, n + 1):
        index = {c: k for k, c in enumerate(critical[i - 1])}
        cols = []
        for c in critical[i]:
            col = {}
            for f, a in morse_boundary(t, n, c, flow).items():
                if f not in index:
                    raise MorseError(f"reduction left a non-critical cell {format_cell(t, f)}")
                col[index[f]] = a
            cols.append(col)
        diffs.append(IntegerMatrix(len(critical[i - 1]), len(critical[i]), cols))
    return MorseComplexRep(n, critical, diffs)


# -- polynomial ring action ---------------------------------------------------


def _components(t: LabeledTree, occ: set[int]) -> _DisjointSets:
    ds = _DisjointSets(range(t.num_vertices))
    for v in range(1, t.num_vertices):
        p = t.parent[v]
        if v not in occ and p not in occ:
            ds.union(v, p)
    return ds


def sg_action(t: LabeledTree, c: Cell | CriticalCell, ee: int) -> CriticalCell:
    """Multiply a critical cell by the variable of essential edge ``ee``."""
    cell = c.cell if isinstance(c, CriticalCell) else c
    if not 0 <= ee < t.num_essential_edges:
        raise ValueError(f"no essential edge {ee}")
    if cell.size + 1 > t.capacity:
        raise ActionError("insufficient subdivision for action")
    occ = closure(t, cell.edges)
    ds = _components(t, occ)
    members = [v for v in range(t.num_vertices) if t.essential_edge_of[v] == ee and v not in occ]
    if not members:
        raise ActionError("insufficient subdivision for action")
    root = ds.find(members[0])
    taken = set(cell.vertices)
    free = [v for v in range(t.num_vertices) if v not in occ and v not in taken and ds.find(v) == root]
    if not free:
        raise ActionError("insufficient subdivision for action")
    new = Cell(tuple(sorted(cell.vertices + (free[0],))), cell.edges)
    if classify(t, new).kind is not Kind.CRITICAL:
        raise ActionError("insufficient subdivision for action")
    return describe_critical(t, new)


def act_on_chain(t: LabeledTree, chain: dict[Cell, int], ee: int) -> dict[Cell, int]:
    out: dict[Cell, int] = {}
    for c, a in chain.items():
        d = sg_action(t, c, ee).cell
        out[d] = out.get(d, 0) + a
    return {c: a for c, a in out.items() if a}


@dataclass(frozen=True)
class Generator:
    cell: CriticalCell
    minimal: bool


def generators(t: LabeledTree, i: int, method: str = "auto") -> list[Generator]:
    """Critical i-cells of degree n <= 2i; ``minimal`` marks those outside
    the image of the action from degree n - 1."""
    out = []
    prev: list[Cell] = []
    for n in range(i, 2 * i + 1):
        cells = critical_cell_list(t, n, i, method)
        image = set()
        for c in prev:
            for ee in range(t.num_essential_edges):
                try:
                    image.add(sg_action(t, c, ee).cell)
                except ActionError:
                    pass
        for c in cells:
            out.append(Generator(describe_critical(t, c), c not in image))
        prev = cells
    return out


@dataclass
class ProbeMismatch:
    n: int
    essential_edge: int
    cell: str
    lhs: dict[str, int]
    rhs: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "essential_edge": self.essential_edge,
            "cell": self.cell,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass
class ProbeReport:
    i: int
    n_max: int
    checked: int = 0
    skipped: int = 0
    mismatches: list[ProbeMismatch] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "n_max": self.n_max,
            "checked": self.checked,
            "skipped": self.skipped,
            "mismatches": [m.to_dict() for m in self.mismatches],
        }


def _named(t, chain):
    return {format_cell(t, c): a for c, a in sorted(chain.items(), key=lambda kv: cell_key(kv[0]))}


def commutation_probe(t: LabeledTree, i: int, n_max: int, method: str = "auto") -> ProbeReport:
    """Compare d(x_ee * c) with x_ee * d(c) on critical i-cells of degree <= n_max.

    ``t`` must be subdivided for ``n_max + 1`` points. Pairs where the action
    is unavailable are counted as skipped.
    """
    report = ProbeReport(i, n_max)
    if i < 1:
        return report
    flows: dict[int, _Flow] = {}
    for n in range(2 * i, n_max + 1):
        if n + 1 > t.capacity:
            break
        flows.setdefault(n, _Flow(t))
        flows.setdefault(n + 1, _Flow(t))
        for c in critical_cell_list(t, n, i, method):
            below = morse_boundary(t, n, c, flows[n])
            for ee in range(t.num_essential_edges):
                try:
                    up = sg_action(t, c, ee).cell
                    rhs = act_on_chain(t, below, ee)
                except ActionError:
                    report.skipped += 1
                    continue
                lhs = morse_boundary(t, n + 1, up, flows[n + 1])
                report.checked += 1
                if lhs != rhs:
                    report.mismatches.append(
                        ProbeMismatch(n, ee, format_cell(t, c), _named(t, lhs), _named(t, rhs))
                    )
        flows.pop(n, None)
    return report
