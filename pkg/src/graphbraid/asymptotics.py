"""Closed forms for trees: summand decomposition of the Morse complex, Hilbert
series, explicit Betti polynomials, and the Euler characteristic series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

from .algebra import QPolynomial, RationalGF, gf_to_polynomial
from .graph import Graph, GraphError, delta, essential_structure, smooth_degree_two, topological_components
from .layout import LabeledTree
from .morse import CriticalCell

EULER_SIGN_WARNING = (
    "Euler series uses the factor (1 - (mu(v) - 1) t); the factor (1 - (1 - mu(v)) t) "
    "gives chi(G) incorrectly at n = 1 (Y graph: 5 instead of 1)"
)


class FormulaError(RuntimeError):
    """A closed form disagreed with an invariant it must satisfy."""


@dataclass(frozen=True)
class SummandDescriptor:
    vbar: tuple[int, ...]  # essential vertex labels, increasing
    lbar: tuple[int, ...]
    mu_vbar: int

    @property
    def i(self) -> int:
        return len(self.vbar)

    @property
    def size(self) -> int:
        """|l|, the sum of the l entries."""
        return sum(self.lbar)

    def directions(self) -> tuple[int, ...]:
        return tuple(l + 1 for l in self.lbar)

    def to_dict(self) -> dict:
        return {"vbar": list(self.vbar), "lbar": list(self.lbar), "mu": self.mu_vbar}


@dataclass(frozen=True)
class BettiPolynomial:
    i: int
    poly: QPolynomial
    valid_from: int = 0

    def __call__(self, n: int) -> int:
        v = self.poly(n)
        if v.denominator != 1:
            raise FormulaError(f"non-integer value {v} at n = {n}")
        return int(v)


def _require_tree(t: LabeledTree):
    if not t.is_tree:
        raise GraphError("explicit polynomial requires a tree")


def mu_of(t: LabeledTree, vbar) -> int:
    """Number of components of the tree minus the points of ``vbar``."""
    return len(topological_components(t.base, [t.vertex_of[v] for v in vbar]))


def summands(t: LabeledTree, i: int) -> list[SummandDescriptor]:
    _require_tree(t)
    out = []
    for vbar in combinations(t.essential_labels(), i):
        mu = mu_of(t, vbar)
        for lbar in product(*(range(1, t.degree[v] - 1) for v in vbar)):
            out.append(SummandDescriptor(vbar, tuple(lbar), mu))
    return out


def summand_of(c: CriticalCell) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The (vbar, lbar) pair determined by the edges of a critical cell."""
    return (tuple(e.tau for e in c.edges), tuple(e.direction - 1 for e in c.edges))


def hilbert_series(d: SummandDescriptor, i: int | None = None) -> RationalGF:
    if i is None:
        i = d.i
    one_minus_t = QPolynomial((1, -1))
    num = QPolynomial.monomial(i)
    for l in d.lbar:
        num = num * (1 - one_minus_t**l)
    return RationalGF(num, d.mu_vbar)


def a_coefficient(lbar, i: int, r: int) -> int:
    """Sum over d_1+...+d_i = r with d_j >= 1 of (-1)^(r+i) prod C(l_j, d_j)."""
    total = 0
    for ds in product(*(range(1, l + 1) for l in lbar)):
        if sum(ds) == r:
            total += math.prod(math.comb(l, d) for l, d in zip(lbar, ds))
    return (-1) ** (r + i) * total


def summand_polynomial(d: SummandDescriptor) -> QPolynomial:
    """Rank of the summand in degree n, as a polynomial in n."""
    i, mu = d.i, d.mu_vbar
    poly = QPolynomial()
    for r in range(i, d.size + 1):
        a = a_coefficient(d.lbar, i, r)
        if a:
            # C(mu - 1 + n - r - i, mu - 1)
            poly = poly + a * QPolynomial.binomial(mu - 1 - r - i, mu - 1)
    return poly


def betti_polynomial(t: LabeledTree, i: int) -> BettiPolynomial:
    _require_tree(t)
    poly = QPolynomial()
    for d in summands(t, i):
        poly = poly + summand_polynomial(d)
    expected = delta(t.base, i) - 1
    if poly.degree != expected:
        raise FormulaError(f"degree {poly.degree} of P_{i} differs from Delta - 1 = {expected}")
    return BettiPolynomial(i, poly)


def betti_polynomial_h1(t: LabeledTree) -> BettiPolynomial:
    _require_tree(t)
    poly = QPolynomial()
    for v in t.essential_labels():
        mu = t.degree[v]
        for l in range(1, mu - 1):
            poly = poly + QPolynomial.binomial(mu - 2, mu - 1) - QPolynomial.binomial(mu - 2 - l, mu - 1 - l)
    return BettiPolynomial(1, poly)


def binomial_form(t: LabeledTree, i: int) -> list[tuple[int, int, int]]:
    """The explicit polynomial as (coefficient, shift, k) terms meaning
    coefficient * C(n + shift, k), merged and sorted."""
    _require_tree(t)
    terms: dict[tuple[int, int], int] = {}
    for d in summands(t, i):
        mu = d.mu_vbar
        for r in range(i, d.size + 1):
            a = a_coefficient(d.lbar, i, r)
            key = (mu - 1 - r - i, mu - 1)
            terms[key] = terms.get(key, 0) + a
    return sorted(((a, s, k) for (s, k), a in terms.items() if a), key=lambda x: (-x[2], -x[1]))


def format_binomial_form(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for a, s, k in terms:
        arg = "n" if s == 0 else (f"n + {s}" if s > 0 else f"n - {-s}")
        body = f"C({arg}, {k})"
        parts.append((a, body if abs(a) == 1 else f"{abs(a)}*{body}"))
    out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
    for a, body in parts[1:]:
        out += (" - " if a < 0 else " + ") + body
    return out


def euler_gf(g: Graph) -> RationalGF:
    """Series whose t^n coefficient is the Euler characteristic of UConf_n(g)."""
    if g.is_circle():
        raise GraphError("Euler series is undefined for a graph homeomorphic to a circle")
    h = smooth_degree_two(g)
    num = QPolynomial((1,))
    for v in range(h.num_vertices):
        num = num * QPolynomial((1, -(h.degree(v) - 1)))
    return RationalGF(num, h.num_edges)


def euler_polynomial(g: Graph) -> tuple[QPolynomial, int]:
    """Polynomial in n agreeing with the Euler characteristic from the returned n on."""
    structure = essential_structure(g)
    if not structure.essential_vertices:
        raise GraphError("Euler polynomial needs at least one essential vertex")
    poly, start = gf_to_polynomial(euler_gf(g))
    expected = len(structure.essential_edges) - 1
    if poly.degree != expected:
        raise FormulaError(f"Euler polynomial has degree {poly.degree}, expected {expected}")
    return poly, start
