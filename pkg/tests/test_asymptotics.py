from fractions import Fraction
from math import comb

import pytest

from graphbraid.algebra import QPolynomial, RationalGF, gf_coefficient, gf_to_polynomial
from graphbraid.asymptotics import (
    FormulaError,
    SummandDescriptor,
    a_coefficient,
    betti_polynomial,
    betti_polynomial_h1,
    euler_gf,
    euler_polynomial,
    hilbert_series,
    summand_of,
    summands,
)
from graphbraid.catalog import caterpillar, complete_graph, figure1_tree, path_graph, star, y_graph
from graphbraid.graph import Graph, GraphError
from graphbraid.layout import build_layout, prepare
from graphbraid.morse import critical_cells


def test_summands_examples():
    y = build_layout(y_graph())
    (d,) = summands(y, 1)
    assert (d.vbar, d.lbar, d.mu_vbar) == ((y.essential_labels()[0],), (1,), 3)
    f = build_layout(figure1_tree())
    assert [(d.vbar, d.lbar) for d in summands(f, 1)] == [((2,), (1,)), ((4,), (1,))]
    s5 = build_layout(star(5))
    assert [d.lbar for d in summands(s5, 1)] == [(1,), (2,), (3,)]


def test_hilbert_series_examples():
    y = build_layout(y_graph())
    (d,) = summands(y, 1)
    f = hilbert_series(d)
    assert f == RationalGF(QPolynomial.monomial(2), 3)
    assert [gf_coefficient(f, n) for n in range(8)] == [comb(n, 2) for n in range(8)]
    g = hilbert_series(SummandDescriptor((0,), (2,), 4))
    assert g == RationalGF(QPolynomial([0, 0, 2, -1]), 4)


def test_a_coefficients():
    assert a_coefficient((2,), 1, 1) == 2
    assert a_coefficient((2,), 1, 2) == -1
    # brute expansion of prod (1 - (1-t)^l)
    lbar = (2, 3)
    one_minus_t = QPolynomial([1, -1])
    prod = QPolynomial([1])
    for l in lbar:
        prod = prod * (1 - one_minus_t**l)
    for r in range(2, 6):
        assert prod.coeffs[r] * (-1) ** 0 == a_coefficient(lbar, 2, r)


def test_summand_counts_star4():
    # labels move under subdivision, so descriptors are compared by base vertex
    t4 = build_layout(star(4))
    for d in summands(t4, 1):
        f = hilbert_series(d)
        key = (tuple(t4.vertex_of[v] for v in d.vbar), d.lbar)
        for n in range(9):
            t = prepare(star(4), n)
            count = 0
            for c in critical_cells(t, n, 1):
                vbar, lbar = summand_of(c)
                count += (tuple(t.vertex_of[v] for v in vbar), lbar) == key
            assert gf_coefficient(f, n) == count


def test_betti_polynomial_examples():
    y = build_layout(y_graph())
    p = betti_polynomial(y, 1)
    assert p.poly == QPolynomial.binomial(0, 2)
    assert p(4) == 6
    f = build_layout(figure1_tree())
    for i in range(3):
        p = betti_polynomial(f, i)
        assert p.poly == comb(2, i) * QPolynomial.binomial(0, 2 * i)


def test_betti_polynomial_requires_tree():
    with pytest.raises(GraphError, match="explicit polynomial requires a tree"):
        betti_polynomial(prepare(complete_graph(4), 2), 1)


def test_h1_closed_form():
    for g in (y_graph(), figure1_tree(), star(4), star(5), caterpillar([3, 4, 5]), path_graph(3)):
        t = build_layout(g)
        assert betti_polynomial_h1(t).poly == betti_polynomial(t, 1).poly
    assert betti_polynomial_h1(build_layout(path_graph(3))).poly.is_zero()


def test_h1_star4_against_brute():
    t4 = build_layout(star(4))
    p = betti_polynomial_h1(t4)
    for n in range(7):
        assert p(n) == len(critical_cells(prepare(star(4), n), n, 1, "exhaustive"))


def test_degree_three_trees():
    g = caterpillar([3, 3, 3])
    t = build_layout(g)
    for i in range(4):
        assert betti_polynomial(t, i).poly == comb(3, i) * QPolynomial.binomial(0, 2 * i)


def test_euler_examples():
    assert gf_coefficient(euler_gf(y_graph()), 0) == 1
    assert gf_coefficient(euler_gf(y_graph()), 1) == 1
    assert gf_coefficient(euler_gf(y_graph()), 2) == 0
    assert gf_coefficient(euler_gf(complete_graph(5)), 2) == -5
    assert gf_coefficient(euler_gf(complete_graph(5)), 1) == 5 - 10


def test_euler_polynomial():
    p, start = euler_polynomial(figure1_tree())
    assert p.degree == 4 and start == 0
    assert p(2) == -1
    assert euler_polynomial(y_graph())[0].degree == 2
    for k in (3, 4, 5, 6):
        assert euler_polynomial(star(k))[0].degree == k - 1
    with pytest.raises(GraphError):
        euler_polynomial(path_graph(2))
    with pytest.raises(GraphError):
        euler_gf(Graph.from_edges([(0, 1), (1, 2), (2, 0)]))


def test_euler_matches_betti_on_trees():
    for g in (figure1_tree(), star(5), caterpillar([3, 4])):
        t = build_layout(g)
        polys = [betti_polynomial(t, i) for i in range(4)]
        f = euler_gf(g)
        for n in range(10):
            assert gf_coefficient(f, n) == sum((-1) ** i * p(n) for i, p in enumerate(polys))


def test_sum_of_summand_polynomials():
    t = build_layout(caterpillar([3, 4, 5]))
    for i in range(4):
        total = QPolynomial()
        for d in summands(t, i):
            poly, start = gf_to_polynomial(hilbert_series(d))
            assert start == 0
            total = total + poly
        assert total == betti_polynomial(t, i).poly


def test_leading_coefficient_witness():
    from graphbraid.asymptotics import summand_polynomial
    from graphbraid.graph import delta

    for g in (figure1_tree(), star(5), caterpillar([3, 4, 5])):
        t = build_layout(g)
        for i in range(1, len(t.essential_labels()) + 1):
            D = delta(g, i)
            (d, *_) = [d for d in summands(t, i) if d.mu_vbar == D and set(d.lbar) == {1}]
            assert summand_polynomial(d) == QPolynomial.binomial(D - 1 - 2 * i, D - 1)
            assert betti_polynomial(t, i).poly.degree == D - 1


def test_integer_values():
    t = build_layout(caterpillar([5, 4, 3]))
    for i in range(4):
        p = betti_polynomial(t, i)
        for n in range(-3, 12):
            assert p.poly(n).denominator == 1
