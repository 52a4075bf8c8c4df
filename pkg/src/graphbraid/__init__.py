"""Homology of graph braid groups via discrete Morse theory on UD_n(G)."""

from .algebra import HomologyGroup, IntegerMatrix, QPolynomial, RationalGF, gf_coefficient, gf_to_polynomial
from .asymptotics import betti_polynomial, euler_gf, euler_polynomial, hilbert_series, summands
from .cubes import Cell, cubical_complex, enumerate_cells
from .graph import Graph, delta, essential_structure, load_graph, parse_graph, subdivide_for
from .layout import LabeledTree, build_layout, prepare
from .morse import classify, commutation_probe, critical_cells, morse_complex, sg_action

__all__ = [
    "Cell",
    "Graph",
    "HomologyGroup",
    "IntegerMatrix",
    "LabeledTree",
    "QPolynomial",
    "RationalGF",
    "betti_polynomial",
    "build_layout",
    "classify",
    "commutation_probe",
    "critical_cells",
    "cubical_complex",
    "delta",
    "enumerate_cells",
    "essential_structure",
    "euler_gf",
    "euler_polynomial",
    "gf_coefficient",
    "gf_to_polynomial",
    "hilbert_series",
    "load_graph",
    "morse_complex",
    "parse_graph",
    "prepare",
    "subdivide_for",
    "summands",
]
