"""Print Betti numbers of unordered configuration spaces for a range of n."""

from __future__ import annotations

import argparse

from graphbraid.catalog import CATALOG
from graphbraid.graph import load_graph
from graphbraid.layout import prepare
from graphbraid.morse import morse_complex


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("graph", help="graph file or @name of a built-in graph")
    ap.add_argument("--n-max", type=int, default=5)
    args = ap.parse_args(argv)
    g = CATALOG[args.graph[1:]]() if args.graph.startswith("@") else load_graph(args.graph)
    for n in range(args.n_max + 1):
        h = morse_complex(prepare(g, n), n).homology()
        print(f"n={n}: " + ", ".join(f"H_{i}={x}" for i, x in enumerate(h) if x.rank or x.torsion))


if __name__ == "__main__":
    main()
