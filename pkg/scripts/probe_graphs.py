"""Run the experimental commutation probe on a few non-tree graphs."""

from __future__ import annotations

import argparse
import json

from graphbraid.catalog import CATALOG
from graphbraid.layout import prepare
from graphbraid.morse import commutation_probe


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graphs", nargs="+", default=["whisker", "k4"])
    ap.add_argument("--i", type=int, default=1)
    ap.add_argument("--n-max", type=int, default=4)
    args = ap.parse_args(argv)
    for name in args.graphs:
        g = CATALOG[name]()
        report = commutation_probe(prepare(g, args.n_max), args.i, args.n_max)
        print(name, json.dumps(report.to_dict(), sort_keys=True))


if __name__ == "__main__":
    main()
