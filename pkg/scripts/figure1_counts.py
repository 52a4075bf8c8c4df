"""Critical cell counts of the figure1 tree against C(2, i) C(n, 2i)."""

from __future__ import annotations

import argparse
import math

from graphbraid.catalog import figure1_tree
from graphbraid.layout import prepare
from graphbraid.morse import critical_cell_list


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--method", default="brute", choices=["brute", "direct", "exhaustive"])
    args = ap.parse_args(argv)
    print(" n  i  count  formula")
    for n in range(args.n_max + 1):
        t = prepare(figure1_tree(), n)
        for i in range(min(n, 2) + 1):
            count = len(critical_cell_list(t, n, i, args.method))
            print(f"{n:2d} {i:2d} {count:6d} {math.comb(2, i) * math.comb(n, 2 * i):8d}")


if __name__ == "__main__":
    main()
