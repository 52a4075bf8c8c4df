"""Write the graph corpus used by the tests into graphs/."""

from __future__ import annotations

import argparse
from pathlib import Path

from graphbraid.catalog import (
    caterpillar,
    complete_bipartite,
    complete_graph,
    cycle_with_whisker,
    figure1_tree,
    path_graph,
    star,
    y_graph,
)
from graphbraid.graph import Graph, format_graph


def spider(legs):
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(edges, num_vertices=nxt, root=nxt - 1)


def corpus() -> dict[str, Graph]:
    twin = caterpillar([3, 3], spacing=3, leg=2)
    return {
        "path3": path_graph(3),
        "tripod": star(3, 1),
        "y": y_graph(),
        "star4": star(4),
        "star5": star(5),
        "spider123": spider([1, 2, 3]),
        "figure1": figure1_tree(),
        # same degree sequence (3, 3) as figure1, drawn and rooted differently
        "twin33": twin.with_root(twin.num_vertices - 1),
        "cat34": caterpillar([3, 4]),
        "cat43": caterpillar([4, 3], spacing=2),
        "cat333": caterpillar([3, 3, 3]),
        "k4": complete_graph(4),
        "k5": complete_graph(5),
        "k33": complete_bipartite(3, 3),
        "whisker": cycle_with_whisker(3, 1),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "graphs"))
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, g in corpus().items():
        (out / f"{name}.graph").write_text(format_graph(g))
        print(f"wrote {name}.graph ({g.num_vertices} vertices, {g.num_edges} edges)")


if __name__ == "__main__":
    main()
