"""Command-line interface: ``graphbraid <command> GRAPH [options]``.

GRAPH is a graph file, or ``@name`` for a built-in graph (``@y``, ``@k5``...).
Exit status: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from .algebra import gf_coefficient
from .asymptotics import (
    EULER_SIGN_WARNING,
    betti_polynomial,
    binomial_form,
    euler_gf,
    euler_polynomial,
    format_binomial_form,
)
from .catalog import CATALOG
from .checks import VerifyConfig, run_checks, summarize
from .cubes import enumerate_cells, cubical_complex, format_cell
from .graph import Graph, GraphError, delta, load_graph
from .layout import build_layout, prepare
from .morse import (
    Kind,
    classify,
    commutation_probe,
    describe_critical,
    morse_complex,
)
from .report import FORMATS, Report, input_digest

DEFAULT_MAX_CELLS = 2_000_000


class CliError(Exception):
    pass


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.marks: dict[str, float] = {}

    def run(self, name, fn, *args, **kwargs):
        start = time.perf_counter()
        out = fn(*args, **kwargs)
        if self.enabled:
            self.marks[name] = round(time.perf_counter() - start, 6)
        return out

    def timing(self):
        return self.marks if self.enabled else None


def read_graph(spec: str) -> Graph:
    if spec.startswith("@"):
        name = spec[1:]
        if name not in CATALOG:
            raise CliError(f"unknown built-in graph {name!r}; choose from {', '.join(sorted(CATALOG))}")
        return CATALOG[name]()
    try:
        return load_graph(spec)
    except OSError as exc:
        raise CliError(f"cannot read {spec}: {exc.strerror}") from None


def _group_dict(i, h):
    return {"dim": i, "rank": h.rank, "torsion": list(h.torsion), "text": str(h)}


def _homology_table(groups) -> str:
    return "\n".join(f"H_{g['dim']} = {g['text']}" for g in groups)


def _cell_estimate(num_vertices: int, n: int) -> int:
    return math.comb(num_vertices, n)


# -- commands -----------------------------------------------------------------


def cmd_betti(args, g: Graph, clock: _Clock):
    t = clock.run("layout", prepare, g, args.n)
    mc = clock.run("morse", morse_complex, t, args.n)
    groups = clock.run("homology", mc.homology)
    rows = [_group_dict(i, h) for i, h in enumerate(groups)]
    result = {
        "n": args.n,
        "subdivided_vertices": t.num_vertices,
        "critical_cells": mc.dims,
        "homology": rows,
    }
    ok = True
    if args.brute:
        est = _cell_estimate(t.num_vertices, args.n)
        if est > args.max_cells:
            raise CliError(
                f"brute force needs about C({t.num_vertices}, {args.n}) = {est} cells, over --max-cells {args.max_cells}"
            )
        cc = clock.run("cubical", cubical_complex, t, args.n)
        cube = [str(h) for h in clock.run("cubical_homology", cc.homology)]
        ok = cube == [r["text"] for r in rows]
        result["brute_homology"] = cube
        result["brute_agrees"] = ok
    if args.i is not None:
        result["homology"] = [r for r in rows if r["dim"] == args.i]
    table = _homology_table(result["homology"])
    if args.brute:
        table += "\nbrute force " + ("agrees" if ok else "DISAGREES: " + ", ".join(result["brute_homology"]))
    return result, table, [], ok


def cmd_poly(args, g: Graph, clock: _Clock):
    if not g.is_tree():
        raise CliError("explicit polynomial requires a tree; use `betti` for other graphs")
    t = build_layout(g)
    rows = []
    lines = []
    for i in range(args.i_max + 1):
        p = clock.run(f"poly_{i}", betti_polynomial, t, i)
        terms = binomial_form(t, i)
        d = delta(g, i)
        rows.append(
            {
                "i": i,
                "delta": d,
                "degree": p.poly.degree,
                "degree_ok": p.poly.degree == d - 1,
                "coefficients": p.poly.to_pairs(),
                "text": str(p.poly),
                "binomial_form": [list(x) for x in terms],
            }
        )
        lines.append(f"P_{i}(n) = {format_binomial_form(terms)}")
        lines.append(f"        = {p.poly}    (Delta = {d}, degree {p.poly.degree})")
    return {"polynomials": rows}, "\n".join(lines), [], all(r["degree_ok"] for r in rows)


def cmd_euler(args, g: Graph, clock: _Clock):
    f = euler_gf(g)
    result = {"series_numerator": f.numerator.to_pairs(), "series_pole_order": f.k}
    lines = []
    if args.poly:
        poly, start = euler_polynomial(g)
        result["polynomial"] = poly.to_pairs()
        result["valid_from"] = start
        lines.append(f"chi(n) = {poly}   for n >= {start}")
    else:
        values = [int(gf_coefficient(f, n)) for n in range(args.n_max + 1)]
        result["values"] = values
        lines += [f"chi(UConf_{n}) = {v}" for n, v in enumerate(values)]
    return result, "\n".join(lines), [EULER_SIGN_WARNING], True


def cmd_cells(args, g: Graph, clock: _Clock):
    t = prepare(g, args.n)
    est = _cell_estimate(t.num_vertices, args.n)
    if est > args.max_cells:
        raise CliError(f"listing cells needs about {est} cells, over --max-cells {args.max_cells}")
    rows = []
    for c in clock.run("enumerate", enumerate_cells, t, args.n, args.i):
        cls = classify(t, c)
        if args.cls and cls.kind.value != args.cls:
            continue
        row = {"cell": format_cell(t, c), "class": cls.kind.value}
        if cls.vertex is not None:
            row["unblocked_vertex"] = cls.vertex
        if cls.edge is not None:
            row["order_respecting_edge"] = t.edge_name(cls.edge)
        if cls.kind is Kind.CRITICAL:
            info = describe_critical(t, c)
            row["edges"] = [
                {
                    "edge": t.edge_name(e.edge),
                    "tau": e.tau,
                    "direction": e.direction,
                    "deleted": e.deleted,
                    "witnesses": list(e.witnesses),
                }
                for e in info.edges
            ]
        rows.append(row)
    table = "\n".join(f"{r['cell']:<40} {r['class']}" for r in rows) + f"\n{len(rows)} cells"
    return {"n": args.n, "i": args.i, "cells": rows}, table, [], True


def cmd_layout(args, g: Graph, clock: _Clock):
    t = prepare(g, args.n) if args.n is not None else build_layout(g)
    verts = [
        {
            "label": v,
            "vertex": t.vertex_of[v],
            "parent": t.parent[v],
            "degree": t.degree[v],
            "essential_edge": t.essential_edge_of[v],
        }
        for v in range(t.num_vertices)
    ]
    edges = [{"rank": r, "edge": t.edge_name(r), "tree": t.in_tree[r]} for r in range(t.num_edges)]
    lines = ["label vertex parent degree ess_edge"]
    lines += [f"{r['label']:>5} {r['vertex']:>6} {r['parent']:>6} {r['degree']:>6} {r['essential_edge']:>8}" for r in verts]
    lines.append("edges: " + " ".join(e["edge"] + ("" if e["tree"] else "*") for e in edges))
    return {"root": t.root, "vertices": verts, "edges": edges}, "\n".join(lines), [], True


def cmd_verify(args, g: Graph, clock: _Clock):
    config = VerifyConfig(n_max=args.n_max, i_max=args.i_max, max_cells=args.verify_cells)
    results = clock.run("checks", run_checks, g, config)
    summary = summarize(results)
    rows = [r.to_dict() for r in results]
    lines = []
    for r in results:
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[r.passed]
        lines.append(f"{status} n={r.n} {r.name}" + (f": {r.detail}" if r.detail else ""))
    lines.append(f"{summary['passed']} passed, {summary['failed']} failed, {summary['skipped']} skipped")
    result = {"n_max": args.n_max, "i_max": args.i_max, "checks": rows, **summary}
    return result, "\n".join(lines), [], summary["failed"] == 0


def cmd_probe(args, g: Graph, clock: _Clock):
    t = prepare(g, args.n_max + 1)
    rep = clock.run("probe", commutation_probe, t, args.i, args.n_max)
    result = {"experimental": True, **rep.to_dict()}
    lines = [
        "EXPERIMENTAL: compares d(x_e c) with x_e d(c); a mismatch is a finding, not an error",
        f"checked {rep.checked}, skipped {rep.skipped}, mismatches {len(rep.mismatches)}",
    ]
    for m in rep.mismatches:
        lines.append(f"n={m.n} e={m.essential_edge} {m.cell}: lhs {m.lhs} rhs {m.rhs}")
    return result, "\n".join(lines), ["experimental probe; no answer is assumed"], True


COMMANDS = {
    "betti": cmd_betti,
    "poly": cmd_poly,
    "euler": cmd_euler,
    "cells": cmd_cells,
    "layout": cmd_layout,
    "verify": cmd_verify,
    "probe": cmd_probe,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("graph", help="graph file, or @name for a built-in graph")
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")

    ap = argparse.ArgumentParser(prog="graphbraid", description="Homology of graph braid groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", parents=[common], help="homology of B_n G via the Morse complex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--brute", action="store_true", help="also compute from the full cubical complex")
    p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)

    p = sub.add_parser("poly", parents=[common], help="Betti polynomials of a tree")
    p.add_argument("--i-max", type=int, default=2)

    p = sub.add_parser("euler", parents=[common], help="Euler characteristics of UConf_n G")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--n-max", type=int)
    grp.add_argument("--poly", action="store_true")

    p = sub.add_parser("cells", parents=[common], help="list and classify the i-cells of UD_n G")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=[k.value for k in Kind])
    p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)

    p = sub.add_parser("layout", parents=[common], help="show the labelled spanning tree")
    p.add_argument("--n", type=int, help="subdivide for n points first")

    p = sub.add_parser("verify", parents=[common], help="run the invariant battery")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--i-max", type=int, default=2)
    p.add_argument("--verify-cells", type=int, default=VerifyConfig.max_cells)

    p = sub.add_parser("probe", parents=[common], help="experimental commutation probe")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    return ap


def _echo(argv) -> str:
    # Drop output-only flags so the echo depends on the computation alone.
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a in ("--out", "--format"):
            skip = True
            continue
        if a.startswith(("--out=", "--format=")) or a == "--timing":
            continue
        out.append(a)
    return " ".join(out)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    for name in ("n", "n_max", "i", "i_max"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            print(f"error: --{name.replace('_', '-')} must be non-negative", file=sys.stderr)
            return 2
    clock = _Clock(args.timing)
    try:
        g = read_graph(args.graph)
        result, table, warnings, ok = COMMANDS[args.command](args, g, clock)
    except (CliError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = Report(_echo(argv), input_digest(g), result, warnings, clock.timing(), ok)
    text = report.emit(args.format, table)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
