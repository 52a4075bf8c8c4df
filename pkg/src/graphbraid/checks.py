"""The invariant battery run by ``verify``."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .algebra import gf_coefficient
from .asymptotics import betti_polynomial, euler_gf
from .cubes import count_cells, cubical_complex, format_cell
from .layout import LabeledTree, prepare
from .morse import (
    ActionError,
    Kind,
    classify,
    critical_cell_list,
    max_critical_dimension,
    morse_complex,
    sg_action,
)


@dataclass
class VerifyConfig:
    n_max: int = 4
    i_max: int = 2
    max_cells: int = 400_000  # skip checks that enumerate every cell above this
    method: str = "auto"


@dataclass
class CheckResult:
    name: str
    n: int
    passed: bool | None  # None means skipped
    detail: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def total_cells(t: LabeledTree, n: int) -> int:
    return sum(count_cells(t, n, i) for i in range(n + 1))


def _pad(groups, length):
    return [str(h) for h in groups] + ["0"] * (length - len(groups))


def _check_generators(t, n, i, method):
    """First critical i-cell of degree n outside the image of the action, if any."""
    image = set()
    for c in critical_cell_list(t, n - 1, i, method):
        for ee in range(t.num_essential_edges):
            try:
                image.add(sg_action(t, c, ee).cell)
            except ActionError:
                pass
    for c in critical_cell_list(t, n, i, method):
        if c not in image:
            return c
    return None


def checks_for(g, n: int, config: VerifyConfig) -> list[CheckResult]:
    t = prepare(g, n)
    out: list[CheckResult] = []
    is_tree = t.is_tree
    top = max_critical_dimension(t, n)

    mc = morse_complex(t, n, config.method)
    zero = True
    for i in range(2, len(mc.differential)):
        if not (mc.differential[i - 1] @ mc.differential[i]).is_zero():
            zero = False
            out.append(CheckResult("morse_squared", n, False, f"nonzero composite in dimension {i}"))
    if zero:
        out.append(CheckResult("morse_squared", n, True))
    morse_h = mc.homology()

    if top + 1 <= n:
        extra = critical_cell_list(t, n, top + 1, "brute")
        out.append(
            CheckResult(
                "dimension_bound",
                n,
                not extra,
                "" if not extra else f"critical cell above N_G: {format_cell(t, extra[0])}",
            )
        )

    if is_tree:
        out.append(
            CheckResult(
                "tree_trivial_differential",
                n,
                mc.is_trivial(),
                "" if mc.is_trivial() else "nonzero Morse differential on a tree",
            )
        )
        for i in range(min(config.i_max, n) + 1):
            value = betti_polynomial(t, i)(n)
            count = mc.dims[i] if i < len(mc.dims) else 0
            ok = value == count
            out.append(
                CheckResult(f"formula_vs_count[i={i}]", n, ok, "" if ok else f"P_{i}({n}) = {value}, count = {count}")
            )

    chi_series = gf_coefficient(euler_gf(g), n)
    chi_h = sum((-1) ** i * h.rank for i, h in enumerate(morse_h))
    out.append(
        CheckResult("euler", n, chi_series == chi_h, "" if chi_series == chi_h else f"series {chi_series}, homology {chi_h}")
    )

    for i in range(min(config.i_max, n) + 1):
        if n > 2 * i and not t.num_essential_edges:
            # no variables act; generation only holds with an essential vertex
            out.append(CheckResult(f"generators[i={i}]", n, None, "graph has no essential vertex"))
        elif n > 2 * i:
            bad = _check_generators(t, n, i, config.method)
            out.append(
                CheckResult(
                    f"generators[i={i}]",
                    n,
                    bad is None,
                    "" if bad is None else f"not in the image of the action: {format_cell(t, bad)}",
                )
            )

    size = total_cells(t, n)
    if size > config.max_cells:
        why = f"{size} cells exceeds max_cells = {config.max_cells}"
        for name in ("boundary_squared", "partition", "morse_vs_cubical"):
            out.append(CheckResult(name, n, None, why))
        return out

    cc = cubical_complex(t, n)
    bad_dim = None
    for i in range(2, len(cc.boundary)):
        if not (cc.boundary[i - 1] @ cc.boundary[i]).is_zero():
            bad_dim = i
            break
    out.append(
        CheckResult("boundary_squared", n, bad_dim is None, "" if bad_dim is None else f"dimension {bad_dim}")
    )

    counts = []
    for i, cells in enumerate(cc.cells_by_dim):
        tally = {k: 0 for k in Kind}
        for c in cells:
            tally[classify(t, c).kind] += 1
        counts.append(tally)
    problems = []
    for i, tally in enumerate(counts):
        if tally[Kind.CRITICAL] != mc.dims[i]:
            problems.append(f"dimension {i}: {tally[Kind.CRITICAL]} critical by classification, {mc.dims[i]} enumerated")
        up = counts[i + 1][Kind.COLLAPSIBLE] if i + 1 < len(counts) else 0
        if tally[Kind.REDUNDANT] != up:
            problems.append(f"dimension {i}: {tally[Kind.REDUNDANT]} redundant vs {up} collapsible above")
    out.append(CheckResult("partition", n, not problems, "; ".join(problems)))

    cube_h = cc.homology()
    length = max(len(cube_h), len(morse_h))
    a, b = _pad(morse_h, length), _pad(cube_h, length)
    out.append(CheckResult("morse_vs_cubical", n, a == b, "" if a == b else f"Morse {a} vs cubical {b}"))
    return out


def run_checks(g, config: VerifyConfig) -> list[CheckResult]:
    out = []
    for n in range(config.n_max + 1):
        out.extend(checks_for(g, n, config))
    return out


def summarize(results: list[CheckResult]) -> dict:
    return {
        "passed": sum(r.passed is True for r in results),
        "failed": sum(r.passed is False for r in results),
        "skipped": sum(r.passed is None for r in results),
    }
