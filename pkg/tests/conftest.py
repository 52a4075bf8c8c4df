from __future__ import annotations

from pathlib import Path

import pytest

from graphbraid.graph import load_graph

CORPUS_DIR = Path(__file__).resolve().parent.parent / "graphs"

TREE_NAMES = [
    "path3",
    "tripod",
    "y",
    "star4",
    "star5",
    "spider123",
    "figure1",
    "twin33",
    "cat34",
    "cat43",
    "cat333",
]
OTHER_NAMES = ["k4", "k5", "k33", "whisker"]


def corpus_graph(name: str):
    return load_graph(CORPUS_DIR / f"{name}.graph")


@pytest.fixture(scope="session")
def corpus():
    return {name: corpus_graph(name) for name in TREE_NAMES + OTHER_NAMES}


# acceptance verdicts, printed once at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
