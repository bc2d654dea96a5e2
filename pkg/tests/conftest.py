from __future__ import annotations

import random

import pytest
from hypothesis import settings

from c4flag.graphs import SmallGraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: dict[int, str] = {}


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> SmallGraph:
    return SmallGraph.from_edges(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
