"""Shared fixtures and the acceptance summary hook."""

import numpy as np
import pytest

from motifclust.graph import Graph
from motifclust.motif import Motif, named_motif

# acceptance tests record one verdict per criterion; the summary hook
# prints them as a block at the end of the run
ACCEPTANCE = {}
ACCEPTANCE_TOTAL = 13


def record_criterion(number: int, ok: bool, detail: str):
    ACCEPTANCE[number] = (bool(ok), detail)
    assert ok, f"criterion {number}: {detail}"


@pytest.fixture
def record():
    return record_criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in range(1, ACCEPTANCE_TOTAL + 1):
        if number in ACCEPTANCE:
            ok, detail = ACCEPTANCE[number]
            verdict = "PASS" if ok else "FAIL"
        else:
            verdict, detail = "FAIL", "no result recorded"
        tr.write_line(f"criterion {number:2d}: {verdict}  {detail}")


def random_graph(rng, n: int, p: float, directed: bool = False,
                 weighted: bool = False) -> Graph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            pairs = ((u, v), (v, u)) if directed else ((u, v),)
            for a, b in pairs:
                if rng.random() < p:
                    if weighted:
                        edges.append((a, b, float(rng.uniform(0.2, 3.0))))
                    else:
                        edges.append((a, b))
    return Graph(n, edges, directed=directed)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def k4():
    return Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


@pytest.fixture
def triangle2():
    return named_motif("triangle2")


@pytest.fixture
def tri3():
    return Motif(3, [(0, 1), (0, 2), (1, 2)], anchors=(0, 1, 2))


@pytest.fixture
def paw():
    return Motif(4, [(0, 1), (1, 2), (1, 3), (2, 3)], anchors=(0, 1, 2))
