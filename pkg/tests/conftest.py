import functools

import networkx as nx
import pytest

from gridlock.graph import Graph

# (criterion, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE_ROWS = []


def from_nx(h) -> Graph:
    return Graph(h.nodes, h.edges)


@functools.lru_cache(maxsize=None)
def atlas_connected(max_n: int = 7) -> tuple[Graph, ...]:
    """Every connected graph on 1..max_n vertices, one per isomorphism class."""
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(h):
            out.append(from_nx(h))
    return tuple(out)


@pytest.fixture(scope="session")
def small_graphs():
    return atlas_connected(7)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_ROWS:
        return
    terminalreporter.section("acceptance criteria")
    for crit, ok, detail in sorted(ACCEPTANCE_ROWS, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}  {detail}")
