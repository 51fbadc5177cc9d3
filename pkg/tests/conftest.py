"""Shared corpora.  The networkx graph atlas (every graph on at most 7
vertices) is used as an outside reference, never by the package itself."""

from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx
import pytest
from hypothesis import strategies as st

from partcolor import Graph


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges()])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@lru_cache(maxsize=None)
def atlas(max_n: int = 7, connected: bool = False) -> tuple[Graph, ...]:
    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == 0 or h.number_of_nodes() > max_n:
            continue
        if connected and not nx.is_connected(h):
            continue
        out.append(from_nx(h))
    return tuple(out)


def gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@pytest.fixture(scope="session")
def atlas7():
    return atlas(7)


@pytest.fixture(scope="session")
def atlas7_connected():
    return atlas(7, True)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
