import itertools
import os
import random
import subprocess
import sys

import networkx as nx
import pytest

from partcolor import (
    Graph,
    build_complete,
    build_o_n,
    enumerate_graphs,
    exact_chi,
    extract_critical_subgraph,
    is_vertex_critical,
    isomorphic,
)
from partcolor.graph import build_cycle, build_petersen, disjoint_union
from partcolor.oracle import OracleSizeError, OracleTimeout, canonical_code, quick_critical

from conftest import atlas, gnp, to_nx


def _colorable(g, m):
    """Plain backtracking in id order; shares nothing with the oracle."""
    colors = [-1] * g.n

    def place(v):
        if v == g.n:
            return True
        for c in range(m):
            if all(colors[u] != c for u in g.neighbors(v) if u < v):
                colors[v] = c
                if place(v + 1):
                    return True
        colors[v] = -1
        return False

    return place(0)


def _brute_chi(g):
    m = 0
    while not _colorable(g, m):
        m += 1
    return m


def _by_product(g, m):
    edges = g.edges()
    return any(all(c[u] != c[v] for u, v in edges) for c in itertools.product(range(m), repeat=g.n))


# --- chromatic number -------------------------------------------------------

@pytest.mark.parametrize("g,chi", [(build_cycle(5), 3), (build_complete(6), 6), (build_o_n(5), 5),
                                   (build_petersen(), 3), (Graph.from_edges(0, []), 0),
                                   (Graph.from_edges(3, []), 1)])
def test_exact_chi_examples(g, chi):
    cert = exact_chi(g)
    assert cert.chi == chi
    assert len(cert.coloring) == g.n
    assert all(cert.coloring[u] != cert.coloring[v] for u, v in g.edges())
    assert len(set(cert.coloring)) == chi


def test_exact_chi_against_two_brute_force_colorers():
    for g in atlas(6):
        cert = exact_chi(g)
        assert cert.chi == _brute_chi(g)
        # second, structurally different colorer: full product enumeration
        if g.n <= 5:
            assert _by_product(g, cert.chi) and (cert.chi == 0 or not _by_product(g, cert.chi - 1))
        assert all(cert.coloring[u] != cert.coloring[v] for u, v in g.edges())
        assert len(set(cert.coloring)) == cert.chi
        assert len(cert.lower_bound_clique) <= cert.chi


def test_exact_chi_random_mid_size():
    for seed in range(40):
        g = gnp(11, 0.45, seed)
        assert exact_chi(g).chi == _brute_chi(g)


def test_grotzsch_needs_search():
    h = nx.mycielski_graph(4)
    g = Graph.from_edges(h.number_of_nodes(), h.edges())
    cert = exact_chi(g)
    assert cert.chi == 4 and cert.lower_bound == "exhaustive" and len(cert.lower_bound_clique) == 2


def test_exact_chi_size_bound():
    with pytest.raises(OracleSizeError):
        exact_chi(build_complete(5), max_n=4)


def test_exact_chi_timeout():
    h = nx.mycielski_graph(5)
    g = Graph.from_edges(h.number_of_nodes(), h.edges())
    with pytest.raises(OracleTimeout):
        exact_chi(g, max_n=40, timeout=1e-6)


def test_size_bound_from_environment():
    code = ("from partcolor import exact_chi, build_complete\n"
            "from partcolor.oracle import OracleSizeError\n"
            "try:\n    exact_chi(build_complete(6))\nexcept OracleSizeError:\n    print('bounded')\n")
    env = dict(os.environ, PARTCOLOR_ORACLE_MAX_N="5")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "bounded"


# --- criticality ------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_complete_graphs_are_critical(n):
    assert is_vertex_critical(build_complete(n)).is_critical


def test_even_cycle_not_critical():
    cert = is_vertex_critical(build_cycle(6))
    assert not cert.is_critical and cert.chi == 2 and set(cert.deleted_chi) == {2}


def test_o5_critical():
    cert = is_vertex_critical(build_o_n(5))
    assert cert.is_critical and cert.chi == 5 and cert.deleted_chi == (4,) * 9


def test_quick_critical_agrees(atlas7):
    for g in atlas7[:400]:
        assert quick_critical(g) == is_vertex_critical(g).is_critical


# --- critical subgraphs -----------------------------------------------------

def test_extract_k4_with_pendant():
    g = Graph.from_edges(5, list(itertools.combinations(range(4), 2)) + [(3, 4)])
    sub, kept = extract_critical_subgraph(g)
    assert kept == (0, 1, 2, 3) and isomorphic(sub, build_complete(4))


def test_extract_c5_plus_edge():
    sub, kept = extract_critical_subgraph(disjoint_union(build_cycle(5), build_complete(2)))
    assert kept == (0, 1, 2, 3, 4) and isomorphic(sub, build_cycle(5))


@pytest.mark.parametrize("seed", range(8))
def test_extract_random(seed):
    g = gnp(10, 0.5, seed)
    sub, kept = extract_critical_subgraph(g)
    cert = is_vertex_critical(sub)
    assert cert.is_critical and cert.chi == exact_chi(g).chi
    assert sub == g.induced(kept).to_graph()


# --- enumeration ------------------------------------------------------------

ALL = [1, 1, 2, 4, 11, 34, 156, 1044, 12346]
CONNECTED = [1, 1, 1, 2, 6, 21, 112, 853, 11117]


@pytest.mark.parametrize("n", range(0, 8))
def test_enumeration_counts(n):
    assert sum(1 for _ in enumerate_graphs(n)) == ALL[n]
    assert sum(1 for _ in enumerate_graphs(n, connected_only=True)) == CONNECTED[n]


def test_enumeration_counts_match_atlas():
    for n in range(1, 8):
        assert sum(1 for g in atlas(7) if g.n == n) == ALL[n]
        assert sum(1 for g in atlas(7, connected=True) if g.n == n) == CONNECTED[n]


def test_enumeration_eight():
    graphs = list(enumerate_graphs(8))
    assert len(graphs) == ALL[8]
    assert sum(1 for g in graphs if nx.is_connected(to_nx(g))) == CONNECTED[8]
    assert len({canonical_code(g) for g in graphs}) == ALL[8]


def test_enumeration_classes_distinct():
    five = list(enumerate_graphs(5))
    for a, b in itertools.combinations(five, 2):
        assert not nx.is_isomorphic(to_nx(a), to_nx(b))
    six = list(enumerate_graphs(6))
    for a, b in itertools.combinations(six, 2):
        if sorted(a.degrees) == sorted(b.degrees):
            assert not isomorphic(a, b)


def test_every_atlas_graph_is_enumerated():
    for n in range(1, 7):
        codes = {canonical_code(g) for g in enumerate_graphs(n)}
        for g in atlas(6):
            if g.n == n:
                assert canonical_code(g) in codes


def test_canonical_code_is_invariant():
    rng = random.Random(5)
    for _ in range(50):
        g = gnp(8, 0.5, rng.randrange(10**6))
        h = g.relabel(rng.sample(range(8), 8))
        assert canonical_code(g) == canonical_code(h)


def test_enumeration_bounds():
    with pytest.raises(OracleSizeError):
        list(enumerate_graphs(9))
    assert [g.n for g in enumerate_graphs(1)] == [1]
    three = list(enumerate_graphs(3, connected_only=True))
    assert len(three) == 2 and sorted(g.num_edges() for g in three) == [2, 3]
