import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from partcolor import (
    Coloring,
    Graph,
    PartitionCertificate,
    PreconditionError,
    Verdict,
    brooks_color,
    build_complete,
    build_o_n,
    classify_critical,
    color_via_partition,
    exact_chi,
    extract_critical_structure,
    high_subgraph,
    join,
    omega_d,
    verify_certificate,
)
from partcolor.coloring import (
    CompleteObstruction,
    DegreeTooLarge,
    HypothesisNotMet,
    OddCycleObstruction,
    high_low_split,
)
from partcolor.graph import build_cycle, build_edgeless, build_path, build_petersen, is_complete, is_odd_cycle, reach

from conftest import atlas, graphs


def _proper(g, col, bound):
    colors = col.as_dict()
    assert sorted(colors) == list(range(g.n))
    assert all(colors[u] != colors[v] for u, v in g.edges())
    assert all(0 <= c < bound for c in colors.values())


# --- high vertices and omega_d ----------------------------------------------

def test_high_subgraph_examples():
    assert len(high_subgraph(build_complete(5), 5)) == 0
    h = high_subgraph(build_o_n(5), 5)
    assert h.vertices == [0, 1] and h.num_edges() == 0
    star = Graph.from_edges(7, [(0, v) for v in range(1, 7)])
    assert high_subgraph(star, 2).vertices == [0]


def test_high_low_split_on_o5():
    s = high_low_split(build_o_n(5), 5)
    assert s.high == {0, 1} and s.low == frozenset(range(2, 9)) and s.critical


def test_omega_d_examples():
    assert omega_d(build_petersen(), 3) == 0
    assert omega_d(build_cycle(8), 2) == 0
    assert omega_d(build_o_n(5), 4) == 1
    assert omega_d(build_complete(7), 5) == 7


# --- Brooks -----------------------------------------------------------------

def test_brooks_even_cycle():
    col = brooks_color(build_cycle(6), 2)
    _proper(build_cycle(6), col, 2)


def test_brooks_petersen():
    g = build_petersen()
    col = brooks_color(g, 3)
    _proper(g, col, 3)
    assert exact_chi(g).chi == 3


def test_brooks_obstructions():
    with pytest.raises(CompleteObstruction):
        brooks_color(build_complete(4), 3)
    with pytest.raises(OddCycleObstruction):
        brooks_color(build_cycle(7), 2)
    with pytest.raises(DegreeTooLarge):
        brooks_color(build_complete(5), 3)
    with pytest.raises(PreconditionError):
        brooks_color(build_edgeless(2), 2)


def test_brooks_small_r():
    assert brooks_color(build_complete(1), 1).as_dict() == {0: 0}
    _proper(build_path(5), brooks_color(build_path(5), 2), 2)


def test_brooks_regular_with_cut_vertex():
    # two K_4's, each with one edge subdivided, subdivision vertices joined:
    # cubic, with the bridge ends as cut vertices
    def half(o):
        a, b, c, d, s = (o + i for i in range(5))
        return [(a, c), (a, d), (b, c), (b, d), (c, d), (a, s), (s, b)]
    g = Graph.from_edges(10, half(0) + half(5) + [(4, 9)])
    assert set(g.degrees) == {3}
    _proper(g, brooks_color(g, 3), 3)


def test_brooks_subgraph_of_host():
    g = build_o_n(5)
    # K_4 on x and the core, plus one pendant from the K_4 side
    sub = g.induced([0, 2, 3, 4, 5])
    col = brooks_color(sub, 4)
    assert set(col.vertices) == {0, 2, 3, 4, 5}
    assert col.is_proper(g)


def test_brooks_exhaustive_to_seven(atlas7_connected):
    for g in atlas7_connected:
        if g.n < 3 or is_complete(g) or is_odd_cycle(g):
            continue
        _proper(g, brooks_color(g, g.max_degree()), g.max_degree())


@settings(max_examples=200, deadline=None)
@given(graphs(min_n=3, max_n=14))
def test_brooks_random(g):
    assume(reach(g.adj, g.all_mask, 0) == g.all_mask)
    assume(not is_complete(g) and not is_odd_cycle(g))
    _proper(g, brooks_color(g, g.max_degree()), g.max_degree())


@pytest.mark.parametrize("n,k", [(10, 3), (12, 4), (9, 4), (14, 5)])
def test_brooks_regular_graphs(n, k):
    import networkx as nx
    from conftest import from_nx

    for seed in range(5):
        g = from_nx(nx.random_regular_graph(k, n, seed=seed))
        if reach(g.adj, g.all_mask, 0) != g.all_mask:
            continue
        _proper(g, brooks_color(g, k), k)


# --- coloring through a partition -------------------------------------------

def test_color_c5():
    g = build_cycle(5)
    col = color_via_partition(g, (2, 2), 4)
    assert isinstance(col, Coloring)
    _proper(g, col, 4)
    assert col.num_colors >= exact_chi(g).chi == 3


@pytest.mark.parametrize("r", [(2, 2), (2, 3), (2, 2, 2)])
def test_color_complete_is_special(r):
    d = sum(r)
    out = color_via_partition(build_complete(d + 1), r, d)
    assert isinstance(out, PartitionCertificate) and out.kind == "special"


def test_color_petersen():
    g = build_petersen()
    col = color_via_partition(g, (2, 2), 3)
    _proper(g, col, 4)


def test_color_needs_omega_bound():
    # all of K_6 sits above d = 3, so omega_3 = 6
    with pytest.raises(PreconditionError):
        color_via_partition(build_complete(6), (4, 3), 3)


def test_color_o5_is_special():
    g = build_o_n(5)
    out = color_via_partition(g, (2, 2), 4)
    assert out.kind == "special" and out.q == frozenset(range(5))
    assert verify_certificate(g, out, omega_d=omega_d(g, 4))[0]


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9), st.data())
def test_color_bound_and_oracle(g, data):
    k = data.draw(st.integers(2, 3))
    d = data.draw(st.integers(0, g.max_degree() + 1))
    w = omega_d(g, d)
    lo = max(2, w + 1)
    need = max(g.max_degree() + 1 - k, d, lo * k)
    r = [lo] * k
    for _ in range(need - lo * k + data.draw(st.integers(0, 1))):
        r[data.draw(st.integers(0, k - 1))] += 1
    out = color_via_partition(g, r, d)
    if isinstance(out, Coloring):
        _proper(g, out, sum(r))
        assert out.num_colors >= exact_chi(g).chi
    else:
        assert sum(r) == d
        assert verify_certificate(g, out, omega_d=w)[0]


# --- critical graphs --------------------------------------------------------

def test_structure_rejects_complete():
    with pytest.raises(HypothesisNotMet):
        extract_critical_structure(build_complete(6), 2)


def test_structure_o5():
    g = build_o_n(5)
    s = extract_critical_structure(g, 2)
    assert s.chi == 5 and s.omega_h == 1
    assert [len(c) for c in s.cliques] == [3, 2]
    assert len(s.q) == 5
    assert verify_certificate(g, s)[0]
    for w, c in zip(s.low_witnesses, s.cliques):
        assert w <= c and len(w) >= len(c) - s.omega_h
        for v in w:
            assert g.degree(v) == 4 and all(g.has_edge(v, u) for u in s.q - {v})


def test_structure_rejects_non_critical():
    g = join(build_path(2), build_cycle(5))
    with pytest.raises(HypothesisNotMet):
        extract_critical_structure(Graph.from_edges(g.n + 1, g.edges() + [(0, g.n)]), 2)


def test_classify_examples():
    assert classify_critical(build_complete(7), 1).verdict is Verdict.IS_COMPLETE
    assert classify_critical(build_o_n(5), 1).verdict is Verdict.IS_O5
    for p in range(4):
        assert classify_critical(build_cycle(7), p).verdict is Verdict.HYPOTHESIS_NOT_MET


def test_classify_rejects_non_critical():
    g = Graph.from_edges(8, [(u, v) for u, v in itertools.combinations(range(7), 2)] + [(0, 7)])
    v = classify_critical(g, 1)
    assert v.verdict is Verdict.HYPOTHESIS_NOT_MET and "critical" in v.reason


def test_classify_negative_p():
    assert classify_critical(build_complete(5), -1).verdict is Verdict.HYPOTHESIS_NOT_MET


def test_classify_o_n_other_sizes():
    # O_n for n != 5 is critical but fails the clique bound on H
    for n in (4, 6):
        g = build_o_n(n)
        for p in range(g.max_degree()):
            assert classify_critical(g, p).verdict is not Verdict.THEOREM_VIOLATION


def test_classify_small_critical_graphs():
    from partcolor.oracle import quick_critical

    seen = 0
    for g in atlas(7, connected=True):
        chi = exact_chi(g)
        if not quick_critical(g, chi.chi):
            continue
        seen += 1
        for p in range(g.max_degree() + 1):
            v = classify_critical(g, p, assume_critical=True, chi=chi)
            assert v.verdict is not Verdict.THEOREM_VIOLATION
            if v.verdict is Verdict.IS_COMPLETE:
                assert g.num_edges() == g.n * (g.n - 1) // 2
    assert seen > 10
