"""Clause-by-clause re-verification of engine outputs.

Deliberately written against plain Python sets and ``Graph.neighbors`` only:
no bitset tricks and nothing from the engines, so a bug in the search code
cannot certify itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph


@dataclass(frozen=True)
class Clause:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}" + (f": {self.detail}" if self.detail else "")


class _Report:
    def __init__(self) -> None:
        self.clauses: list[Clause] = []

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.clauses.append(Clause(name, bool(passed), "" if passed else detail))
        return bool(passed)

    def result(self) -> tuple[bool, list[Clause]]:
        return all(c.passed for c in self.clauses), self.clauses


def _nbrs(g: Graph) -> list[set[int]]:
    return [set(g.neighbors(v)) for v in range(g.n)]


def _connected(nb: list[set[int]], vs: set[int]) -> bool:
    if not vs:
        return True
    start = next(iter(vs))
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for u in nb[v] & vs:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen == vs


def _components(nb: list[set[int]], vs: set[int]) -> list[set[int]]:
    rest = set(vs)
    out = []
    while rest:
        start = min(rest)
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for u in nb[v] & rest:
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        out.append(seen)
        rest -= seen
    return out


def _is_clique(nb: list[set[int]], vs: Iterable[int]) -> bool:
    vs = set(vs)
    return all(vs - {v} <= nb[v] for v in vs)


def _movable(nb: list[set[int]], comp: set[int], d: int) -> set[int]:
    return {v for v in comp if len(nb[v]) == d and _connected(nb, comp - {v})}


def _obstruction(nb: list[set[int]], comp: set[int], t: int) -> bool:
    degs = [len(nb[v] & comp) for v in comp]
    if t == 2:
        return len(comp) >= 3 and len(comp) % 2 == 1 and all(x == 2 for x in degs) \
            and _connected(nb, comp)
    return len(comp) == t + 1 and all(x == t for x in degs)


def _regular(nb: list[set[int]], comp: set[int], t: int) -> bool:
    return all(len(nb[v] & comp) == t for v in comp)


def _check_partition(rep: _Report, g: Graph, nb, parts, r) -> bool:
    ok = rep.add("partition_part_count", len(parts) == len(r),
                 f"{len(parts)} parts for {len(r)} budgets")
    seen: set[int] = set()
    overlap = set()
    for p in parts:
        overlap |= seen & set(p)
        seen |= set(p)
    ok &= rep.add("partition_disjoint", not overlap, f"vertices in two parts: {sorted(overlap)}")
    ok &= rep.add("partition_covers", seen == set(range(g.n)),
                  f"uncovered: {sorted(set(range(g.n)) - seen)}, stray: {sorted(seen - set(range(g.n)))}")
    if not ok:
        return False
    worst = []
    for i, p in enumerate(parts):
        for v in p:
            if len(nb[v] & set(p)) > r[i]:
                worst.append((v, i))
    rep.add("degree_bound", not worst, f"(vertex, part) over budget: {worst}")
    where = {v: i for i, p in enumerate(parts) for v in p}
    improving = []
    for v in range(g.n):
        own = where[v]
        here = len(nb[v] & set(parts[own])) - r[own]
        for j, p in enumerate(parts):
            if j != own and len(nb[v] & set(p)) - r[j] < here:
                improving.append((v, j))
                break
    rep.add("local_minimum", not improving, f"improving moves: {improving[:5]}")
    return True


def _check_params(rep: _Report, g: Graph, r, d, minimum: int) -> None:
    k = len(r)
    rep.add("params_k", k >= 2, f"k={k}")
    rep.add("params_r", all(x >= minimum for x in r), f"r={tuple(r)}")
    rep.add("params_weight", sum(r) >= max(g.max_degree() + 1 - k, d),
            f"wt={sum(r)} < max({g.max_degree() + 1 - k}, {d})")


def check_special(g: Graph, r, d, q, cliques, witnesses, omega_d: int | None = None):
    rep = _Report()
    nb = _nbrs(g)
    _check_params(rep, g, r, d, 2)
    k = len(r)
    q = set(q)
    cliques = [set(c) for c in cliques]
    rep.add("wt_equals_d", sum(r) == d, f"wt={sum(r)}, d={d}")
    rep.add("q_size", len(q) == d + 1, f"|Q|={len(q)}, d+1={d + 1}")
    union: set[int] = set()
    disjoint = True
    for c in cliques:
        disjoint &= not (union & c)
        union |= c
    rep.add("cliques_partition_q", len(cliques) == k and disjoint and union == q,
            "F_1..F_k must be k disjoint sets covering Q")
    want = [r[0] + 1] + list(r[1:])
    sizes = [len(c) for c in cliques]
    rep.add("clique_sizes", sizes == want[:len(sizes)] and len(sizes) == k, f"sizes {sizes}, want {want}")
    rep.add("cliques_complete", all(_is_clique(nb, c) for c in cliques),
            "some F_i is not a clique")
    true_w = [_movable(nb, c, d) if c and _connected(nb, c) else set() for c in cliques]
    claimed = [set(w) for w in witnesses]
    rep.add("witness_sets", claimed == true_w, "witness sets differ from the d-movable subgraphs")
    counts = [len(w) for w in true_w]
    need = [2] + [1] * (k - 1)
    if omega_d is not None:
        need = [max(nd, len(c) - omega_d) for nd, c in zip(need, cliques)]
    rep.add("witness_counts", len(counts) == k and all(a >= b for a, b in zip(counts, need)),
            f"|F_i^d| = {counts}, need {need}")
    bad = [v for w in claimed for v in w if not (q - {v}) <= nb[v]]
    rep.add("witnesses_universal", not bad, f"not universal in Q: {bad}")
    return rep.result()


def check_good_partition(g: Graph, r, d, parts):
    rep = _Report()
    nb = _nbrs(g)
    _check_params(rep, g, r, d, 2)
    parts = [set(p) for p in parts]
    if _check_partition(rep, g, nb, parts, r):
        low, edged = [], []
        for i, p in enumerate(parts):
            for comp in _components(nb, p):
                if not _obstruction(nb, comp, r[i]):
                    continue
                if min(len(nb[v]) for v in comp) < d:
                    low.append(sorted(comp))
                mov = _movable(nb, comp, d)
                if any(nb[v] & mov for v in mov):
                    edged.append(sorted(comp))
        rep.add("obstruction_min_degree", not low, f"obstructions with delta_G < d: {low}")
        rep.add("obstruction_movable_edgeless", not edged,
                f"obstructions whose movable subgraph has an edge: {edged}")
    return rep.result()


def check_join(g: Graph, r, d, clique_part, independent_part):
    rep = _Report()
    nb = _nbrs(g)
    _check_params(rep, g, r, d, 1)
    k = len(r)
    a, b = set(clique_part), set(independent_part)
    rep.add("wt_equals_d", sum(r) == d, f"wt={sum(r)}, d={d}")
    rep.add("join_disjoint", not (a & b), "clique and independent parts overlap")
    rep.add("join_size", len(a | b) == d + 1, f"|K_t|+|E|={len(a | b)}, d+1={d + 1}")
    rep.add("join_t_bound", len(a) >= d + 1 - k, f"t={len(a)} < d+1-k={d + 1 - k}")
    rep.add("join_clique", _is_clique(nb, a), "clique part is not a clique")
    rep.add("join_joined", all(b <= nb[v] for v in a), "clique part not joined to the rest")
    rep.add("join_clique_degrees", all(len(nb[v]) == d for v in a), "clique vertex with d_G != d")
    rep.add("join_high_degrees", all(len(nb[v]) > d for v in b), "independent vertex with d_G <= d")
    return rep.result()


def check_degen_partition(g: Graph, r, d, parts, refinement: str = "", witness=None):
    rep = _Report()
    nb = _nbrs(g)
    _check_params(rep, g, r, d, 1)
    rep.add("params_single_one", sum(1 for x in r if x == 1) <= 1, f"r={tuple(r)}")
    parts = [set(p) for p in parts]
    if not _check_partition(rep, g, nb, parts, r):
        return rep.result()
    regular = []
    for i, p in enumerate(parts):
        for comp in _components(nb, p):
            if _regular(nb, comp, r[i]):
                regular.append((i, comp))
    low = [sorted(c) for _, c in regular if min(len(nb[v]) for v in c) < d]
    rep.add("regular_min_degree", not low, f"regular components with delta_G < d: {low}")
    crowded = []
    for i, comp in regular:
        mov = _movable(nb, comp, d)
        heavy = [x for x in mov if len(nb[x] & mov) >= r[i] - 1]
        if len(heavy) > 1:
            crowded.append(sorted(comp))
    rep.add("regular_one_heavy_movable", not crowded,
            f"regular components with two movable vertices of movable degree >= r_i - 1: {crowded}")
    holds_a = all(len(_movable(nb, comp, d)) <= 1 for _, comp in regular)
    holds_b = False
    if witness is not None:
        i, x = witness
        owner = [comp for j, comp in regular if j == i and x in comp]
        if owner:
            comp = owner[0]
            t = {y for y in nb[x] & comp if len(nb[y]) == d}
            holds_b = x in _movable(nb, comp, d) and _is_clique(nb, t)
    if refinement == "a":
        rep.add("refinement_a", holds_a, "a regular component has two or more movable vertices")
    elif refinement == "b":
        rep.add("refinement_b", holds_b, f"witness {witness} does not give a clique")
    else:
        rep.add("refinement", holds_a or holds_b, "neither refinement holds")
    return rep.result()


def check_coloring(g: Graph, colors, max_colors: int | None = None):
    rep = _Report()
    colors = list(colors)
    rep.add("coloring_total", len(colors) == g.n and all(c is not None and c >= 0 for c in colors),
            "some vertex is uncolored")
    if len(colors) == g.n:
        clash = [(u, v) for u, v in g.edges() if colors[u] == colors[v]]
        rep.add("coloring_proper", not clash, f"monochromatic edges: {clash[:5]}")
    if max_colors is not None:
        used = len(set(colors))
        rep.add("coloring_count", used <= max_colors and all(0 <= c < max_colors for c in colors if c is not None),
                f"{used} colors (indices up to {max(colors, default=-1)}), bound {max_colors}")
    return rep.result()


def check_critical_structure(g: Graph, chi: int, omega_h: int, q, cliques, low_witnesses):
    rep = _Report()
    nb = _nbrs(g)
    q = set(q)
    cliques = [set(c) for c in cliques]
    k = len(cliques)
    rep.add("q_size", len(q) == chi, f"|Q|={len(q)}, chi={chi}")
    union: set[int] = set()
    disjoint = True
    for c in cliques:
        disjoint &= not (union & c)
        union |= c
    rep.add("cliques_partition_q", disjoint and union == q, "F_i do not partition Q")
    want = [chi - (k - 1) * (omega_h + 1)] + [omega_h + 1] * (k - 1)
    rep.add("clique_sizes", [len(c) for c in cliques] == want, f"sizes {[len(c) for c in cliques]}, want {want}")
    rep.add("cliques_complete", all(_is_clique(nb, c) for c in cliques), "some F_i is not a clique")
    lows = [set(w) for w in low_witnesses]
    rep.add("low_witness_membership", len(lows) == k and all(w <= c for w, c in zip(lows, cliques)),
            "witnesses must lie in their clique")
    rep.add("low_witness_counts", all(len(w) >= len(c) - omega_h for w, c in zip(lows, cliques)),
            f"counts {[len(w) for w in lows]}")
    rep.add("low_witness_degree", all(len(nb[v]) == chi - 1 for w in lows for v in w),
            "witness is not low")
    rep.add("low_witness_universal", all((q - {v}) <= nb[v] for w in lows for v in w),
            "witness not universal in Q")
    return rep.result()


def verify_certificate(g: Graph, cert, **params) -> tuple[bool, list[Clause]]:
    """Re-check ``cert`` against ``g``; returns ``(passed, clauses)``.

    Accepts :class:`PartitionCertificate`, :class:`DegenCertificate`,
    :class:`Coloring` (``max_colors`` optional) and
    :class:`CriticalStructure`.  ``omega_d`` strengthens the witness-count
    clause for special structures coming from the coloring corollary.
    """
    kind = type(cert).__name__
    if kind == "PartitionCertificate":
        if cert.kind == "special":
            return check_special(g, cert.r, cert.d, cert.q, cert.cliques, cert.witnesses,
                                 params.get("omega_d"))
        if cert.partition is None:
            return False, [Clause("partition_present", False, "no partition in certificate")]
        return check_good_partition(g, cert.r, cert.d, cert.partition.parts)
    if kind == "DegenCertificate":
        if cert.kind == "join":
            return check_join(g, cert.r, cert.d, cert.clique_part, cert.independent_part)
        if cert.partition is None:
            return False, [Clause("partition_present", False, "no partition in certificate")]
        return check_degen_partition(g, cert.r, cert.d, cert.partition.parts,
                                     cert.refinement, cert.refinement_witness)
    if kind == "Coloring":
        colors: list = [None] * g.n
        for v, c in zip(cert.vertices, cert.colors):
            if 0 <= v < g.n:
                colors[v] = c
        return check_coloring(g, colors, params.get("max_colors"))
    if kind == "CriticalStructure":
        return check_critical_structure(g, cert.chi, cert.omega_h, cert.q, cert.cliques,
                                        cert.low_witnesses)
    if isinstance(cert, (list, tuple)):
        return check_coloring(g, cert, params.get("max_colors"))
    raise TypeError(f"cannot verify objects of type {kind}")
