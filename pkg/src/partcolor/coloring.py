"""Colorings built from good partitions, and the critical-graph corollaries.

Each part of a good partition is colored with its own palette (part ``i``
gets colors ``offset_i .. offset_i + r_i - 1``), component by component,
with a Brooks-style greedy coloring.  On top of that sit the structural
consequences for vertex-critical graphs: the clique structure ``Q`` and the
classifier that says a critical graph meeting the degree and high-clique
hypotheses is complete or ``O_5``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .graph import (
    Graph,
    InducedSubgraph,
    bits,
    build_o_n,
    component_masks,
    cut_vertices_mask,
    isomorphic,
    lowest,
    max_clique,
    reach,
)
from .oracle import ChiCertificate, CriticalityCertificate, exact_chi, is_vertex_critical
from .partition import (
    EngineError,
    PartitionCertificate,
    PreconditionError,
    find_partition_t1,
    is_obstruction,
    weight,
)
from .verify import verify_certificate

CRITICAL_CHECK_MAX_N = 12


class BrooksError(PreconditionError):
    """Input to :func:`brooks_color` is not Brooks-colorable with ``r`` colors."""


class CompleteObstruction(BrooksError):
    pass


class OddCycleObstruction(BrooksError):
    pass


class DegreeTooLarge(BrooksError):
    pass


class HypothesisNotMet(PreconditionError):
    pass


class TheoremViolationError(RuntimeError):
    def __init__(self, message: str, evidence: dict):
        super().__init__(message)
        self.evidence = evidence


@dataclass(frozen=True)
class Coloring:
    """Colors ``colors[i]`` for vertex ``vertices[i]`` (host ids).

    For a coloring of a whole graph ``vertices`` is ``0..n-1``.
    """

    colors: tuple[int, ...]
    vertices: tuple[int, ...]

    @classmethod
    def from_dict(cls, assignment: dict[int, int]) -> "Coloring":
        vs = tuple(sorted(assignment))
        return cls(tuple(assignment[v] for v in vs), vs)

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.vertices, self.colors))

    def is_proper(self, g: Graph) -> bool:
        col = self.as_dict()
        return all(col[u] != col[v] for u, v in g.edges() if u in col and v in col)


@dataclass(frozen=True)
class HighLowSplit:
    threshold: int
    high: frozenset[int]
    low: frozenset[int]
    critical: bool


@dataclass(frozen=True)
class CriticalStructure:
    q: frozenset[int]
    cliques: tuple[frozenset[int], ...]
    low_witnesses: tuple[frozenset[int], ...]
    k: int
    chi: int
    omega_h: int


class Verdict(enum.Enum):
    IS_COMPLETE = "IsCompleteKChi"
    IS_O5 = "IsO5"
    HYPOTHESIS_NOT_MET = "HypothesisNotMet"
    THEOREM_VIOLATION = "TheoremViolation"


@dataclass(frozen=True)
class ClassifierVerdict:
    verdict: Verdict
    reason: str = ""
    chi: int | None = None
    evidence: dict = field(default_factory=dict, compare=False)

    def __str__(self) -> str:
        return self.verdict.value + (f" ({self.reason})" if self.reason else "")


# --- high / low vertices ----------------------------------------------------

def high_subgraph(g: Graph, chi: int) -> InducedSubgraph:
    """Subgraph induced on the vertices of degree at least ``chi``."""
    if chi < 1:
        raise ValueError("chi must be >= 1")
    return g.induced([v for v in range(g.n) if g.degree(v) >= chi])


def high_low_split(g: Graph, chi: int, critical: bool = True) -> HighLowSplit:
    high = frozenset(v for v in range(g.n) if g.degree(v) >= chi)
    if critical:
        low = frozenset(v for v in range(g.n) if g.degree(v) == chi - 1)
    else:
        low = frozenset(v for v in range(g.n) if g.degree(v) < chi)
    return HighLowSplit(chi, high, low, critical and len(high) + len(low) == g.n)


def omega_d(g: Graph, d: int) -> int:
    """Clique number among the vertices of degree greater than ``d``."""
    return len(max_clique(g.induced([v for v in range(g.n) if g.degree(v) > d])))


# --- Brooks ----------------------------------------------------------------

def brooks_color(c: Graph | InducedSubgraph, r: int) -> Coloring:
    """Properly color a connected graph of maximum degree ``<= r`` with ``r``
    colors, unless it is ``K_{r+1}`` or (for ``r = 2``) an odd cycle.

    A vertex of degree below ``r`` roots a BFS whose reverse order colors
    greedily.  Regular inputs are split at a cut vertex, or else colored
    from a vertex ``v`` with nonadjacent neighbors ``u, w`` such that
    removing ``u`` and ``w`` keeps the graph connected: ``u`` and ``w``
    share a color, ``v`` goes last.
    """
    sub = c.whole() if isinstance(c, Graph) else c
    if r < 1:
        raise BrooksError("r must be >= 1")
    return Coloring.from_dict(_brooks(sub.host.adj, sub.support, r))


def _brooks(adj: Sequence[int], support: int, r: int) -> dict[int, int]:
    size = support.bit_count()
    if size == 0:
        return {}
    degs = {v: (adj[v] & support).bit_count() for v in bits(support)}
    if max(degs.values()) > r:
        raise DegreeTooLarge(f"maximum degree {max(degs.values())} exceeds r={r}")
    if reach(adj, support, lowest(support)) != support:
        raise BrooksError("brooks_color needs a connected graph")
    if size == r + 1 and all(x == r for x in degs.values()):
        raise CompleteObstruction(f"graph is K_{r + 1}")
    if r == 2:
        if size % 2 == 1 and all(x == 2 for x in degs.values()):
            raise OddCycleObstruction("graph is an odd cycle")
        return _two_color(adj, support)
    if r == 1:
        # connected, Delta <= 1 and not K_2: a single vertex
        return {lowest(support): 0}
    low = [v for v in bits(support) if degs[v] < r]
    if low:
        return _greedy(adj, support, _reverse_bfs(adj, support, low[0]), r)
    cut = cut_vertices_mask(adj, support)
    if cut:
        v = lowest(cut)
        out = {v: 0}
        for piece in component_masks(adj, support & ~(1 << v)):
            part = _brooks(adj, piece | 1 << v, r)
            shift = part[v]
            for u, col in part.items():
                if u != v:
                    # swap colors 0 and shift so that v gets 0 everywhere
                    out[u] = shift if col == 0 else (0 if col == shift else col)
        return out
    v, u, w = _lovasz_triple(adj, support)
    rest = support & ~(1 << u) & ~(1 << w)
    fixed = {u: 0, w: 0}
    return _greedy(adj, support, _reverse_bfs(adj, rest, v), r, fixed)


def _two_color(adj, support: int) -> dict[int, int]:
    start = lowest(support)
    col = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in bits(adj[v] & support):
            if u not in col:
                col[u] = 1 - col[v]
                queue.append(u)
    return col


def _reverse_bfs(adj, support: int, root: int) -> list[int]:
    order = [root]
    seen = 1 << root
    i = 0
    while i < len(order):
        for u in bits(adj[order[i]] & support & ~seen):
            seen |= 1 << u
            order.append(u)
        i += 1
    return order[::-1]


def _greedy(adj, support: int, order: list[int], r: int, fixed: dict[int, int] | None = None) -> dict[int, int]:
    col = dict(fixed or {})
    for v in order:
        taken = {col[u] for u in bits(adj[v] & support) if u in col}
        c = 0
        while c in taken:
            c += 1
        if c >= r:
            raise EngineError(f"greedy step needed color {c} with only {r} available")
        col[v] = c
    return col


def _lovasz_triple(adj, support: int) -> tuple[int, int, int]:
    for v in bits(support):
        nb = list(bits(adj[v] & support))
        for a, u in enumerate(nb):
            for w in nb[a + 1:]:
                if adj[u] >> w & 1:
                    continue
                rest = support & ~(1 << u) & ~(1 << w)
                if reach(adj, rest, v) == rest:
                    return v, u, w
    raise EngineError("no vertex with two suitable nonadjacent neighbors")


# --- coloring via a good partition ------------------------------------------

def color_via_partition(g: Graph, r: Sequence[int], d: int, *, seed: int | None = None
                        ) -> PartitionCertificate | Coloring:
    """Either the special clique structure or a proper coloring with at most
    ``wt(r)`` colors.

    Needs ``wt(r) >= max(Delta + 1 - k, d)`` and ``r_i >= omega_d(G) + 1``
    (and ``r_i >= 2`` for the underlying partition search).
    """
    r = tuple(r)
    w = omega_d(g, d)
    if any(x < w + 1 for x in r):
        raise PreconditionError(f"need every r_i >= omega_d + 1 = {w + 1}")
    cert = find_partition_t1(g, r, d, seed=seed)
    if cert.kind == "special":
        ok, report = verify_certificate(g, cert, omega_d=w)
        if not ok:
            raise EngineError("special structure misses the strengthened witness counts: "
                              + ", ".join(c.name for c in report if not c.passed))
        return cert
    col: dict[int, int] = {}
    offset = 0
    for i, part in enumerate(cert.partition.parts):
        mask = sum(1 << v for v in part)
        for comp in component_masks(g.adj, mask):
            if r[i] >= 2 and is_obstruction(g.induced(comp), r[i]):
                raise EngineError(f"part {i} contains an r_i-obstruction")
            for v, c in _brooks(g.adj, comp, r[i]).items():
                col[v] = offset + c
        offset += r[i]
    coloring = Coloring.from_dict(col)
    ok, _ = verify_certificate(g, coloring, max_colors=weight(r))
    if not ok:
        raise EngineError("assembled coloring failed its check")
    return coloring


# --- critical graphs --------------------------------------------------------

def _criticality(g: Graph, assume_critical: bool, max_n: int) -> CriticalityCertificate | None:
    if assume_critical:
        return None
    if g.n > max_n:
        raise HypothesisNotMet(f"criticality check limited to n <= {max_n}; pass assume_critical")
    cert = is_vertex_critical(g)
    if not cert.is_critical:
        raise HypothesisNotMet("graph is not vertex critical")
    return cert


def extract_critical_structure(g: Graph, k: int, *, assume_critical: bool = False,
                               max_n: int = CRITICAL_CHECK_MAX_N) -> CriticalStructure:
    """The clique structure ``Q`` inside a critical graph with
    ``chi = Delta + 2 - k`` and ``k <= (chi - 1) / (omega(H) + 1)``."""
    if k < 2:
        raise HypothesisNotMet("need k >= 2")
    crit = _criticality(g, assume_critical, max_n)
    chi_cert = exact_chi(g)
    chi = chi_cert.chi
    delta = g.max_degree()
    if chi != delta + 2 - k:
        raise HypothesisNotMet(f"chi={chi} differs from Delta + 2 - k = {delta + 2 - k}")
    high = high_subgraph(g, chi) if chi >= 1 else g.induced(0)
    omega_clique = max_clique(high)
    h = len(omega_clique)
    if k * (h + 1) > chi - 1:
        raise HypothesisNotMet(f"k={k} exceeds (chi - 1)/(omega(H) + 1) = {(chi - 1) / (h + 1):.3g}")
    r = (chi - 1 - (k - 1) * (h + 1),) + (h + 1,) * (k - 1)
    out = color_via_partition(g, r, chi - 1)
    if not isinstance(out, PartitionCertificate):
        raise TheoremViolationError(
            "critical graph colored with chi - 1 colors",
            {"graph": g.edges(), "n": g.n, "chi": chi_cert, "criticality": crit,
             "coloring": out, "omega_clique": omega_clique},
        )
    structure = CriticalStructure(out.q, out.cliques, out.witnesses, k, chi, h)
    ok, report = verify_certificate(g, structure)
    if not ok:
        raise TheoremViolationError(
            "structure fails its invariants: " + ", ".join(c.name for c in report if not c.passed),
            {"graph": g.edges(), "n": g.n, "chi": chi_cert, "structure": structure},
        )
    return structure


def classify_critical(g: Graph, p: int, *, assume_critical: bool = False,
                      max_n: int = CRITICAL_CHECK_MAX_N, chi: ChiCertificate | None = None
                      ) -> ClassifierVerdict:
    """Check the hypotheses (vertex critical, ``chi >= Delta + 1 - p >= 4``,
    ``omega(H) <= (chi + 1)/(p + 1) - 2``) and decide whether ``g`` is
    ``K_chi`` or ``O_5``."""
    if p < 0:
        return ClassifierVerdict(Verdict.HYPOTHESIS_NOT_MET, "p must be >= 0")
    delta = g.max_degree()
    if delta + 1 - p < 4:
        return ClassifierVerdict(Verdict.HYPOTHESIS_NOT_MET, f"Delta + 1 - p = {delta + 1 - p} < 4")
    chi_cert = chi or exact_chi(g)
    x = chi_cert.chi
    if x < delta + 1 - p:
        return ClassifierVerdict(Verdict.HYPOTHESIS_NOT_MET, f"chi={x} < Delta + 1 - p", x)
    crit = None
    if not assume_critical:
        if g.n > max_n:
            return ClassifierVerdict(Verdict.HYPOTHESIS_NOT_MET,
                                     f"criticality check limited to n <= {max_n}", x)
        crit = is_vertex_critical(g)
        if not crit.is_critical:
            return ClassifierVerdict(Verdict.HYPOTHESIS_NOT_MET, "not vertex critical", x)
    omega_clique = max_clique(high_subgraph(g, x))
    h = len(omega_clique)
    # omega(H) <= (chi + 1)/(p + 1) - 2, cleared of fractions
    if (h + 2) * (p + 1) > x + 1:
        return ClassifierVerdict(Verdict.HYPOTHESIS_NOT_MET,
                                 f"omega(H)={h} > (chi + 1)/(p + 1) - 2", x)
    if g.n == x and g.num_edges() == x * (x - 1) // 2:
        return ClassifierVerdict(Verdict.IS_COMPLETE, chi=x)
    if x == 5 and isomorphic(g, build_o_n(5)):
        return ClassifierVerdict(Verdict.IS_O5, chi=x)
    return ClassifierVerdict(
        Verdict.THEOREM_VIOLATION, "hypotheses hold but graph is neither K_chi nor O_5", x,
        evidence={"graph": g.edges(), "n": g.n, "chi": chi_cert, "criticality": crit,
                  "omega_clique": omega_clique, "p": p},
    )
