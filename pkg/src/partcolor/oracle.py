"""Ground truth at desk scale: exact chromatic number, vertex criticality,
critical subgraphs and exhaustive enumeration of small graphs."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Iterator

from .graph import Graph, _refine, bits, build_edgeless, lowest, max_clique, reach

DEFAULT_MAX_N = int(os.environ.get("PARTCOLOR_ORACLE_MAX_N", "16"))
ENUMERATION_MAX_N = 8


class OracleTimeout(TimeoutError):
    """Exact search ran past its time budget."""


class OracleSizeError(ValueError):
    """Input larger than the configured oracle bound."""


@dataclass(frozen=True)
class ChiCertificate:
    chi: int
    coloring: tuple[int, ...]
    lower_bound_clique: frozenset[int]
    # "clique" when the clique alone meets chi, else "exhaustive"
    lower_bound: str


@dataclass(frozen=True)
class CriticalityCertificate:
    is_critical: bool
    chi: int
    deleted_chi: tuple[int, ...]


def exact_chi(g: Graph, *, max_n: int | None = None, timeout: float | None = None) -> ChiCertificate:
    """Chromatic number by DSATUR branch and bound.

    The vertices of a maximum clique are precolored with distinct colors,
    which gives the lower bound and breaks color symmetry.
    """
    bound = DEFAULT_MAX_N if max_n is None else max_n
    if g.n > bound:
        raise OracleSizeError(f"n={g.n} exceeds oracle bound {bound}")
    n = g.n
    if n == 0:
        return ChiCertificate(0, (), frozenset(), "clique")
    adj = g.adj
    clique = sorted(max_clique(g))
    deadline = None if timeout is None else time.monotonic() + timeout

    color = [-1] * n
    classes: list[int] = []
    for c, v in enumerate(clique):
        color[v] = c
        classes.append(1 << v)

    best_colors = _dsatur_greedy(g)
    best = max(best_colors) + 1
    if best == len(clique):
        return ChiCertificate(best, tuple(best_colors), frozenset(clique), "clique")

    uncolored = g.all_mask
    for v in clique:
        uncolored &= ~(1 << v)
    ticks = 0

    def pick(unc: int, used: int) -> int:
        best_v, best_key = -1, None
        for v in bits(unc):
            sat = sum(1 for c in range(used) if adj[v] & classes[c])
            key = (sat, (adj[v] & unc).bit_count())
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        return best_v

    def search(unc: int, used: int) -> None:
        nonlocal best, best_colors, ticks
        if not unc:
            if used < best:
                best = used
                best_colors = list(color)
            return
        ticks += 1
        if deadline is not None and ticks % 256 == 0 and time.monotonic() > deadline:
            raise OracleTimeout(f"exact_chi exceeded {timeout}s")
        v = pick(unc, used)
        for c in range(used):
            if adj[v] & classes[c]:
                continue
            color[v] = c
            classes[c] |= 1 << v
            search(unc & ~(1 << v), used)
            classes[c] &= ~(1 << v)
            color[v] = -1
            if best == len(clique):
                return
        if used + 1 < best:
            color[v] = used
            classes.append(1 << v)
            search(unc & ~(1 << v), used + 1)
            classes.pop()
            color[v] = -1

    search(uncolored, len(clique))
    how = "clique" if best == len(clique) else "exhaustive"
    return ChiCertificate(best, tuple(best_colors), frozenset(clique), how)


def _dsatur_greedy(g: Graph) -> list[int]:
    adj = g.adj
    n = g.n
    color = [-1] * n
    seen_colors = [0] * n  # bitmask of neighbor colors
    unc = g.all_mask
    while unc:
        v = max(bits(unc), key=lambda u: (seen_colors[u].bit_count(), (adj[u] & unc).bit_count(), -u))
        c = 0
        while seen_colors[v] >> c & 1:
            c += 1
        color[v] = c
        unc &= ~(1 << v)
        for u in bits(adj[v]):
            seen_colors[u] |= 1 << c
    return color


def chromatic_number(g: Graph, **kw) -> int:
    return exact_chi(g, **kw).chi


def is_vertex_critical(g: Graph, **kw) -> CriticalityCertificate:
    """``chi(G - v) < chi(G)`` for every vertex ``v``."""
    chi = exact_chi(g, **kw).chi
    deleted = tuple(exact_chi(g.delete_vertex(v), **kw).chi for v in range(g.n))
    return CriticalityCertificate(all(c < chi for c in deleted), chi, deleted)


def quick_critical(g: Graph, chi: int | None = None, **kw) -> bool:
    """Criticality with cheap necessary conditions first (connected for
    ``chi >= 2``, minimum degree ``>= chi - 1``), stopping at the first
    vertex whose deletion keeps ``chi``."""
    if chi is None:
        chi = exact_chi(g, **kw).chi
    if g.n == 0:
        return True
    if chi >= 2:
        if min(g.degrees) < chi - 1:
            return False
        if reach(g.adj, g.all_mask, 0) != g.all_mask:
            return False
    elif g.n > 1:
        return False
    return all(exact_chi(g.delete_vertex(v), **kw).chi < chi for v in range(g.n))


def extract_critical_subgraph(g: Graph, **kw) -> tuple[Graph, tuple[int, ...]]:
    """Delete vertices (lowest id first) whenever chi survives the deletion.

    One pass suffices: a vertex that was needed stays needed once more
    vertices are gone.  Returns the subgraph relabelled onto ``0..m-1`` and
    the kept host ids.
    """
    chi = exact_chi(g, **kw).chi
    keep = g.all_mask
    for v in range(g.n):
        trial = keep & ~(1 << v)
        if exact_chi(g.induced(trial).to_graph(), **kw).chi == chi:
            keep = trial
    return g.induced(keep).to_graph(), tuple(bits(keep))


# --- enumeration ------------------------------------------------------------

def _code(adj, order) -> int:
    """Upper-triangle adjacency bits of the graph relabelled by ``order``."""
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    code = 0
    for i, v in enumerate(order):
        for u in bits(adj[v]):
            j = pos[u]
            if j > i:
                code |= 1 << (j * (j - 1) // 2 + i)
    return code


def canonical_code(g: Graph) -> tuple[int, int]:
    """Canonical form ``(n, code)``: the maximum code over the leaves of an
    individualization-refinement tree.

    Twins (vertices with equal neighborhoods apart from each other) in the
    target cell are interchangeable, so only one per twin class is branched
    on.
    """
    adj = g.adj
    n = g.n
    if n == 0:
        return (0, 0)
    best = -1

    def walk(cells: list[int]) -> None:
        nonlocal best
        target = None
        for idx, cell in enumerate(cells):
            if cell & (cell - 1):
                target = idx
                break
        if target is None:
            code = _code(adj, [lowest(c) for c in cells])
            if code > best:
                best = code
            return
        cell = cells[target]
        tried: list[int] = []
        for v in bits(cell):
            if any(_twins(adj, u, v) for u in tried):
                continue
            tried.append(v)
            trial = cells[:target] + [1 << v, cell & ~(1 << v)] + cells[target + 1:]
            walk(_refine(adj, trial))

    walk(_refine(adj, [g.all_mask]))
    return (n, best)


def _twins(adj, u: int, v: int) -> bool:
    mask = ~((1 << u) | (1 << v))
    return adj[u] & mask == adj[v] & mask


def _from_code(n: int, code: int) -> Graph:
    edges = []
    for j in range(n):
        for i in range(j):
            if code >> (j * (j - 1) // 2 + i) & 1:
                edges.append((i, j))
    return Graph.from_edges(n, edges)


_LEVELS: dict[int, list[Graph]] = {}


def _level(n: int) -> list[Graph]:
    """All graphs on ``n`` vertices up to isomorphism.

    Grown one vertex at a time: every graph is ``G - v`` plus ``v`` for a
    vertex ``v`` of maximum degree, so only extensions in which the new
    vertex has maximum degree are generated.
    """
    if n in _LEVELS:
        return _LEVELS[n]
    if n == 0:
        out = [build_edgeless(0)]
    else:
        found: dict[tuple[int, int], Graph] = {}
        for base in _level(n - 1):
            m = n - 1
            for nbrs in range(1 << m):
                size = nbrs.bit_count()
                ok = True
                for u in range(m):
                    if base.degrees[u] + (nbrs >> u & 1) > size:
                        ok = False
                        break
                if not ok:
                    continue
                adj = [a | ((nbrs >> u & 1) << m) for u, a in enumerate(base.adj)] + [nbrs]
                g = Graph(n, tuple(adj))
                key = canonical_code(g)
                if key not in found:
                    found[key] = _from_code(n, key[1])
        out = [found[key] for key in sorted(found)]
    _LEVELS[n] = out
    return out


def enumerate_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """One representative per isomorphism class on ``n`` vertices (``n <= 8``)."""
    if n < 0 or n > ENUMERATION_MAX_N:
        raise OracleSizeError(f"enumeration supports 0 <= n <= {ENUMERATION_MAX_N}")
    for g in _level(n):
        if connected_only and g.n and reach(g.adj, g.all_mask, 0) != g.all_mask:
            continue
        yield g
