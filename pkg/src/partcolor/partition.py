"""Degree-constrained vertex partitions.

An ordered partition ``(V_1, ..., V_k)`` of a graph is scored by

    f(P) = sum_i (|E(G[V_i])| - r_i * |V_i|)

and pushed toward a local minimum by single-vertex moves.  On top of that,
two searches look for partitions whose remaining monochromatic trouble spots
are harmless:

* :func:`find_partition_t1` either returns a partition in which every
  ``r_i``-obstruction (odd cycle for ``r_i = 2``, ``K_{r_i+1}`` otherwise)
  has host degrees ``>= d`` and an edgeless ``d``-movable subgraph, or it
  exhibits a set ``Q`` of ``d + 1`` vertices split into cliques.
* :func:`find_partition_t2` is the regular-component analogue and feeds
  :func:`borodin_partition`.

Both walk the same kind of move chain: a vertex of host degree ``d`` sitting
in a bad component is moved to another part (this keeps ``f``), the
component it lands in is inspected, and a vertex of that component is moved
back.  Either badness drops, or the chain wraps onto a component it already
visited, and the wrap exposes the special structure.  Every claim that
relies on minimality is checked when it is used; when a check fails the
engine looks for a lexicographically better partition nearby and continues
from there.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .graph import Graph, bits, component_masks, cut_vertices_mask, lowest, reach

log = logging.getLogger(__name__)


class PreconditionError(ValueError):
    """Input parameters violate an operation's hypotheses."""


class EngineError(RuntimeError):
    """A search could not establish its certificate.

    Carries the move trace of the failed attempt for diagnosis.
    """

    def __init__(self, message: str, trace: list | None = None):
        super().__init__(message)
        self.trace = trace or []


# --- value types ------------------------------------------------------------

@dataclass(frozen=True)
class OrderedPartition:
    parts: tuple[frozenset[int], ...]

    @classmethod
    def from_assignment(cls, where: Sequence[int], k: int) -> "OrderedPartition":
        parts: list[set[int]] = [set() for _ in range(k)]
        for v, i in enumerate(where):
            parts[i].add(v)
        return cls(tuple(frozenset(p) for p in parts))

    @classmethod
    def of(cls, *parts: Iterable[int]) -> "OrderedPartition":
        return cls(tuple(frozenset(p) for p in parts))

    @property
    def k(self) -> int:
        return len(self.parts)

    def assignment(self, n: int) -> list[int]:
        where = [-1] * n
        for i, part in enumerate(self.parts):
            for v in part:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} out of range")
                if where[v] != -1:
                    raise ValueError(f"vertex {v} appears in two parts")
                where[v] = i
        if -1 in where:
            raise ValueError(f"vertex {where.index(-1)} is in no part")
        return where

    def __getitem__(self, i: int) -> frozenset[int]:
        return self.parts[i]

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class ChainStep:
    vertex: int
    source: int
    target: int
    component: frozenset[int]


@dataclass
class MoveChain:
    """Moves made by one chain plus the leftover components ``A_s - x_s``."""

    steps: list[ChainStep] = field(default_factory=list)
    leftovers: list[int] = field(default_factory=list)

    def record(self, vertex: int, source: int, target: int, component: int) -> None:
        self.steps.append(ChainStep(vertex, source, target, frozenset(bits(component))))
        self.leftovers.append(component & ~(1 << vertex))

    def wraps(self, landing: int) -> int | None:
        """Index ``s`` of an earlier leftover equal to ``landing``, if any.

        The most recent leftover is excluded; it lives in the other part.
        """
        for s, left in enumerate(self.leftovers[:-1]):
            if left == landing:
                return s
        return None


@dataclass(frozen=True)
class PartitionCertificate:
    """Result of :func:`find_partition_t1`.

    ``kind == "special"``: ``q`` has ``d + 1`` vertices and is split into the
    cliques ``cliques``; ``witnesses[i]`` are the vertices of ``cliques[i]``
    with host degree ``d`` (each universal in ``q``).
    ``kind == "partition"``: ``partition`` is the good partition.
    """

    kind: str
    r: tuple[int, ...]
    d: int
    q: frozenset[int] = frozenset()
    cliques: tuple[frozenset[int], ...] = ()
    witnesses: tuple[frozenset[int], ...] = ()
    partition: OrderedPartition | None = None
    trace: tuple[ChainStep, ...] = ()

    @property
    def k(self) -> int:
        return len(self.r)


@dataclass(frozen=True)
class DegenCertificate:
    """Result of :func:`find_partition_t2`.

    ``kind == "join"``: ``clique_part`` (host degree ``d``) is a clique joined
    to ``independent_part`` (host degree ``> d``).
    ``kind == "partition"``: ``partition`` plus which refinement holds:
    ``"a"`` (every regular component has at most one movable vertex) or
    ``"b"`` (``refinement_witness = (i, x)`` where the degree-``d`` neighbors
    of ``x`` inside its component form a clique).
    """

    kind: str
    r: tuple[int, ...]
    d: int
    clique_part: frozenset[int] = frozenset()
    independent_part: frozenset[int] = frozenset()
    partition: OrderedPartition | None = None
    refinement: str = ""
    refinement_witness: tuple[int, int] | None = None
    trace: tuple[ChainStep, ...] = ()

    @property
    def k(self) -> int:
        return len(self.r)


# --- predicates on bitsets --------------------------------------------------

def weight(r: Sequence[int]) -> int:
    return sum(r)


def _movable_mask(g: Graph, comp: int, d: int) -> int:
    deg = g.degrees
    same = 0
    for v in bits(comp):
        if deg[v] == d:
            same |= 1 << v
    if not same:
        return 0
    return same & ~cut_vertices_mask(g.adj, comp)


def _is_regular(adj: Sequence[int], comp: int, t: int) -> bool:
    return all((adj[v] & comp).bit_count() == t for v in bits(comp))


def _is_obstruction_mask(adj: Sequence[int], comp: int, t: int) -> bool:
    size = comp.bit_count()
    if t == 2:
        return size >= 3 and size % 2 == 1 and _is_regular(adj, comp, 2) \
            and reach(adj, comp, lowest(comp)) == comp
    return size == t + 1 and _is_regular(adj, comp, t)


def _has_edge(adj: Sequence[int], mask: int) -> bool:
    return any(adj[v] & mask for v in bits(mask))


def _t1_witnesses(g: Graph, comp: int, t: int, d: int) -> int:
    """Movable vertices with a movable neighbor, if ``comp`` is a ``t``-obstruction."""
    if not _is_obstruction_mask(g.adj, comp, t):
        return 0
    mov = _movable_mask(g, comp, d)
    return sum(1 << v for v in bits(mov) if g.adj[v] & mov)


def _t2_witnesses(g: Graph, comp: int, t: int, d: int) -> int:
    """Movable vertices of movable-degree ``>= t - 1``, if ``comp`` is ``t``-regular."""
    if not _is_regular(g.adj, comp, t):
        return 0
    mov = _movable_mask(g, comp, d)
    return sum(1 << v for v in bits(mov) if (g.adj[v] & mov).bit_count() >= t - 1)


def _is_bad(g: Graph, comp: int, t: int, d: int, mode: str) -> bool:
    if mode == "t1":
        return bool(_t1_witnesses(g, comp, t, d))
    return _t2_witnesses(g, comp, t, d).bit_count() >= 2


def _is_ugly(g: Graph, comp: int, t: int, d: int) -> bool:
    return _is_regular(g.adj, comp, t) and _movable_mask(g, comp, d).bit_count() >= 2


# --- search state -----------------------------------------------------------

class _State:
    """Mutable partition: part index per vertex plus one bitset per part."""

    __slots__ = ("g", "r", "k", "where", "masks")

    def __init__(self, g: Graph, r: Sequence[int], where: Sequence[int]):
        self.g = g
        self.r = tuple(r)
        self.k = len(r)
        self.where = list(where)
        self.masks = [0] * self.k
        for v, i in enumerate(self.where):
            self.masks[i] |= 1 << v

    def copy(self) -> "_State":
        new = _State.__new__(_State)
        new.g, new.r, new.k = self.g, self.r, self.k
        new.where = list(self.where)
        new.masks = list(self.masks)
        return new

    def excess(self, v: int, j: int) -> int:
        return (self.g.adj[v] & self.masks[j]).bit_count() - self.r[j]

    def gain(self, v: int, j: int) -> int:
        """Change in ``f`` if ``v`` moves to part ``j``."""
        return self.excess(v, j) - self.excess(v, self.where[v])

    def move(self, v: int, j: int) -> None:
        i = self.where[v]
        self.masks[i] &= ~(1 << v)
        self.masks[j] |= 1 << v
        self.where[v] = j

    def f(self) -> int:
        adj = self.g.adj
        total = 0
        for i, mask in enumerate(self.masks):
            edges = sum((adj[v] & mask).bit_count() for v in bits(mask)) // 2
            total += edges - self.r[i] * mask.bit_count()
        return total

    def best_target(self, v: int) -> tuple[int, int]:
        own = self.where[v]
        best_j, best_ex = -1, None
        for j in range(self.k):
            if j == own:
                continue
            ex = self.excess(v, j)
            if best_ex is None or ex < best_ex:
                best_j, best_ex = j, ex
        return best_j, best_ex - self.excess(v, own)

    def improving_move(self) -> tuple[int, int] | None:
        for v in range(self.g.n):
            j, delta = self.best_target(v)
            if delta < 0:
                return v, j
        return None

    def descend_f(self) -> int:
        """Single-vertex moves until none lowers ``f``; returns move count."""
        if self.k < 2:
            return 0
        adj = self.g.adj
        queue = deque(range(self.g.n))
        queued = [True] * self.g.n
        moves = 0
        while queue:
            v = queue.popleft()
            queued[v] = False
            j, delta = self.best_target(v)
            if delta < 0:
                self.move(v, j)
                moves += 1
                for u in [v, *bits(adj[v])]:
                    if not queued[u]:
                        queued[u] = True
                        queue.append(u)
        return moves

    def component_of(self, v: int) -> int:
        return reach(self.g.adj, self.masks[self.where[v]], v)

    def components(self, i: int) -> list[int]:
        return component_masks(self.g.adj, self.masks[i])

    def count_c(self) -> int:
        return sum(len(self.components(i)) for i in range(self.k))

    def bad_components(self, d: int, mode: str) -> list[tuple[int, int]]:
        return [
            (i, comp)
            for i in range(self.k)
            for comp in self.components(i)
            if _is_bad(self.g, comp, self.r[i], d, mode)
        ]

    def count_b(self, d: int, mode: str) -> int:
        return len(self.bad_components(d, mode))

    def count_u(self, d: int) -> int:
        return sum(
            1
            for i in range(self.k)
            for comp in self.components(i)
            if _is_ugly(self.g, comp, self.r[i], d)
        )

    def partition(self) -> OrderedPartition:
        return OrderedPartition(tuple(frozenset(bits(m)) for m in self.masks))


def _round_robin(n: int, k: int) -> list[int]:
    return [v % k for v in range(n)]


def _seeded(n: int, k: int, seed: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.randrange(k) for _ in range(n)]


def _check_r(r: Sequence[int], minimum: int) -> tuple[int, ...]:
    r = tuple(int(x) for x in r)
    if len(r) < 2:
        raise PreconditionError("need at least two parts (k >= 2)")
    if any(x < minimum for x in r):
        raise PreconditionError(f"every r_i must be >= {minimum}, got {r}")
    return r


# --- public scoring helpers -------------------------------------------------

def cost_f(g: Graph, p: OrderedPartition, r: Sequence[int]) -> int:
    if len(p) != len(r):
        raise ValueError(f"partition has {len(p)} parts but r has {len(r)} entries")
    return _State(g, r, p.assignment(g.n)).f()


def movable_subgraph(g: Graph, h, d: int):
    """The ``d``-movable subgraph of a connected induced subgraph ``h``:
    vertices of host degree ``d`` whose removal keeps ``h`` connected."""
    if not h.is_connected():
        raise ValueError("movable_subgraph needs a connected subgraph")
    return g.induced(_movable_mask(g, h.support, d))


def is_obstruction(c, t: int) -> bool:
    """Odd cycle when ``t == 2``, ``K_{t+1}`` when ``t >= 3``."""
    if t < 2:
        raise ValueError("obstructions are defined for t >= 2")
    if not c.support:
        return False
    return _is_obstruction_mask(c.host.adj, c.support, t)


def badness_b(g: Graph, p: OrderedPartition, r: Sequence[int], d: int, mode: str = "t1") -> int:
    """Number of bad components; ``mode`` selects the obstruction-based
    (``"t1"``) or the regular-component (``"t2"``) notion."""
    if mode not in ("t1", "t2"):
        raise ValueError(f"unknown mode {mode!r}")
    return _State(g, r, p.assignment(g.n)).count_b(d, mode)


def count_c(g: Graph, p: OrderedPartition) -> int:
    return _State(g, [0] * len(p), p.assignment(g.n)).count_c()


def ugliness_u(g: Graph, p: OrderedPartition, r: Sequence[int], d: int) -> int:
    return _State(g, r, p.assignment(g.n)).count_u(d)


def local_search_f(g: Graph, r: Sequence[int], seed_partition: OrderedPartition | None = None) -> OrderedPartition:
    """Descend ``f`` by single-vertex moves (lowest vertex id first, lowest
    target index on ties).  With ``wt(r) >= Delta + 1 - k`` the result has
    ``Delta(G[V_i]) <= r_i`` for every part."""
    r = tuple(r)
    if len(r) < 2:
        raise PreconditionError("need at least two parts (k >= 2)")
    if weight(r) < g.max_degree() + 1 - len(r):
        raise PreconditionError("need wt(r) >= Delta(G) + 1 - k")
    where = seed_partition.assignment(g.n) if seed_partition else _round_robin(g.n, len(r))
    st = _State(g, r, where)
    st.descend_f()
    return st.partition()


# --- the shared search machinery --------------------------------------------

class _Improved(Exception):
    """Raised inside a chain when a lexicographically better state shows up."""

    def __init__(self, state: _State):
        self.state = state


class _Stuck(Exception):
    pass


class _Search:
    """Lexicographic local search with move chains.

    ``key`` orders states; a candidate state is adopted as soon as its key is
    smaller than the current one.  Subclasses supply the key, the notion of
    badness, and how a wrap is turned into the special structure.
    """

    mode = "t1"
    plateau_budget = 4000

    def __init__(self, g: Graph, r: tuple[int, ...], d: int, where: Sequence[int]):
        self.g = g
        self.r = r
        self.d = d
        self.k = len(r)
        self.state = _State(g, r, where)
        self.trace: list[ChainStep] = []
        self.step_cap = max(1, g.n) * self.k

    # hooks
    def key(self, st: _State) -> tuple:
        raise NotImplementedError

    def witnesses(self, st: _State, comp: int, i: int) -> int:
        raise NotImplementedError

    def assemble(self, start: _State, i: int, comp: int, x: int):
        raise NotImplementedError

    # helpers
    def _better(self, st: _State, base: tuple) -> bool:
        return self.key(st) < base

    def _settle(self) -> None:
        self.state.descend_f()

    def run_chain(self, i: int, comp: int, x: int, dst: int):
        """Walk one move chain starting with ``x`` leaving bad ``comp``.

        Raises :class:`_Improved` on a better state, returns the special
        structure on a clean wrap, and ``None`` if the chain gave nothing.
        """
        start = self.state.copy()
        base = self.key(start)
        st = start.copy()
        chain = MoveChain()
        snapshots = [start]
        src = i
        for _ in range(self.step_cap):
            chain.record(x, src, dst, comp)
            st.move(x, dst)
            self.trace.append(chain.steps[-1])
            snapshots.append(st.copy())
            if self._better(st, base):
                raise _Improved(st)
            landed = st.component_of(x)
            if not _is_bad(self.g, landed, self.r[dst], self.d, self.mode):
                # badness must have dropped; the key comparison disagrees
                break
            if chain.wraps(landed & ~(1 << x)) is not None:
                found = self.assemble(start, i, snapshots[0].component_of(chain.steps[0].vertex),
                                      chain.steps[0].vertex)
                if found is not None:
                    return found
                break
            nxt = self.witnesses(st, landed, dst) & ~(1 << x)
            if not nxt:
                break
            x, comp, src, dst = lowest(nxt), landed, dst, src
        else:
            log.debug("chain hit the step cap")
        self._neighborhood(snapshots, base)
        return None

    def _neighborhood(self, snapshots: list[_State], base: tuple) -> None:
        """Look one or two moves away from every partition on a chain."""
        n, k = self.g.n, self.k
        for snap in snapshots:
            for v in range(n):
                for j in range(k):
                    if j == snap.where[v]:
                        continue
                    trial = snap.copy()
                    trial.move(v, j)
                    if self._better(trial, base):
                        raise _Improved(trial)
        deg = self.g.degrees
        for snap in snapshots:
            for z in range(n):
                if deg[z] != self.d:
                    continue
                for j in range(k):
                    if j == snap.where[z] or snap.gain(z, j) != 0:
                        continue
                    first = snap.copy()
                    first.move(z, j)
                    for v in range(n):
                        if v == z:
                            continue
                        for jj in range(k):
                            if jj == first.where[v] or first.gain(v, jj) > 0:
                                continue
                            trial = first.copy()
                            trial.move(v, jj)
                            if self._better(trial, base):
                                raise _Improved(trial)

    def plateau(self, accept: Callable[[_State], bool]) -> _State | None:
        """Breadth-first walk over partitions with equal ``f`` (bounded)."""
        start = self.state
        base = self.key(start)
        seen = {tuple(start.where)}
        queue = deque([start])
        while queue and len(seen) < self.plateau_budget:
            cur = queue.popleft()
            for v in range(self.g.n):
                for j in range(self.k):
                    if j == cur.where[v]:
                        continue
                    delta = cur.gain(v, j)
                    if delta > 0:
                        continue
                    trial = cur.copy()
                    trial.move(v, j)
                    sig = tuple(trial.where)
                    if sig in seen:
                        continue
                    seen.add(sig)
                    if self._better(trial, base) or accept(trial):
                        return trial
                    queue.append(trial)
        return None


class _T1Search(_Search):
    mode = "t1"

    def key(self, st: _State) -> tuple:
        return (st.f(), st.count_b(self.d, "t1"))

    def witnesses(self, st: _State, comp: int, i: int) -> int:
        return _t1_witnesses(self.g, comp, self.r[i], self.d)

    def assemble(self, start: _State, i: int, comp: int, x: int):
        """Build ``Q`` from the first moved vertex ``x``: ``B_j`` is the
        component ``x`` forms in part ``j``; ``F_1 = B_1``, ``F_j = B_j - x``."""
        g, r, d = self.g, self.r, self.d
        blocks = []
        for j in range(self.k):
            if j == i:
                block = comp
            else:
                block = reach(g.adj, start.masks[j] | 1 << x, x)
            size = block.bit_count()
            if size != r[j] + 1 or not _is_regular(g.adj, block, r[j]):
                return None
            blocks.append(block)
        cliques = [blocks[0]] + [b & ~(1 << x) for b in blocks[1:]]
        q = 0
        for c in cliques:
            q |= c
        if q.bit_count() != d + 1:
            return None
        deg = g.degrees
        witnesses = [sum(1 << v for v in bits(c) if deg[v] == d) for c in cliques]
        for idx, w in enumerate(witnesses):
            if w.bit_count() < (2 if idx == 0 else 1):
                return None
            for v in bits(w):
                if (g.adj[v] & q) != q & ~(1 << v):
                    return None
        return q, cliques, witnesses

    def solve(self) -> PartitionCertificate:
        g, r, d = self.g, self.r, self.d
        self._settle()
        for _ in range(10 * (g.n * self.k + g.num_edges() + 1)):
            bad = self.state.bad_components(d, "t1")
            if not bad:
                return PartitionCertificate("partition", r, d, partition=self.state.partition(),
                                            trace=tuple(self.trace))
            if weight(r) != d:
                raise _Stuck("bad component at a local minimum although wt(r) != d")
            try:
                found = self._chains(bad)
            except _Improved as imp:
                self.state = imp.state
                self._settle()
                continue
            if found is not None:
                q, cliques, witnesses = found
                return PartitionCertificate(
                    "special", r, d,
                    q=frozenset(bits(q)),
                    cliques=tuple(frozenset(bits(c)) for c in cliques),
                    witnesses=tuple(frozenset(bits(w)) for w in witnesses),
                    trace=tuple(self.trace),
                )
            better = self.plateau(lambda st: st.count_b(d, "t1") == 0)
            if better is None:
                raise _Stuck("no chain or nearby partition lowers badness")
            self.state = better
            self._settle()
        raise _Stuck("iteration bound exceeded")

    def _chains(self, bad: list[tuple[int, int]]):
        for i, comp in bad:
            for x in bits(self.witnesses(self.state, comp, i)):
                for dst in range(self.k):
                    if dst == i:
                        continue
                    found = self.run_chain(i, comp, x, dst)
                    if found is not None:
                        return found
        return None


class _T2Search(_Search):
    mode = "t2"

    def key(self, st: _State) -> tuple:
        return (st.f(), st.count_c(), st.count_b(self.d, "t2"))

    def witnesses(self, st: _State, comp: int, i: int) -> int:
        return _t2_witnesses(self.g, comp, self.r[i], self.d)

    def assemble(self, start: _State, i: int, comp: int, x: int):
        g, r, d = self.g, self.r, self.d
        q = 0
        for j in range(self.k):
            block = comp if j == i else reach(g.adj, start.masks[j] | 1 << x, x)
            if block.bit_count() != r[j] + 1 or not _is_regular(g.adj, block, r[j]):
                return None
            q |= block
        return _join_split(g, q, d, self.k)

    # second phase: regular components with two or more movable vertices
    def _refinement(self, st: _State) -> tuple[str, tuple[int, int] | None] | None:
        g, d = self.g, self.d
        regular = [
            (i, comp)
            for i in range(self.k)
            for comp in st.components(i)
            if _is_regular(g.adj, comp, self.r[i])
        ]
        if all(_movable_mask(g, comp, d).bit_count() <= 1 for _, comp in regular):
            return "a", None
        for i, comp in regular:
            for x in bits(_movable_mask(g, comp, d)):
                deg_d = sum(1 << y for y in bits(g.adj[x] & comp) if g.degrees[y] == d)
                if all((g.adj[y] | 1 << y) & deg_d == deg_d for y in bits(deg_d)):
                    return "b", (i, x)
        return None

    def _terminal(self, st: _State) -> bool:
        return st.count_b(self.d, "t2") == 0 and self._refinement(st) is not None

    def _phase_two(self):
        """Chains over ugly components; returns a finished state or the join."""
        g, d = self.g, self.d
        st = self.state
        base = (st.f(), st.count_c(), st.count_u(d))

        def ugly_key(s: _State) -> tuple:
            return (s.f(), s.count_c(), s.count_u(d))

        starts = []
        for i in range(self.k):
            for comp in st.components(i):
                if _is_bad(g, comp, self.r[i], d, "t2"):
                    starts.insert(0, (i, comp))
                elif _is_ugly(g, comp, self.r[i], d):
                    starts.append((i, comp))
        for i, comp in starts:
            for dst in range(self.k):
                if dst == i:
                    continue
                result = self._ugly_chain(i, comp, dst, base, ugly_key)
                if result is not None:
                    return result
        return None

    def _ugly_chain(self, i: int, comp: int, dst: int, base: tuple, ugly_key):
        g, d = self.g, self.d
        st = self.state.copy()
        chain = MoveChain()
        src = i
        wit = self.witnesses(st, comp, i)
        w = lowest(wit) if wit else lowest(_movable_mask(g, comp, d))
        for _ in range(self.step_cap):
            chain.record(w, src, dst, comp)
            st.move(w, dst)
            self.trace.append(chain.steps[-1])
            if (st.f(), st.count_c()) < base[:2]:
                return ("state", st)
            b = st.count_b(d, "t2")
            if b <= 1 and ugly_key(st) < base:
                return ("state", st)
            if self._terminal(st):
                return ("state", st)
            landed = st.component_of(w)
            if chain.wraps(landed & ~(1 << w)) is not None:
                break
            mov = _movable_mask(g, landed, d) & ~(1 << w)
            if not _is_regular(g.adj, landed, self.r[dst]) or not mov:
                break
            wit = self.witnesses(st, landed, dst) & ~(1 << w)
            w = lowest(wit) if wit else lowest(mov)
            comp, src, dst = landed, dst, src
        return None

    def solve(self) -> DegenCertificate:
        g, r, d = self.g, self.r, self.d
        budget = 10 * (g.n * self.k + g.num_edges() + 1)
        for _ in range(budget):
            self._settle_c()
            bad = self.state.bad_components(d, "t2")
            if bad:
                if weight(r) != d:
                    raise _Stuck("bad component at a local minimum although wt(r) != d")
                try:
                    found = self._chains(bad)
                except _Improved as imp:
                    self.state = imp.state
                    continue
                if found is not None:
                    return self._join_certificate(found)
                better = self.plateau(lambda st: st.count_b(d, "t2") == 0)
                if better is None:
                    raise _Stuck("no chain or nearby partition lowers badness")
                self.state = better
                continue
            ref = self._refinement(self.state)
            if ref is not None:
                return DegenCertificate("partition", r, d, partition=self.state.partition(),
                                        refinement=ref[0], refinement_witness=ref[1],
                                        trace=tuple(self.trace))
            result = self._phase_two()
            if result is not None:
                self.state = result[1]
                continue
            better = self.plateau(self._terminal)
            if better is None:
                raise _Stuck("no partition with refinement (a) or (b) found")
            self.state = better
        raise _Stuck("iteration bound exceeded")

    def _settle_c(self) -> None:
        """Descend ``f``, then take ``f``-neutral moves that lower ``c``."""
        st = self.state
        while True:
            st.descend_f()
            c0 = st.count_c()
            moved = False
            for v in range(self.g.n):
                for j in range(self.k):
                    if j == st.where[v] or st.gain(v, j) != 0:
                        continue
                    i = st.where[v]
                    st.move(v, j)
                    if st.count_c() < c0:
                        moved = True
                        break
                    st.move(v, i)
                if moved:
                    break
            if not moved:
                return

    def _chains(self, bad: list[tuple[int, int]]):
        for i, comp in bad:
            for x in bits(self.witnesses(self.state, comp, i)):
                for dst in range(self.k):
                    if dst == i:
                        continue
                    found = self.run_chain(i, comp, x, dst)
                    if found is not None:
                        return found
        return None

    def _join_certificate(self, found) -> DegenCertificate:
        clique, indep = found
        return DegenCertificate("join", self.r, self.d,
                                clique_part=frozenset(bits(clique)),
                                independent_part=frozenset(bits(indep)),
                                trace=tuple(self.trace))


def _join_split(g: Graph, q: int, d: int, k: int):
    """Split ``q`` into degree-``d`` clique part and high-degree rest, if it
    forms ``K_t v E_{d+1-t}`` with ``t >= d + 1 - k``."""
    if q.bit_count() != d + 1:
        return None
    deg = g.degrees
    clique = sum(1 << v for v in bits(q) if deg[v] == d)
    indep = q & ~clique
    if any(deg[v] <= d for v in bits(indep)):
        return None
    if clique.bit_count() < d + 1 - k:
        return None
    for v in bits(clique):
        if (g.adj[v] & q) != q & ~(1 << v):
            return None
    return clique, indep


# --- entry points -----------------------------------------------------------

def _attempts(g: Graph, k: int, seed: int | None, seed_partition: OrderedPartition | None):
    if seed_partition is not None:
        yield seed_partition.assignment(g.n)
    elif seed is None:
        yield _round_robin(g.n, k)
    else:
        yield _seeded(g.n, k, seed)
    # the single retry
    yield _seeded(g.n, k, 0x5EED if seed is None else seed + 1)


def find_partition_t1(g: Graph, r: Sequence[int], d: int, *, seed: int | None = None,
                      seed_partition: OrderedPartition | None = None, check: bool = True,
                      keep_trace: bool = False) -> PartitionCertificate:
    """Partition with harmless obstructions, or the clique structure ``Q``.

    Requires every ``r_i >= 2`` and ``wt(r) >= max(Delta + 1 - k, d)``.
    The certificate is re-checked by :mod:`partcolor.verify` before return
    unless ``check`` is false.
    """
    r = _check_r(r, 2)
    if d < 0:
        raise PreconditionError("d must be non-negative")
    if weight(r) < max(g.max_degree() + 1 - len(r), d):
        raise PreconditionError("need wt(r) >= max(Delta(G) + 1 - k, d)")
    return _run(_T1Search, g, r, d, seed, seed_partition, check, keep_trace)


def find_partition_t2(g: Graph, r: Sequence[int], d: int, *, seed: int | None = None,
                      seed_partition: OrderedPartition | None = None, check: bool = True,
                      keep_trace: bool = False) -> DegenCertificate:
    """Partition whose regular components are harmless, or ``K_t v E_{d+1-t}``.

    Requires every ``r_i >= 1`` with at most one equal to 1, and
    ``wt(r) >= max(Delta + 1 - k, d)``.
    """
    r = _check_r(r, 1)
    if sum(1 for x in r if x == 1) > 1:
        raise PreconditionError("at most one r_i may equal 1")
    if d < 0:
        raise PreconditionError("d must be non-negative")
    if weight(r) < max(g.max_degree() + 1 - len(r), d):
        raise PreconditionError("need wt(r) >= max(Delta(G) + 1 - k, d)")
    return _run(_T2Search, g, r, d, seed, seed_partition, check, keep_trace)


def _run(cls, g, r, d, seed, seed_partition, check, keep_trace):
    from .verify import verify_certificate

    failures = []
    last_trace: list = []
    for where in _attempts(g, len(r), seed, seed_partition):
        search = cls(g, r, d, where)
        try:
            cert = search.solve()
        except _Stuck as exc:
            failures.append(str(exc))
            last_trace = search.trace
            log.debug("search attempt failed: %s", exc)
            continue
        if not keep_trace:
            cert = _drop_trace(cert)
        if check:
            ok, report = verify_certificate(g, cert)
            if not ok:
                failed = [c.name for c in report if not c.passed]
                raise EngineError(f"certificate failed re-check: {failed}", search.trace)
        return cert
    raise EngineError("; ".join(failures), last_trace)


def _drop_trace(cert):
    from dataclasses import replace
    return replace(cert, trace=())


def borodin_partition(g: Graph, r1: int, r2: int, *, seed: int | None = None) -> OrderedPartition:
    """Two parts with ``Delta(G[V_i]) <= r_i`` and ``col(G[V_i]) <= r_i``.

    Needs ``r1 + r2 >= Delta(G) >= 3``, ``r1, r2 >= 1`` and no
    ``K_{Delta+1}`` in ``g``.
    """
    from .graph import max_clique_size

    delta = g.max_degree()
    if r1 < 1 or r2 < 1:
        raise PreconditionError("r1 and r2 must be >= 1")
    if delta < 3:
        raise PreconditionError("need Delta(G) >= 3")
    if r1 + r2 < delta:
        raise PreconditionError("need r1 + r2 >= Delta(G)")
    if max_clique_size(g) >= delta + 1:
        raise PreconditionError("graph contains K_{Delta+1}")
    cert = find_partition_t2(g, (r1, r2), delta, seed=seed)
    if cert.kind != "partition":
        raise EngineError("join structure returned for a graph without K_{Delta+1}")
    p = cert.partition
    st = _State(g, (r1, r2), p.assignment(g.n))
    for i in range(2):
        for comp in st.components(i):
            if _is_regular(g.adj, comp, st.r[i]):
                raise EngineError(f"part {i} keeps an r_i-regular component")
    return p
