"""Simple undirected graphs on dense integer ids with bitset adjacency.

Vertex ids are ``0..n-1``.  Each vertex stores its neighborhood as a Python
``int`` used as a bitset, so set algebra (intersection, union, popcount) is
cheap and the code stays close to the set notation used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``adj[v]`` is the bitset of neighbors of ``v``.  Use :meth:`from_edges`
    to build one; the constructor trusts its input.
    """

    n: int
    adj: tuple[int, ...]
    _degrees: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_degrees", tuple(a.bit_count() for a in self.adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> "Graph":
        n = len(adj)
        for v, a in enumerate(adj):
            if a >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if a >> n:
                raise ValueError(f"neighbor out of range at vertex {v}")
            for u in bits(a):
                if not adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        return cls(n, tuple(adj))

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self._degrees[v]

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def max_degree(self) -> int:
        return max(self._degrees, default=0)

    def num_edges(self) -> int:
        return sum(self._degrees) // 2

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def induced(self, vertices: Iterable[int] | int) -> "InducedSubgraph":
        mask = vertices if isinstance(vertices, int) else to_mask(vertices)
        return InducedSubgraph(self, mask)

    def whole(self) -> "InducedSubgraph":
        return InducedSubgraph(self, self.all_mask)

    def delete_vertex(self, v: int) -> "Graph":
        return self.induced(self.all_mask & ~(1 << v)).to_graph()

    def complement(self) -> "Graph":
        full = self.all_mask
        return Graph(self.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(self.adj)))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class InducedSubgraph:
    """The subgraph of ``host`` induced on the bitset ``support``.

    Host degrees stay reachable through :meth:`host_degree`, since most
    conditions here compare subgraph structure with degrees in the host.
    """

    host: Graph
    support: int

    def __post_init__(self) -> None:
        if self.support >> self.host.n:
            raise ValueError("support contains vertices outside the host")

    @property
    def vertices(self) -> list[int]:
        return list(bits(self.support))

    def __len__(self) -> int:
        return self.support.bit_count()

    def __contains__(self, v: int) -> bool:
        return bool(self.support >> v & 1)

    def degree(self, v: int) -> int:
        return (self.host.adj[v] & self.support).bit_count()

    def host_degree(self, v: int) -> int:
        return self.host.degree(v)

    def neighbors(self, v: int) -> int:
        return self.host.adj[v] & self.support

    def max_degree(self) -> int:
        return max((self.degree(v) for v in bits(self.support)), default=0)

    def num_edges(self) -> int:
        return sum(self.degree(v) for v in bits(self.support)) // 2

    def has_edge(self) -> bool:
        return any(self.host.adj[v] & self.support for v in bits(self.support))

    def minus(self, v: int) -> "InducedSubgraph":
        return InducedSubgraph(self.host, self.support & ~(1 << v))

    def restrict(self, mask: int) -> "InducedSubgraph":
        return InducedSubgraph(self.host, self.support & mask)

    def is_connected(self) -> bool:
        if not self.support:
            return True
        return reach(self.host.adj, self.support, lowest(self.support)) == self.support

    def to_graph(self) -> Graph:
        """Relabel onto ``0..len-1`` in increasing id order."""
        order = self.vertices
        index = {v: i for i, v in enumerate(order)}
        adj = [0] * len(order)
        for i, v in enumerate(order):
            for u in bits(self.host.adj[v] & self.support):
                adj[i] |= 1 << index[u]
        return Graph(len(order), tuple(adj))


def reach(adj: Sequence[int], support: int, start: int) -> int:
    """Bitset of vertices reachable from ``start`` inside ``support``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= support & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _as_sub(g: Graph | InducedSubgraph) -> InducedSubgraph:
    return g.whole() if isinstance(g, Graph) else g


# --- constructors -----------------------------------------------------------

def build_complete(t: int) -> Graph:
    if t < 0:
        raise ValueError("t must be non-negative")
    full = (1 << t) - 1
    return Graph(t, tuple(full & ~(1 << v) for v in range(t)))


def build_edgeless(t: int) -> Graph:
    if t < 0:
        raise ValueError("t must be non-negative")
    return Graph(t, (0,) * t)


def build_cycle(t: int) -> Graph:
    if t < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(t, ((i, (i + 1) % t) for i in range(t)))


def build_path(t: int) -> Graph:
    return Graph.from_edges(t, ((i, i + 1) for i in range(t - 1)))


def build_petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    shift = a.n
    return Graph(a.n + b.n, a.adj + tuple(x << shift for x in b.adj))


def join(a: Graph, b: Graph) -> Graph:
    """Disjoint union of ``a`` and ``b`` plus every edge between them.

    Vertices of ``a`` keep their ids; vertices of ``b`` are shifted by ``a.n``.
    """
    shift = a.n
    a_mask = a.all_mask
    b_mask = b.all_mask << shift
    adj = [x | b_mask for x in a.adj] + [(x << shift) | a_mask for x in b.adj]
    return Graph(a.n + b.n, tuple(adj))


def o_n_roles(n: int) -> dict[str, frozenset[int]]:
    """Vertex roles of :func:`build_o_n`.

    ``x`` and ``y`` are the ends of the removed edge, ``core`` is the
    remaining ``K_{n-2}``, ``x_side``/``y_side`` are the parts of the
    ``K_{n-1}`` joined to ``x`` and ``y`` respectively.
    """
    if n < 3:
        raise ValueError("O_n needs n >= 3")
    half = (n - 1) // 2
    big = list(range(n, 2 * n - 1))
    return {
        "x": frozenset({0}),
        "y": frozenset({1}),
        "core": frozenset(range(2, n)),
        "x_side": frozenset(big[:half]),
        "y_side": frozenset(big[half:]),
    }


def build_o_n(n: int) -> Graph:
    """``K_n - xy`` plus a disjoint ``K_{n-1}``, half of it joined to ``x``
    (``floor((n-1)/2)`` vertices) and the rest joined to ``y``.

    Ids: ``x=0``, ``y=1``, core ``2..n-1``, then the ``K_{n-1}`` on
    ``n..2n-2`` with the ``x`` side first.
    """
    roles = o_n_roles(n)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) != (0, 1)]
    big = sorted(roles["x_side"] | roles["y_side"])
    edges += [(u, v) for i, u in enumerate(big) for v in big[i + 1:]]
    edges += [(0, v) for v in roles["x_side"]]
    edges += [(1, v) for v in roles["y_side"]]
    return Graph.from_edges(2 * n - 1, edges)


# --- structural queries -----------------------------------------------------

def components(g: Graph | InducedSubgraph) -> list[InducedSubgraph]:
    """Connected components, ordered by their lowest vertex id."""
    sub = _as_sub(g)
    out = []
    rest = sub.support
    while rest:
        comp = reach(sub.host.adj, rest, lowest(rest))
        out.append(InducedSubgraph(sub.host, comp))
        rest &= ~comp
    return out


def component_masks(adj: Sequence[int], support: int) -> list[int]:
    out = []
    rest = support
    while rest:
        comp = reach(adj, rest, lowest(rest))
        out.append(comp)
        rest &= ~comp
    return out


def cut_vertices_mask(adj: Sequence[int], support: int) -> int:
    """Articulation points of the graph induced on ``support`` (iterative DFS)."""
    cut = 0
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    for root in bits(support):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, -1, adj[root] & support)]
        while stack:
            v, parent, pending = stack[-1]
            if pending:
                u = lowest(pending)
                stack[-1] = (v, parent, pending & (pending - 1))
                if u == parent:
                    continue
                if u in disc:
                    low[v] = min(low[v], disc[u])
                else:
                    disc[u] = low[u] = counter
                    counter += 1
                    if v == root:
                        root_children += 1
                    stack.append((u, v, adj[u] & support))
            else:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[v])
                    if parent != root and low[v] >= disc[parent]:
                        cut |= 1 << parent
        if root_children > 1:
            cut |= 1 << root
    return cut


def non_cut_vertices(h: InducedSubgraph | Graph) -> frozenset[int]:
    """Vertices ``v`` of a connected ``h`` for which ``h - v`` stays connected."""
    h = _as_sub(h)
    if not h.support:
        raise ValueError("non_cut_vertices needs a non-empty subgraph")
    if not h.is_connected():
        raise ValueError("non_cut_vertices needs a connected subgraph")
    cut = cut_vertices_mask(h.host.adj, h.support)
    return frozenset(bits(h.support & ~cut))


def max_clique(g: Graph | InducedSubgraph) -> frozenset[int]:
    """A maximum clique, by branch and bound with a greedy-coloring bound."""
    sub = _as_sub(g)
    adj = sub.host.adj
    best = 0
    best_size = 0

    def color_bound(cand: int) -> list[tuple[int, int]]:
        # greedy sequential coloring; returns (vertex, color) in color order
        order = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                v = lowest(avail)
                avail &= ~adj[v] & ~(1 << v)
                rest &= ~(1 << v)
                order.append((v, color))
        return order

    def expand(clique: int, size: int, cand: int) -> None:
        nonlocal best, best_size
        order = color_bound(cand)
        for v, c in reversed(order):
            if size + c <= best_size:
                return
            new_cand = cand & adj[v]
            if new_cand:
                expand(clique | 1 << v, size + 1, new_cand)
            elif size + 1 > best_size:
                best, best_size = clique | 1 << v, size + 1
            cand &= ~(1 << v)

    if sub.support:
        expand(0, 0, sub.support)
    return frozenset(bits(best))


def max_clique_size(g: Graph | InducedSubgraph) -> int:
    return len(max_clique(g))


def is_complete(c: Graph | InducedSubgraph) -> bool:
    c = _as_sub(c)
    size = len(c)
    return all(c.degree(v) == size - 1 for v in bits(c.support))


def is_odd_cycle(c: Graph | InducedSubgraph) -> bool:
    c = _as_sub(c)
    size = len(c)
    if size < 3 or size % 2 == 0:
        return False
    return all(c.degree(v) == 2 for v in bits(c.support)) and c.is_connected()


def degeneracy(g: Graph | InducedSubgraph) -> int:
    """Largest minimum degree over all subgraphs, by min-degree peeling."""
    sub = _as_sub(g)
    adj = sub.host.adj
    rest = sub.support
    deg = {v: (adj[v] & rest).bit_count() for v in bits(rest)}
    best = 0
    while rest:
        v = min(deg, key=lambda u: (deg[u], u))
        best = max(best, deg[v])
        rest &= ~(1 << v)
        del deg[v]
        for u in bits(adj[v] & rest):
            deg[u] -= 1
    return best


def degeneracy_order(g: Graph | InducedSubgraph) -> list[int]:
    """Peeling order: each vertex has at most ``degeneracy`` later neighbors."""
    sub = _as_sub(g)
    adj = sub.host.adj
    rest = sub.support
    deg = {v: (adj[v] & rest).bit_count() for v in bits(rest)}
    order = []
    while rest:
        v = min(deg, key=lambda u: (deg[u], u))
        order.append(v)
        rest &= ~(1 << v)
        del deg[v]
        for u in bits(adj[v] & rest):
            deg[u] -= 1
    return order


def min_degree_in_host(h: InducedSubgraph) -> int:
    if not h.support:
        raise ValueError("min_degree_in_host needs a non-empty support")
    return min(h.host.degree(v) for v in bits(h.support))


def _refine(adj: Sequence[int], cells: list[int]) -> list[int]:
    """Equitable refinement of an ordered cell partition (bitsets).

    Splitting depends only on neighbor counts, so it commutes with
    isomorphisms; cells are ordered by their count signatures.
    """
    changed = True
    while changed:
        changed = False
        out = []
        for cell in cells:
            if cell & (cell - 1) == 0:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], int] = {}
            for v in bits(cell):
                sig = tuple((adj[v] & c).bit_count() for c in cells)
                groups[sig] = groups.get(sig, 0) | 1 << v
            if len(groups) > 1:
                changed = True
                out.extend(groups[s] for s in sorted(groups))
            else:
                out.append(cell)
        cells = out
    return cells


def isomorphic(a: Graph, b: Graph) -> bool:
    """Exact isomorphism test for small graphs.

    Degree-sequence prefilter, then backtracking over refined cells of the
    disjoint union so candidate images always share a refinement class.
    """
    if a.n != b.n or a.num_edges() != b.num_edges():
        return False
    if sorted(a.degrees) != sorted(b.degrees):
        return False
    n = a.n
    if n == 0:
        return True
    union = disjoint_union(a, b)
    a_mask = a.all_mask
    cells = _refine(union.adj, [union.all_mask])
    for cell in cells:
        if (cell & a_mask).bit_count() * 2 != cell.bit_count():
            return False

    def search(cells: list[int]) -> bool:
        target = None
        for cell in cells:
            if (cell & a_mask).bit_count() > 1:
                target = cell
                break
        if target is None:
            # discrete on both sides: read off the pairing and check edges
            perm = [0] * n
            for cell in cells:
                u = lowest(cell & a_mask)
                v = lowest(cell & ~a_mask) - n
                perm[u] = v
            return all(
                (b.adj[perm[u]] >> perm[w]) & 1
                for u in range(n)
                for w in bits(a.adj[u])
            )
        u = lowest(target & a_mask)
        for v in bits(target & ~a_mask):
            idx = cells.index(target)
            pair = (1 << u) | (1 << v)
            trial = cells[:idx] + [pair, target & ~pair] + cells[idx + 1:]
            trial = _refine(union.adj, trial)
            if all((c & a_mask).bit_count() * 2 == c.bit_count() for c in trial):
                if search(trial):
                    return True
        return False

    return search(cells)
