"""Simple undirected graphs, balls and spheres, bipartitions and the parity class.

Vertices are dense ids ``0..n-1``.  Each graph keeps the external label of
every vertex so witnesses can be reported in the caller's own numbering.
Adjacency is stored twice: sorted tuples for deterministic iteration and
Python-int bitmasks for the exhaustive searches.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import DomainError

INF = float("inf")


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "nbrs", "masks", "labels", "edge_count")

    def __init__(self, n: int, adj: Sequence[Iterable[int]], labels: Sequence[Hashable] | None = None):
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self.nbrs: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in self.adj)
        masks = []
        for a in self.adj:
            m = 0
            for u in a:
                m |= 1 << u
            masks.append(m)
        self.masks: tuple[int, ...] = tuple(masks)
        self.labels: tuple[Hashable, ...] = tuple(labels) if labels is not None else tuple(range(n))
        self.edge_count = sum(len(a) for a in self.adj) // 2

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __len__(self) -> int:
        return self.n

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbrs[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, a in enumerate(self.adj):
            for v in a:
                if u < v:
                    yield (u, v)

    def check_vertices(self, vs: Iterable[int]) -> None:
        for v in vs:
            if not isinstance(v, int) or not 0 <= v < self.n:
                raise DomainError(f"vertex {v!r} not in graph of order {self.n}")


@dataclass(frozen=True)
class Path:
    """A vertex sequence; its length is the number of edges."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def reversed(self) -> "Path":
        return Path(self.vertices[::-1])

    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    def problems(self, G: Graph, avoid: Iterable[int] = ()) -> list[str]:
        """Everything wrong with this path as a simple path of ``G`` avoiding ``avoid``."""
        out = []
        vs = self.vertices
        if not vs:
            return ["empty vertex sequence"]
        if any(not 0 <= v < G.n for v in vs):
            return ["vertex out of range"]
        if len(set(vs)) != len(vs):
            out.append("repeated vertex")
        for a, b in zip(vs, vs[1:]):
            if not G.has_edge(a, b):
                out.append(f"non-edge {a}-{b}")
        hit = set(avoid).intersection(vs)
        if hit:
            out.append(f"meets avoided vertices {sorted(hit)}")
        return out

    def is_valid(self, G: Graph, avoid: Iterable[int] = ()) -> bool:
        return not self.problems(G, avoid)


def join_paths(*parts: Sequence[int]) -> Path:
    """Concatenate vertex sequences that share their meeting endpoints."""
    seq: list[int] = []
    for part in parts:
        part = list(part)
        if not part:
            continue
        if seq:
            if seq[-1] != part[0]:
                raise DomainError(f"paths do not meet: {seq[-1]} != {part[0]}")
            seq.extend(part[1:])
        else:
            seq.extend(part)
    return Path(tuple(seq))


# -- construction -------------------------------------------------------------


def build_graph(edge_list: Iterable[Sequence[int]], n: int | None = None,
                labels: Sequence[Hashable] | None = None) -> Graph:
    """Build a simple graph from integer vertex pairs.

    Repeated pairs are merged; a loop raises :class:`DomainError`.  Without
    ``n`` the order is one more than the largest id seen.
    """
    pairs = []
    top = -1
    for pair in edge_list:
        u, v = pair
        if not (isinstance(u, int) and isinstance(v, int)) or u < 0 or v < 0:
            raise DomainError(f"vertex ids must be non-negative integers, got {pair!r}")
        if u == v:
            raise DomainError(f"loop at vertex {u}: ({u}, {v})")
        pairs.append((u, v))
        top = max(top, u, v)
    if n is None:
        n = top + 1
    elif top >= n:
        raise DomainError(f"edge endpoint {top} out of range for n={n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in pairs:
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, adj, labels)


def from_labeled_edges(pairs: Iterable[tuple[Hashable, Hashable]],
                       isolated: Iterable[Hashable] = ()) -> Graph:
    """Build a graph from arbitrary sortable labels, numbering them in sorted order."""
    pairs = list(pairs)
    seen = set(isolated)
    for u, v in pairs:
        seen.add(u)
        seen.add(v)
    order = sorted(seen)
    index = {lab: i for i, lab in enumerate(order)}
    for u, v in pairs:
        if u == v:
            raise DomainError(f"loop at vertex {u!r}: ({u!r}, {v!r})")
    return build_graph(((index[u], index[v]) for u, v in pairs), n=len(order), labels=order)


def degrees(G: Graph) -> tuple[int, Fraction, int]:
    """(minimum, average, maximum) degree; the average is exact."""
    if G.n == 0:
        return (0, Fraction(0), 0)
    ds = [len(a) for a in G.adj]
    return (min(ds), Fraction(2 * G.edge_count, G.n), max(ds))


def average_degree(G: Graph) -> Fraction:
    return Fraction(2 * G.edge_count, G.n) if G.n else Fraction(0)


# -- distances -----------------------------------------------------------------


def _check_set(G: Graph, W: Iterable[int]) -> set[int]:
    W = set(W)
    G.check_vertices(W)
    return W


def bfs_layers(G: Graph, W: Iterable[int], avoid: Iterable[int] = ()) -> Iterator[set[int]]:
    """Yield the spheres N^0(W), N^1(W), ... of ``G - avoid`` until they run out."""
    blocked = set(avoid)
    layer = set(W) - blocked
    seen = set(layer)
    while layer:
        yield layer
        nxt = set()
        for u in layer:
            for v in G.adj[u]:
                if v not in seen and v not in blocked:
                    nxt.add(v)
        seen |= nxt
        layer = nxt


def ball(G: Graph, W: Iterable[int], r: int, avoid: Iterable[int] = ()) -> set[int]:
    """B^r(W): every vertex within distance ``r`` of ``W`` in ``G - avoid``."""
    W = _check_set(G, W)
    if r < 0:
        raise DomainError("radius must be non-negative")
    out: set[int] = set()
    for i, layer in enumerate(bfs_layers(G, W, avoid)):
        if i > r:
            break
        out |= layer
    return out


def sphere(G: Graph, W: Iterable[int], r: int, avoid: Iterable[int] = ()) -> set[int]:
    """N^r(W): the vertices at distance exactly ``r`` from ``W``."""
    W = _check_set(G, W)
    if r < 0:
        raise DomainError("radius must be non-negative")
    for i, layer in enumerate(bfs_layers(G, W, avoid)):
        if i == r:
            return layer
    return set()


def neighborhood(G: Graph, W: Iterable[int]) -> set[int]:
    """External neighbourhood N(W)."""
    W = set(W)
    out = set()
    for u in W:
        out.update(G.adj[u])
    return out - W


def distances_from(G: Graph, sources: Iterable[int], avoid: Iterable[int] = ()) -> dict[int, int]:
    dist = {}
    for i, layer in enumerate(bfs_layers(G, sources, avoid)):
        for v in layer:
            dist[v] = i
    return dist


def distance(G: Graph, u: int, v: int, avoid: Iterable[int] = ()) -> int | float:
    G.check_vertices((u, v))
    for i, layer in enumerate(bfs_layers(G, (u,), avoid)):
        if v in layer:
            return i
    return INF


def shortest_path(G: Graph, sources: Iterable[int], targets: Iterable[int],
                  avoid: Iterable[int] = ()) -> Path | None:
    """Lexicographically least shortest path from a source to a target in ``G - avoid``.

    Internal vertices may be anything outside ``avoid``; callers that need
    set-to-set semantics block the sets themselves.
    """
    blocked = set(avoid)
    sources = sorted(set(sources) - blocked)
    targets = set(targets) - blocked
    if not sources or not targets:
        return None
    # distance to the target set, then greedy lexicographic walk
    dist = distances_from(G, targets, blocked)
    best = [s for s in sources if s in dist]
    if not best:
        return None
    d = min(dist[s] for s in best)
    cur = min(s for s in best if dist[s] == d)
    seq = [cur]
    while dist[cur] > 0:
        cur = min(w for w in G.adj[cur] if dist.get(w) == dist[cur] - 1)
        seq.append(cur)
    return Path(tuple(seq))


def components(G: Graph, avoid: Iterable[int] = ()) -> list[list[int]]:
    blocked = set(avoid)
    seen = set(blocked)
    out = []
    for s in range(G.n):
        if s in seen:
            continue
        comp = set()
        for layer in bfs_layers(G, (s,), blocked):
            comp |= layer
        seen |= comp
        out.append(sorted(comp))
    return out


def is_connected(G: Graph, within: Iterable[int] | None = None) -> bool:
    """Connectivity of ``G`` or of the induced subgraph on ``within``."""
    vs = set(range(G.n)) if within is None else set(within)
    if not vs:
        return True
    avoid = set(range(G.n)) - vs
    reach = set()
    for layer in bfs_layers(G, (min(vs),), avoid):
        reach |= layer
    return reach == vs


# -- subgraphs -------------------------------------------------------------------


def induced(G: Graph, S: Iterable[int]) -> Graph:
    """G[S], renumbered so that new vertex i is the i-th smallest id of ``S``."""
    S = sorted(_check_set(G, S))
    index = {v: i for i, v in enumerate(S)}
    adj = [[index[w] for w in G.adj[v] if w in index] for v in S]
    return Graph(len(S), adj, [G.labels[v] for v in S])


def minus(G: Graph, S: Iterable[int]) -> Graph:
    """G - S, the subgraph induced on the remaining vertices."""
    S = _check_set(G, S)
    return induced(G, [v for v in range(G.n) if v not in S])


def union_graphs(G: Graph, H: Graph) -> Graph:
    """G ∪ H over a shared id space."""
    n = max(G.n, H.n)
    adj = [set() for _ in range(n)]
    for X in (G, H):
        for u, v in X.edges():
            adj[u].add(v)
            adj[v].add(u)
    labels = G.labels + H.labels[G.n:] if H.n > G.n else G.labels
    return Graph(n, adj, labels)


def minus_edges(G: Graph, H: Graph) -> Graph:
    """G \\ H: vertex set of ``G``, edges of ``G`` not in ``H``."""
    adj = [set(a) for a in G.adj]
    for u, v in H.edges():
        if u < G.n and v < G.n:
            adj[u].discard(v)
            adj[v].discard(u)
    return Graph(G.n, adj, G.labels)


def edge_subgraph(G: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    """Spanning subgraph of ``G`` with the given edges (each must be in ``G``)."""
    adj: list[set[int]] = [set() for _ in range(G.n)]
    for u, v in edges:
        if not G.has_edge(u, v):
            raise DomainError(f"{u}-{v} is not an edge")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(G.n, adj, G.labels)


# -- bipartition and parity -----------------------------------------------------


@dataclass(frozen=True)
class Bipartition:
    """Side label (0 or 1) per vertex; each component's least vertex gets side 0."""

    side: tuple[int, ...]

    def classes(self) -> tuple[list[int], list[int]]:
        return ([v for v, s in enumerate(self.side) if s == 0],
                [v for v, s in enumerate(self.side) if s == 1])


@dataclass(frozen=True)
class OddCycle:
    """Witness that a graph is not bipartite."""

    cycle: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.cycle)


def bipartition(G: Graph) -> Bipartition | OddCycle:
    """Proper 2-colouring by BFS, or an odd cycle when none exists."""
    side = [-1] * G.n
    parent = [-1] * G.n
    depth = [0] * G.n
    for s in range(G.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in G.adj[u]:
                if side[v] == -1:
                    side[v] = 1 - side[u]
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif side[v] == side[u]:
                    return OddCycle(_tree_cycle(u, v, parent, depth))
    return Bipartition(tuple(side))


def _tree_cycle(u: int, v: int, parent: list[int], depth: list[int]) -> tuple[int, ...]:
    # close the non-tree edge uv through the BFS tree
    a, b = [u], [v]
    while depth[a[-1]] > depth[b[-1]]:
        a.append(parent[a[-1]])
    while depth[b[-1]] > depth[a[-1]]:
        b.append(parent[b[-1]])
    while a[-1] != b[-1]:
        a.append(parent[a[-1]])
        b.append(parent[b[-1]])
    return tuple(a + b[-2::-1])


def is_bipartite(G: Graph) -> bool:
    return isinstance(bipartition(G), Bipartition)


def _connected_bipartition(H: Graph) -> Bipartition:
    if H.n == 0 or not is_connected(H):
        raise DomainError("parity class needs a connected graph")
    bp = bipartition(H)
    if isinstance(bp, OddCycle):
        raise DomainError(f"parity class needs a bipartite graph; odd cycle {bp.cycle}")
    return bp


def parity_pi(H: Graph, u: int, v: int, bip: Bipartition | None = None) -> int:
    """0 if u == v, 1 if u, v lie in different classes, 2 if in the same class."""
    H.check_vertices((u, v))
    bp = bip or _connected_bipartition(H)
    if u == v:
        return 0
    return 1 if bp.side[u] != bp.side[v] else 2


def parity_triple(H: Graph, a1: int, a2: int, a3: int) -> int:
    """π(a1,a3) + π(a2,a3) - π(a1,a2); always 0 or 2 for distinct vertices."""
    if len({a1, a2, a3}) != 3:
        raise DomainError("parity_triple needs three distinct vertices")
    bp = _connected_bipartition(H)
    return (parity_pi(H, a1, a3, bp) + parity_pi(H, a2, a3, bp)
            - parity_pi(H, a1, a2, bp))


def check_parity(H: Graph, u: int, v: int, length: int) -> bool:
    """Whether a u,v-path of this length is parity-compatible in connected bipartite ``H``."""
    return (length - parity_pi(H, u, v)) % 2 == 0


# -- cycles --------------------------------------------------------------------


def cycle_problems(G: Graph, cycle: Sequence[int]) -> list[str]:
    cyc = list(cycle)
    if len(cyc) < 3:
        return ["cycle needs at least 3 vertices"]
    if len(set(cyc)) != len(cyc):
        return ["repeated vertex"]
    if any(not 0 <= v < G.n for v in cyc):
        return ["vertex out of range"]
    return [f"non-edge {a}-{b}" for a, b in zip(cyc, cyc[1:] + cyc[:1]) if not G.has_edge(a, b)]


def is_cycle(G: Graph, cycle: Sequence[int]) -> bool:
    return not cycle_problems(G, cycle)


def _cycle_through(G: Graph, root: int, blocked: set[int]) -> tuple[int, ...] | None:
    """A shortest cycle through ``root`` in ``G - blocked``, via BFS branches."""
    parent = {root: -1}
    depth = {root: 0}
    branch = {root: root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in G.adj[u]:
            if v in blocked or v in depth:
                continue
            depth[v] = depth[u] + 1
            parent[v] = u
            branch[v] = v if u == root else branch[u]
            queue.append(v)
    best = None
    for u in depth:
        if u == root:
            continue
        for v in G.adj[u]:
            if v <= u or v == root or v not in depth or parent[u] == v or parent[v] == u:
                continue
            if branch[u] == branch[v]:
                continue
            size = depth[u] + depth[v] + 1
            if best is None or size < best[0] or (size == best[0] and (u, v) < best[1]):
                best = (size, (u, v))
    if best is None:
        return None
    u, v = best[1]
    a, b = [u], [v]
    while a[-1] != root:
        a.append(parent[a[-1]])
    while b[-1] != root:
        b.append(parent[b[-1]])
    return tuple(a[::-1] + b[:-1])


def _canonical_cycle(cyc: Sequence[int]) -> tuple[int, ...]:
    cyc = list(cyc)
    i = cyc.index(min(cyc))
    fwd = cyc[i:] + cyc[:i]
    bwd = [fwd[0]] + fwd[:0:-1]
    return tuple(min(fwd, bwd))


def short_cycles(G: Graph, avoid: Iterable[int] = ()) -> list[tuple[int, ...]]:
    """Distinct cycles found as shortest cycles through each vertex of ``G - avoid``.

    Sorted by length, then canonically; the first entry is a shortest cycle.
    """
    blocked = set(avoid)
    found = set()
    for r in range(G.n):
        if r in blocked:
            continue
        cyc = _cycle_through(G, r, blocked)
        if cyc is not None:
            found.add(_canonical_cycle(cyc))
    return sorted(found, key=lambda c: (len(c), c))


def girth(G: Graph, avoid: Iterable[int] = ()) -> int | float:
    """Length of a shortest cycle of ``G - avoid`` (infinity for forests)."""
    cycles = short_cycles(G, avoid)
    return len(cycles[0]) if cycles else INF


def shortest_cycle(G: Graph, avoid: Iterable[int] = ()) -> tuple[int, ...] | None:
    cycles = short_cycles(G, avoid)
    return cycles[0] if cycles else None
