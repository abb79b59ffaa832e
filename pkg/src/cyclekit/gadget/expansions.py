"""(D, m)-expansions: connected D-sets within radius m of a center."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from ..connect import connect_avoiding, low_diameter_core
from ..errors import DomainError, NotFound
from ..graph import Graph, _check_set, bfs_layers, girth, is_cycle, shortest_path


def radius_within(G: Graph, center: int, S: Iterable[int]) -> int | float:
    """Eccentricity of ``center`` inside ``G[S]`` (infinity if ``G[S]`` is disconnected)."""
    S = set(S)
    seen = 0
    ecc = 0
    for i, layer in enumerate(bfs_layers(G, (center,), set(range(G.n)) - S)):
        seen += len(layer)
        ecc = i
    return ecc if seen == len(S) else math.inf


def _depths(G: Graph, center: int, S: Iterable[int]) -> dict[int, int]:
    out = {}
    for i, layer in enumerate(bfs_layers(G, (center,), set(range(G.n)) - set(S))):
        for v in layer:
            out[v] = i
    return out


@dataclass(frozen=True)
class VertexExpansion:
    v: int
    F: frozenset
    m: float

    @property
    def D(self) -> int:
        return len(self.F)

    @classmethod
    def bare(cls, v: int) -> "VertexExpansion":
        return cls(v, frozenset((v,)), 0)

    def problems(self, G: Graph) -> list[str]:
        out = []
        if self.v not in self.F:
            out.append(f"center {self.v} not in F")
            return out
        if any(not 0 <= u < G.n for u in self.F):
            return ["vertex out of range"]
        r = radius_within(G, self.v, self.F)
        if r == math.inf:
            out.append("G[F] is disconnected")
        elif r > self.m:
            out.append(f"radius {r} exceeds bound {self.m}")
        return out

    def is_valid(self, G: Graph) -> bool:
        return not self.problems(G)

    def to_dict(self) -> dict[str, Any]:
        return {"v": self.v, "F": sorted(self.F), "D": self.D, "m": self.m}


def trim_expansion(G: Graph, F: VertexExpansion, D_new: int) -> VertexExpansion:
    """Drop farthest vertices (largest id first) until ``D_new`` remain."""
    if not 1 <= D_new <= F.D:
        raise DomainError(f"D_new must lie in [1, {F.D}], got {D_new}")
    depth = _depths(G, F.v, F.F)
    order = sorted(F.F, key=lambda u: (depth.get(u, math.inf), u), reverse=True)
    return VertexExpansion(F.v, frozenset(F.F - set(order[: F.D - D_new])), F.m)


def find_vertex_expansions(G: Graph, C: Sequence[int] | None, xs: Sequence[int],
                           Ds: Sequence[int | Sequence[int]], m: float, *,
                           avoid: Iterable[int] = (), check_cycle: bool = True):
    """Disjoint expansions around each ``x_i`` of the requested sizes.

    ``Ds[i]`` is a size or a list of sizes for ``x_i``; the result mirrors that
    shape.  Expansions avoid ``V(C) ∪ xs`` except at their own center, and
    stay within radius ``5m``.  Requests grow one vertex per round, larger
    sizes first, each taking its shallowest frontier vertex (then smallest id).
    """
    xs = list(xs)
    if len(set(xs)) != len(xs):
        raise DomainError("centers must be distinct")
    if len(Ds) != len(xs):
        raise DomainError("need one size entry per center")
    G.check_vertices(xs)
    blocked = _check_set(G, avoid)
    cyc = list(C) if C is not None else []
    if cyc and check_cycle:
        if not is_cycle(G, cyc):
            raise DomainError("C is not a cycle of G")
        if len(cyc) != girth(G):
            raise DomainError(f"C has length {len(cyc)} but the girth is {girth(G)}")
    if set(xs) & blocked:
        return NotFound("center_in_avoid_set", info={"centers": sorted(set(xs) & blocked)})
    nested = [not isinstance(d, int) for d in Ds]
    requests = []
    for i, d in enumerate(Ds):
        for j, size in enumerate([d] if isinstance(d, int) else list(d)):
            if size < 1:
                raise DomainError("expansion sizes must be at least 1")
            requests.append((i, j, int(size)))
    radius = 5 * m
    claimed = set(xs) | set(cyc) | blocked
    members = {(i, j): {xs[i]: 0} for i, j, _ in requests}
    order = sorted(requests, key=lambda t: (-t[2], t[0], t[1]))
    active = [t for t in order if t[2] > 1]
    while active:
        nxt = []
        for i, j, size in active:
            mem = members[(i, j)]
            best = None
            for u, du in mem.items():
                if du + 1 > radius:
                    continue
                for w in G.adj[u]:
                    if w not in claimed and w not in mem:
                        key = (du + 1, w)
                        if best is None or key < best:
                            best = key
            if best is None:
                return NotFound("blocked", info={"center": xs[i], "request": [i, j],
                                                 "size": len(mem), "wanted": size})
            mem[best[1]] = best[0]
            claimed.add(best[1])
            if len(mem) < size:
                nxt.append((i, j, size))
        active = nxt
    out = []
    for i, d in enumerate(Ds):
        row = [VertexExpansion(xs[i], frozenset(members[(i, j)]), radius)
               for j in range(len(d) if nested[i] else 1)]
        out.append(row if nested[i] else row[0])
    return out


def enlarge_expansions(G: Graph, A_avoid: Iterable[int], expansions: Sequence[VertexExpansion],
                       target: int | None = None, m: float | None = None):
    """Grow up to four disjoint expansions to ``target`` vertices around the same centers.

    Each one is rebuilt as a trunk path from its center (through its old
    set) into a fresh low-diameter core, then trimmed to the target.
    """
    if len(expansions) > 4:
        raise DomainError("at most four expansions")
    A_avoid = _check_set(G, A_avoid)
    sets = [set(F.F) for F in expansions]
    for a in range(len(sets)):
        if sets[a] & A_avoid:
            raise DomainError("expansions must avoid A_avoid")
        for b in range(a):
            if sets[a] & sets[b]:
                raise DomainError("expansions must be pairwise disjoint")
    if m is None:
        m = max((F.m for F in expansions), default=1) or 1
    if target is None:
        target = max(1, math.ceil(G.n / m ** 2))
    free = G.n - len(A_avoid)
    if len(expansions) * target > free:
        return NotFound("too_few_vertices", proved=True,
                        info={"needed": len(expansions) * target, "free": free})
    out: list[VertexExpansion] = []
    for idx, F in enumerate(expansions):
        if target <= F.D:
            out.append(trim_expansion(G, F, target))
            continue
        others = set().union(*(set(E.F) for k, E in enumerate(expansions) if k != idx))
        done = set().union(*(set(E.F) for E in out)) if out else set()
        W = A_avoid | others | done
        core = low_diameter_core(G, W | F.F, target=target)
        if not core:
            return NotFound("no_core", info={"center": F.v, "target": target})
        trunk = connect_avoiding(G, F.F, core.B, W)
        if not trunk:
            return NotFound("no_trunk", info={"center": F.v})
        inner = shortest_path(G, (F.v,), (trunk.start,), set(range(G.n)) - F.F)
        S = set(inner.vertices) | set(trunk.vertices) | set(core.B)
        E = VertexExpansion(F.v, frozenset(S), math.inf)
        E = trim_expansion(G, E, target)
        out.append(VertexExpansion(F.v, E.F, radius_within(G, F.v, E.F)))
    return out
