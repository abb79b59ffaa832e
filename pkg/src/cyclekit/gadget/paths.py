"""Paths with lengths in a window, pairs of window paths, and exact-length paths."""

from __future__ import annotations

import logging
from typing import Any, Iterable, Sequence

from ..connect import connect_avoiding, low_diameter_core
from ..errors import DomainError, NotFound, Unknown
from ..graph import (Bipartition, Graph, Path, _check_set, bipartition, distances_from,
                     induced, is_bipartite, join_paths, shortest_path, short_cycles)
from .adjuster import Adjuster, build_simple_adjuster, chain_adjusters
from .expansions import VertexExpansion, enlarge_expansions
from .oracle import ORACLE_BUDGET, exact_length_path_oracle

log = logging.getLogger(__name__)


def effective_slack(literal_slack: float, n: int) -> tuple[int, str]:
    """The window slack actually used, and which bound was active."""
    if literal_slack <= n:
        return int(literal_slack), "literal"
    return n, "n"


def _bfs_tree(G: Graph, root: int, blocked: set[int]) -> tuple[dict[int, int], dict[int, int]]:
    dist = {root: 0}
    parent = {root: -1}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in G.adj[u]:
                if w not in dist and w not in blocked:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
    return dist, parent


def _walk_back(parent: dict[int, int], v: int) -> list[int]:
    out = [v]
    while parent[out[-1]] != -1:
        out.append(parent[out[-1]])
    return out[::-1]


def path_in_window(G: Graph, W: Iterable[int], F1: VertexExpansion, F2: VertexExpansion,
                   ell: int, slack: int | None = None) -> Path | NotFound:
    """A v1,v2-path in ``G - W`` with length in ``[ell, ell + slack]``.

    Two partial paths grow out of v1 and v2.  While the shortest closing
    connection between their ends is too short, one of them is extended to
    a fresh vertex, preferring a move whose closure lands in the window and
    otherwise the move that brings the closed length closest to ``ell``
    from below.  The default slack is ``5m`` for the larger end radius,
    capped at n.
    """
    W = _check_set(G, W)
    v1, v2 = F1.v, F2.v
    if F1.F & F2.F:
        raise DomainError("F1 and F2 must be disjoint")
    if (F1.F | F2.F) & W:
        raise DomainError("expansions must avoid W")
    if slack is None:
        slack, _ = effective_slack(5 * max(F1.m, F2.m, 1), G.n)
    hi = ell + slack
    if ell > G.n - 1 - len(W):
        return NotFound("too_long", proved=True, info={"ell": ell})
    P1, P2 = [v1], [v2]
    seen_totals = []
    while True:
        used = set(P1) | set(P2)
        blocked = W | (used - {P1[-1], P2[-1]})
        close = shortest_path(G, (P1[-1],), (P2[-1],), blocked)
        base = len(P1) + len(P2) - 2
        if close is not None:
            total = base + close.length
            seen_totals.append(total)
            if ell <= total <= hi:
                return join_paths(P1, close.vertices, P2[::-1])
        # candidate extensions of either end towards a fresh vertex
        best = None
        core = low_diameter_core(G, W | used, target=1)
        hub = core.center if core else None
        for side in (0, 1):
            mine, other = (P1, P2) if side == 0 else (P2, P1)
            block_ext = W | (used - {mine[-1]})
            dist, parent = _bfs_tree(G, mine[-1], block_ext | {other[-1]})
            for c, dc in dist.items():
                if dc == 0:
                    continue
                ext = _walk_back(parent, c)
                new_mine = mine + ext[1:]
                new_base = base + dc
                if new_base > ell + 2 * max(F1.m, F2.m, 1):
                    continue
                blk = W | ((set(new_mine) | set(other)) - {c, other[-1]})
                cl = _dist_between(G, c, other[-1], blk)
                if cl is None:
                    continue
                tot = new_base + cl
                if ell <= tot <= hi:
                    key = (0, tot, c != hub, side, c)
                elif tot < ell:
                    key = (1, ell - tot, c != hub, side, c)
                else:
                    continue
                if best is None or key < best[0]:
                    best = (key, side, new_mine)
        if best is None:
            return NotFound("stalled", info={"closed_lengths": seen_totals[-5:], "ell": ell})
        _, side, new_mine = best
        if side == 0:
            P1 = new_mine
        else:
            P2 = new_mine


def _dist_between(G: Graph, a: int, b: int, blocked: set[int]) -> int | None:
    if a == b:
        return 0
    dist = {a: 0}
    frontier = [a]
    while frontier:
        nxt = []
        for u in frontier:
            for w in G.adj[u]:
                if w == b:
                    return dist[u] + 1
                if w not in dist and w not in blocked:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return None


def two_paths_in_window(G: Graph, A_avoid: Iterable[int], F1: VertexExpansion, F2: VertexExpansion,
                        F3: VertexExpansion, F4: VertexExpansion, ell: int,
                        slack: int | None = None, enlarge: bool = False) -> tuple[Path, Path] | NotFound:
    """Disjoint P, Q joining {v1, v2} to {v3, v4} with ``ell <= l(P)+l(Q) <= ell + slack``.

    P is a shortest connection (optionally routed through enlarged ends);
    Q takes up the remaining length through ``path_in_window``.
    """
    A_avoid = _check_set(G, A_avoid)
    Fs = [F1, F2, F3, F4]
    for a in range(4):
        if Fs[a].F & A_avoid:
            raise DomainError("expansions must avoid A_avoid")
        for b in range(a):
            if Fs[a].F & Fs[b].F:
                raise DomainError("expansions must be pairwise disjoint")
    if slack is None:
        slack, _ = effective_slack(22 * max(F.m for F in Fs) or 22, G.n)
    left = {F1.v, F2.v}
    right = {F3.v, F4.v}
    P = None
    if enlarge:
        big = enlarge_expansions(G, A_avoid, Fs)
        if big:
            bridge = connect_avoiding(G, big[0].F | big[1].F, big[2].F | big[3].F, A_avoid)
            if bridge:
                i = 0 if bridge.start in big[0].F else 1
                j = 2 if bridge.end in big[2].F else 3
                region = big[i].F | set(bridge.vertices) | big[j].F
                P = shortest_path(G, (Fs[i].v,), (Fs[j].v,), set(range(G.n)) - region)
                others = {Fs[1 - i].v, Fs[5 - j].v}
                if P is not None and set(P.vertices) & others:
                    P = None
    if P is None:
        P = connect_avoiding(G, left, right, A_avoid)
        if not P:
            return NotFound("no_short_connection", proved=False)
    a = F1 if P.start == F1.v else F2
    b = F3 if P.end == F3.v else F4
    qa = F2 if a is F1 else F1
    qb = F4 if b is F3 else F3
    W = A_avoid | set(P.vertices)
    qa2 = VertexExpansion(qa.v, frozenset(qa.F - W), qa.m)
    qb2 = VertexExpansion(qb.v, frozenset(qb.F - W), qb.m)
    if qa.v in W or qb.v in W:
        return NotFound("centers_blocked")
    Q = path_in_window(G, W, _bare(qa2), _bare(qb2), max(0, ell - P.length),
                       max(0, ell + slack - P.length) - max(0, ell - P.length))
    if not Q:
        return NotFound("window_path_failed", info=dict(Q.info))
    return P, Q


def _bare(F: VertexExpansion) -> VertexExpansion:
    return VertexExpansion(F.v, frozenset((F.v,)), F.m)


# -- exact length ----------------------------------------------------------------


def _parity_ok(G: Graph, U: set[int], v1: int, v2: int, ell: int) -> bool | None:
    """None when the component is not bipartite (no parity constraint)."""
    dist = distances_from(G, (v1,), U)
    if v2 not in dist:
        return None
    bp = bipartition(induced(G, sorted(dist)))
    if not isinstance(bp, Bipartition):
        return None
    return (dist[v2] - ell) % 2 == 0


def exact_length_route(G: Graph, U: Iterable[int], F1: VertexExpansion, F2: VertexExpansion, ell: int, *,
                       m: float | None = None, D: int = 1, capacities: Sequence[int] = (1, 2, 3),
                       seed: int = 0, retries: int = 16, oracle_fallback: bool = False,
                       budget: int = ORACLE_BUDGET) -> tuple[str, Path | NotFound | Unknown]:
    """Like :func:`exact_length_path`, also naming the route that produced the answer."""
    U = _check_set(G, U)
    v1, v2 = F1.v, F2.v
    G.check_vertices((v1, v2))
    if v1 in U or v2 in U:
        raise DomainError("endpoints must avoid U")
    if v1 == v2:
        raise DomainError("endpoints must be distinct")
    if F1.F & F2.F or (F1.F | F2.F) & U:
        raise DomainError("F1, F2 must be disjoint and avoid U")
    parity = _parity_ok(G, U, v1, v2, ell)
    if parity is False:
        raise DomainError(f"length {ell} has the wrong parity for this pair")
    dist = distances_from(G, (v1,), U)
    if v2 not in dist:
        return "none", NotFound("unreachable", proved=True)
    if ell < dist[v2]:
        return "none", NotFound("shorter_than_distance", proved=True)
    if ell > G.n - len(U) - 1:
        return "none", NotFound("too_long", proved=True)
    if m is None:
        m = G.n
    if ell == dist[v2]:
        return "shortest", shortest_path(G, (v1,), (v2,), U)
    for r in capacities:
        res = _via_adjuster(G, U, F1, F2, ell, m, D, r, seed, retries)
        if res:
            return f"adjuster_r{r}", res
    res = _via_anchored(G, U, v1, v2, ell, m)
    if res:
        return "anchored_adjuster", res
    res = path_in_window(G, U, F1, F2, ell, 0)
    if res:
        return "window", res
    if oracle_fallback:
        avail = G.n - len(U)
        if avail <= 40:
            return "oracle", exact_length_path_oracle(G, v1, v2, ell, budget, U)
    return "none", NotFound("constructive_failed", info={"ell": ell})


def exact_length_path(G: Graph, U: Iterable[int], F1: VertexExpansion, F2: VertexExpansion, ell: int,
                      **kw: Any) -> Path | NotFound | Unknown:
    """A v1,v2-path of length exactly ``ell`` in ``G - U``.

    Pipeline: a capacity-r adjuster away from the ends, two window paths
    joining the ends to it, and the ladder rung that makes up the difference.
    When that fails, a simple adjuster anchored at v1, v2 themselves and then
    direct lengthening are tried.  In bipartite hosts the parity of ``ell``
    must match the pair (DomainError otherwise).
    """
    return exact_length_route(G, U, F1, F2, ell, **kw)[1]


def _via_adjuster(G: Graph, U: set[int], F1: VertexExpansion, F2: VertexExpansion, ell: int,
                  m: float, D: int, r: int, seed: int, retries: int) -> Path | None:
    adj = chain_adjusters(G, U | F1.F | F2.F, D, m, r, seed=seed, retries=retries)
    if not isinstance(adj, Adjuster):
        return None
    hi = ell - adj.base_length
    lo = hi - 2 * adj.capacity
    if hi < 2:
        return None
    pair = two_paths_in_window(G, U | adj.A, F1, F2, adj.F1, adj.F2, max(lo, 2), hi - max(lo, 2))
    if not pair:
        return None
    P, Q = pair
    gap = ell - P.length - Q.length - adj.base_length
    if gap % 2 or not 0 <= gap <= 2 * adj.capacity:
        return None
    rung = adj.rung(gap // 2)
    # orient: v1 ... a -(rung)- b ... v2
    first, second = (P, Q) if P.start == F1.v else (Q, P)
    a_end, b_end = first.end, second.end
    core = rung.vertices if rung.start == a_end else rung.vertices[::-1]
    if core[0] != a_end or core[-1] != b_end:
        return None
    out = join_paths(first.vertices, core, second.vertices[::-1])
    return out if out.is_valid(G, U) and out.length == ell else None


def _via_anchored(G: Graph, U: set[int], v1: int, v2: int, ell: int, m: float,
                  max_cycles: int = 32) -> Path | None:
    if not is_bipartite(G):
        return None
    for cyc in short_cycles(G, U | {v1, v2})[:max_cycles]:
        adj = build_simple_adjuster(G, cyc, v1, v2, 1, m, avoid=U)
        if isinstance(adj, Adjuster) and (ell - adj.base_length) in (0, 2):
            p = adj.rung((ell - adj.base_length) // 2)
            if p.is_valid(G, U):
                return p
    return None
