"""Exact-length path search by pruned backtracking (the independent backend)."""

from __future__ import annotations

import sys
from typing import Iterable

from ..errors import CapacityError, DomainError, NotFound, Unknown
from ..graph import Bipartition, Graph, Path, _check_set, bipartition, distances_from, induced

ORACLE_CAP = 40
ORACLE_BUDGET = 2_000_000


class _OutOfBudget(Exception):
    pass


def _reach(G: Graph, start: int, allowed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= G.masks[low.bit_length() - 1]
            f ^= low
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def exact_length_path_oracle(G: Graph, x: int, y: int, ell: int, budget: int = ORACLE_BUDGET,
                             avoid: Iterable[int] = (), cap: int = ORACLE_CAP) -> Path | NotFound | Unknown:
    """Find an x,y-path of length exactly ``ell`` in ``G - avoid``, or prove there is none.

    Pruning: remaining distance, bipartite parity, the number of vertices
    still reachable from the current end, and a memo of failed (end, used) states.
    """
    G.check_vertices((x, y))
    blocked = _check_set(G, avoid)
    if G.n - len(blocked) > cap:
        raise CapacityError(f"oracle capped at {cap} usable vertices, got {G.n - len(blocked)}")
    if x in blocked or y in blocked:
        raise DomainError("endpoints must not be avoided")
    if x == y:
        return Path((x,)) if ell == 0 else NotFound("closed_walk", proved=True)
    if ell < 1:
        return NotFound("too_short", proved=True)
    dist = distances_from(G, (y,), blocked)
    if x not in dist:
        return NotFound("unreachable", proved=True)
    if dist[x] > ell:
        return NotFound("too_short", proved=True)
    # parity is fixed when the component of y is bipartite
    comp = sorted(dist)
    sub_bip = bipartition(induced(G, comp))
    parity = isinstance(sub_bip, Bipartition)
    if parity and (dist[x] - ell) % 2:
        return NotFound("parity", proved=True)
    if ell + 1 > len(comp):
        return NotFound("too_long", proved=True)
    free = 0
    for v in comp:
        free |= 1 << v
    ybit = 1 << y
    failed: set[tuple[int, int]] = set()
    nodes = 0
    path = [x]

    def dfs(cur: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        r = ell - (len(path) - 1)
        if cur == y:
            return r == 0
        if dist[cur] > r:
            return False
        key = (cur, used)
        if key in failed:
            return False
        if r >= 2:
            reach = _reach(G, cur, free & ~used | ybit)
            if not reach & ybit or (reach & ~(1 << cur)).bit_count() < r:
                failed.add(key)
                return False
        nb = G.masks[cur] & free & ~used
        while nb:
            low = nb & -nb
            w = low.bit_length() - 1
            nb ^= low
            if w == y and r != 1:
                continue
            path.append(w)
            if dfs(w, used | low):
                return True
            path.pop()
        failed.add(key)
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * ell + 100))
    try:
        if dfs(x, 1 << x):
            return Path(tuple(path))
    except _OutOfBudget:
        return Unknown("budget_exhausted", nodes)
    finally:
        sys.setrecursionlimit(limit)
    return NotFound("exhausted", proved=True, info={"nodes": nodes})


def path_lengths_naive(G: Graph, x: int, y: int, avoid: Iterable[int] = (),
                       max_len: int | None = None) -> set[int]:
    """Every length of an x,y-path in ``G - avoid`` by plain enumeration (tiny graphs)."""
    blocked = set(avoid)
    out = set()
    if x == y:
        return {0}
    stack = [(x, 1 << x, 0)]
    while stack:
        cur, used, length = stack.pop()
        if max_len is not None and length >= max_len:
            continue
        for w in G.adj[cur]:
            if used >> w & 1 or w in blocked:
                continue
            if w == y:
                out.add(length + 1)
            else:
                stack.append((w, used | 1 << w, length + 1))
    return out
