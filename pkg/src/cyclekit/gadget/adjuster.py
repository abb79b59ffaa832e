"""Adjusters: two expansion ends joined through a core that realizes a ladder
of path lengths ``l, l+2, ..., l+2k``."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from ..connect import connect_avoiding
from ..errors import DomainError, NotFound, Unknown
from ..graph import Graph, Path, _check_set, distance, is_bipartite, is_cycle, short_cycles, shortest_path
from .expansions import VertexExpansion, find_vertex_expansions
from .oracle import exact_length_path_oracle

CORE_BUDGET = 200_000


@dataclass
class Adjuster:
    v1: int
    F1: VertexExpansion
    v2: int
    F2: VertexExpansion
    A: frozenset
    capacity: int
    base_length: int
    m: float
    rungs: dict[int, Path] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.capacity < 1:
            raise DomainError("an adjuster needs capacity at least 1")

    @property
    def D(self) -> int:
        return min(self.F1.D, self.F2.D)

    def vertices(self) -> frozenset:
        return self.A | self.F1.F | self.F2.F

    def rung(self, i: int) -> Path:
        """The v1,v2-path of length ``base_length + 2i`` inside the core."""
        return self.rungs[self.base_length + 2 * i]

    def to_dict(self) -> dict[str, Any]:
        return {
            "v1": self.v1, "v2": self.v2, "F1": self.F1.to_dict(), "F2": self.F2.to_dict(),
            "A": sorted(self.A), "capacity": self.capacity, "base_length": self.base_length,
            "m": self.m, "rungs": {str(k): list(p.vertices) for k, p in sorted(self.rungs.items())},
        }


def core_path(G: Graph, A: Iterable[int], v1: int, v2: int, length: int,
              budget: int = CORE_BUDGET) -> Path | NotFound | Unknown:
    """A v1,v2-path of the given length inside ``G[A ∪ {v1, v2}]``."""
    allowed = set(A) | {v1, v2}
    outside = set(range(G.n)) - allowed
    return exact_length_path_oracle(G, v1, v2, length, budget, outside, cap=len(allowed))


def ladder_base(G: Graph, A: Iterable[int], v1: int, v2: int, k: int,
                budget: int = CORE_BUDGET) -> tuple[int, dict[int, Path]] | NotFound | Unknown:
    """Least ``l`` such that the core realizes every length ``l, l+2, ..., l+2k``."""
    A = set(A)
    allowed = A | {v1, v2}
    d = distance(G, v1, v2, set(range(G.n)) - allowed)
    if d == float("inf"):
        return NotFound("core_disconnected", proved=True)
    top = len(allowed) - 1
    found: dict[int, Path] = {}
    missing: set[int] = set()
    ell = int(d)
    while ell + 2 * k <= top:
        ok = True
        for i in range(k + 1):
            L = ell + 2 * i
            if L in missing:
                ok = False
                break
            if L not in found:
                res = core_path(G, A, v1, v2, L, budget)
                if isinstance(res, Unknown):
                    return res
                if not res:
                    missing.add(L)
                    ok = False
                    break
                found[L] = res
        if ok:
            return ell, {L: p for L, p in found.items() if ell <= L <= ell + 2 * k and (L - ell) % 2 == 0}
        ell += 1
    return NotFound("no_ladder", proved=True)


def _finish(G: Graph, v1: int, F1: VertexExpansion, v2: int, F2: VertexExpansion,
            A: set, k: int, m: float, budget: int) -> Adjuster | NotFound | Unknown:
    res = ladder_base(G, A, v1, v2, k, budget)
    if not isinstance(res, tuple):
        return res
    base, rungs = res
    return Adjuster(v1, F1, v2, F2, frozenset(A), k, base, m, rungs)


def build_simple_adjuster(G: Graph, C: Sequence[int], x1: int, x2: int, D: int, m: float, *,
                          avoid: Iterable[int] = (), budget: int = CORE_BUDGET) -> Adjuster | NotFound:
    """Simple adjuster anchored at ``x1, x2`` whose core contains the even cycle ``C``.

    Two vertices x3, x4 at distance ``|C|/2 - 1`` along C split it into arcs of
    lengths ``|C|/2 - 1`` and ``|C|/2 + 1``; connectors x1-x3 and x2-x4 close
    the two choices into v1,v2-paths whose lengths differ by 2.
    """
    U = _check_set(G, avoid)
    G.check_vertices((x1, x2))
    cyc = list(C)
    if not is_bipartite(G):
        raise DomainError("simple adjusters are built in bipartite graphs")
    if not is_cycle(G, cyc):
        raise DomainError("C is not a cycle of G")
    if x1 == x2:
        raise DomainError("anchors must be distinct")
    if x1 in cyc or x2 in cyc:
        return NotFound("anchor_on_cycle", proved=True)
    if U & (set(cyc) | {x1, x2}):
        return NotFound("avoid_set_meets_cycle_or_anchors", proved=True)
    ends = find_vertex_expansions(G, cyc, [x1, x2], [D, D], m / 5, avoid=U, check_cycle=False)
    if not ends:
        return NotFound("no_expansions", info=ends.info)
    F1, F2 = ends
    F1 = VertexExpansion(x1, F1.F, m)
    F2 = VertexExpansion(x2, F2.F, m)
    half = len(cyc) // 2
    gap = half - 1
    L = len(cyc)
    ends_set = set(F1.F) | set(F2.F)
    for i in range(L):
        for sign in (1, -1):
            x3 = cyc[i]
            x4 = cyc[(i + sign * gap) % L]
            if x3 == x4:
                continue
            j = cyc.index(x4)
            # the two arcs between x3 and x4
            step = sign
            r1 = [cyc[(i + step * t) % L] for t in range(gap + 1)]
            r2 = [cyc[(j + step * t) % L] for t in range(L - gap + 1)]
            W = U | (set(cyc) - {x3}) | (ends_set - {x1}) | {x2}
            P = connect_avoiding(G, {x1}, {x3}, W)
            if not P:
                continue
            W2 = U | (set(cyc) - {x4}) | (ends_set - {x2}) | set(P.vertices)
            Q = connect_avoiding(G, {x2}, {x4}, W2)
            if not Q:
                continue
            A = (set(P.vertices) | set(Q.vertices) | set(r1) | set(r2)) - {x1, x2}
            if len(A) > 10 * m:
                continue
            adj = _finish(G, x1, F1, x2, F2, A, 1, m, budget)
            if isinstance(adj, Adjuster):
                return adj
    return NotFound("no_connectors", info={"cycle": cyc, "anchors": [x1, x2]})


def robust_constants(n: int, m: float, D: int) -> dict[str, Any]:
    """Proof constants of the robust adjuster lemma, reported as diagnostics only."""
    ll = math.log(math.log(n)) if n > math.e else 0.0
    return {"Delta": 200 * m * D, "l0": max(ll, 0.0) ** 20}


def find_adjuster_avoiding(G: Graph, U: Iterable[int], D: int, m: float, *,
                           retries: int = 64, pairs_per_cycle: int = 16, seed: int = 0,
                           budget: int = CORE_BUDGET) -> Adjuster | NotFound:
    """A validated ``(D, 2m, 1)``-adjuster inside ``G - U``.

    Cycles of ``G - U`` are tried shortest first; for each, anchor pairs off
    the cycle are tried in a seeded order.
    """
    U = _check_set(G, U)
    if len(U) >= G.n:
        return NotFound("nothing_left", proved=True)
    rng = random.Random(seed)
    cycles = short_cycles(G, U)
    if not cycles:
        return NotFound("acyclic", proved=True)
    tried = 0
    for cyc in cycles[:retries]:
        off = [v for v in range(G.n) if v not in U and v not in cyc]
        pairs = [(a, b) for a in off for b in off if a < b]
        rng.shuffle(pairs)
        for x1, x2 in pairs[:pairs_per_cycle]:
            tried += 1
            adj = build_simple_adjuster(G, cyc, x1, x2, D, 2 * m, avoid=U, budget=budget)
            if isinstance(adj, Adjuster):
                return adj
    return NotFound("retry_budget", info={"attempts": tried, "cycles": min(len(cycles), retries),
                                          "U_size": len(U), "U_within_10D": len(U) <= 10 * D,
                                          "constants": robust_constants(G.n, m, D)})


def chain_adjusters(G: Graph, U: Iterable[int], D: int, m: float, r: int, *, seed: int = 0,
                    retries: int = 64, budget: int = CORE_BUDGET) -> Adjuster | NotFound:
    """Capacity-``r`` adjuster from ``r`` simple ones joined end to end.

    On failure the NotFound carries the largest adjuster reached under
    ``info["partial"]`` and the failed step under ``info["step"]``.
    """
    if r < 1:
        raise DomainError("r must be at least 1")
    U = _check_set(G, U)
    cur = find_adjuster_avoiding(G, U, D, m, retries=retries, seed=seed, budget=budget)
    if not cur:
        return NotFound("first_adjuster", info={"step": 1, "partial": None})
    for step in range(2, r + 1):
        used = U | cur.vertices()
        new = find_adjuster_avoiding(G, used, D, m, retries=retries, seed=seed + step, budget=budget)
        if not new:
            return NotFound("no_fresh_adjuster", info={"step": step, "partial": cur})
        joined = _join(G, U, cur, new, budget)
        if not isinstance(joined, Adjuster):
            return NotFound("join_failed", info={"step": step, "partial": cur})
        report = validate_adjuster(G, joined, budget=budget)
        if not report["ok"]:
            return NotFound("merge_invalid", info={"step": step, "partial": cur,
                                                   "failures": report["failures"]})
        cur = joined
    return cur


def _join(G: Graph, U: set, a: Adjuster, b: Adjuster, budget: int) -> Adjuster | NotFound | Unknown:
    ends_a = {a.v1: a.F1, a.v2: a.F2}
    ends_b = {b.v1: b.F1, b.v2: b.F2}
    W = U | a.A | b.A
    P = connect_avoiding(G, a.F1.F | a.F2.F, b.F1.F | b.F2.F, W)
    if not P:
        return P
    va = next(v for v, F in ends_a.items() if P.start in F.F)
    vb = next(v for v, F in ends_b.items() if P.end in F.F)
    region = ends_a[va].F | set(P.vertices) | ends_b[vb].F
    Q = shortest_path(G, (va,), (vb,), set(range(G.n)) - region)
    if Q is None:
        return NotFound("no_link")
    keep_a = a.v2 if va == a.v1 else a.v1
    keep_b = b.v2 if vb == b.v1 else b.v1
    A = set(a.A) | set(b.A) | set(Q.vertices)
    res = ladder_base(G, A, keep_a, keep_b, a.capacity + b.capacity, budget)
    if not isinstance(res, tuple):
        return res
    base, rungs = res
    return Adjuster(keep_a, ends_a[keep_a], keep_b, ends_b[keep_b], frozenset(A),
                    a.capacity + b.capacity, base, max(a.m, b.m), rungs)


def validate_adjuster(G: Graph, adj: Adjuster, budget: int = CORE_BUDGET) -> dict[str, Any]:
    """Recheck the four axioms, plus minimality of the base length, from scratch."""
    failures = []
    A, F1, F2 = set(adj.A), set(adj.F1.F), set(adj.F2.F)
    a1 = not (A & F1 or A & F2 or F1 & F2)
    if not a1:
        failures.append("A1: core and ends are not pairwise disjoint")
    a2 = (adj.F1.v == adj.v1 and adj.F2.v == adj.v2
          and adj.F1.is_valid(G) and adj.F2.is_valid(G) and adj.F1.D == adj.F2.D)
    if not a2:
        failures.append("A2: ends are not equal-size expansions of v1, v2")
    a3 = len(A) <= 10 * adj.m * adj.capacity
    if not a3:
        failures.append(f"A3: |A|={len(A)} exceeds 10mk={10 * adj.m * adj.capacity}")
    lengths = {}
    a4 = True
    for i in range(adj.capacity + 1):
        L = adj.base_length + 2 * i
        res = core_path(G, A, adj.v1, adj.v2, L, budget)
        lengths[L] = bool(res) if not isinstance(res, Unknown) else None
        if not res:
            a4 = False
            failures.append(f"A4: no core path of length {L}" if not isinstance(res, Unknown)
                            else f"A4: undecided for length {L}")
    minimal = True
    if adj.base_length - 2 >= 1:
        res = core_path(G, A, adj.v1, adj.v2, adj.base_length - 2, budget)
        if res or isinstance(res, Unknown):
            minimal = False
            failures.append("base length is not minimal")
    rungs_ok = all(p.length == L and p.start == adj.v1 and p.end == adj.v2
                   and set(p.vertices) <= A | {adj.v1, adj.v2} and p.is_valid(G)
                   for L, p in adj.rungs.items())
    if not rungs_ok:
        failures.append("stored rung paths do not revalidate")
    return {"A1": a1, "A2": a2, "A3": a3, "A4": a4, "minimal": minimal, "rungs": rungs_ok,
            "lengths": lengths, "failures": failures, "ok": not failures}
