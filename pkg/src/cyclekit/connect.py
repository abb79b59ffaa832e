"""Ball growth around avoided sets, avoidant connections and low-diameter cores."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable

from .errors import DomainError, NotFound
from .expander import ExpansionParams, epsilon
from .graph import Graph, Path, _check_set, ball, bfs_layers, neighborhood, shortest_path


@dataclass(frozen=True)
class ContactProfile:
    A: frozenset
    Z: frozenset
    per_level: tuple[int, ...]
    k_limited_up_to: int

    def is_limited(self, k: float) -> bool:
        return all(c <= k * i for i, c in enumerate(self.per_level, 1))

    def to_dict(self) -> dict[str, Any]:
        return {"A": sorted(self.A), "Z": sorted(self.Z), "per_level": list(self.per_level),
                "k_limited_up_to": self.k_limited_up_to}


def contact_profile(G: Graph, A: Iterable[int], Z: Iterable[int], depth: int) -> ContactProfile:
    """Level i counts ``|N(B^{i-1}_{G-Z}(A)) ∩ Z|`` for i = 1..depth."""
    A = _check_set(G, A)
    Z = _check_set(G, Z)
    if A & Z:
        raise DomainError(f"A and Z overlap in {sorted(A & Z)}")
    if depth < 0:
        raise DomainError("depth must be non-negative")
    counts = []
    grown = set()
    layers = bfs_layers(G, A, Z)
    for _ in range(depth):
        grown |= next(layers, set())
        counts.append(len(neighborhood(G, grown) & Z))
    k = max((math.ceil(c / i) for i, c in enumerate(counts, 1)), default=0)
    return ContactProfile(frozenset(A), frozenset(Z), tuple(counts), k)


def growth_constants(n: int, eps1: float) -> tuple[float, int]:
    """``m = (16/eps1) log^3 n`` and ``l0 = floor((log log n)^5)`` (0 when log log n <= 0)."""
    m = 16 / eps1 * math.log(n) ** 3 if n > 1 else 0.0
    ll = math.log(math.log(n)) if n > math.e else 0.0
    return m, math.floor(ll ** 5) if ll > 0 else 0


@dataclass
class GrowthTrace:
    levels: list[int]
    halted_at: int
    reason: str
    half_n_at: int | None = None
    hypotheses: dict[str, Any] = field(default_factory=dict)
    conclusions: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"levels": self.levels, "halted_at": self.halted_at, "reason": self.reason,
                "half_n_at": self.half_n_at, "hypotheses": self.hypotheses,
                "conclusions": self.conclusions}


def grow_avoiding(G: Graph, A: Iterable[int], X: Iterable[int] = (), Y: Iterable[int] = (),
                  Z: Iterable[int] = (), max_depth: int | None = None,
                  params: ExpansionParams | None = None, contact_k: int | None = None) -> GrowthTrace:
    """Ball sizes ``|B^i_{G-X-Y-Z}(A)|`` level by level.

    With ``params`` (and the contact constant ``contact_k``) the trace also
    records which hypotheses of the avoidant growth lemma held and whether its
    two conclusions were observed.  Both are diagnostics only.
    """
    A = _check_set(G, A)
    X, Y, Z = (_check_set(G, S) for S in (X, Y, Z))
    if A & (X | Y | Z):
        raise DomainError("A must avoid X, Y and Z")
    blocked = X | Y | Z
    depth = G.n if max_depth is None else max_depth
    levels = []
    size = 0
    half_at = None
    for i, layer in enumerate(bfs_layers(G, A, blocked)):
        if i > depth:
            break
        size += len(layer)
        levels.append(size)
        if half_at is None and 2 * size > G.n:
            half_at = i
    if not levels:
        levels = [0]
    halted = len(levels) - 1
    if 2 * levels[-1] > G.n:
        reason = "reached_half_n"
    elif halted < depth:
        reason = "stalled"
    else:
        reason = "depth_exhausted"
    trace = GrowthTrace(levels, halted, reason, half_at)
    if params is not None:
        _annotate(G, trace, A, X, Y, Z, params, contact_k if contact_k is not None else 1)
    return trace


def _annotate(G: Graph, trace: GrowthTrace, A: set, X: set, Y: set, Z: set,
              params: ExpansionParams, k: int) -> None:
    n = G.n
    m, l0 = growth_constants(n, params.eps1)
    log_m = math.log(m) if m > 1 else None
    hyp: dict[str, Any] = {"m": m, "l0": l0, "contact_k": k}
    hyp["A_large"] = len(A) >= params.k / 2
    hyp["X_small"] = len(X) <= len(A) * epsilon(len(A), params) / 4
    near = ball(G, A, l0, X | Z)
    hyp["Y_far"] = not (near & Y)
    # |Y| <= m^{300k}, compared in log space
    hyp["Y_bounded"] = not Y or (log_m is not None and math.log(len(Y)) <= 300 * k * log_m)
    hyp["Z_limited"] = contact_profile(G, A, Z, max(1, math.ceil(m))).is_limited(k)
    hyp["all"] = all(hyp[key] for key in ("A_large", "X_small", "Y_far", "Y_bounded", "Z_limited"))
    blocked = X | Y | Z
    b0 = len(ball(G, A, l0, blocked))
    bm = len(ball(G, A, math.floor(m), blocked))
    con = {
        "ball_at_l0": b0,
        "ball_at_m": bm,
        # |B^{l0}| > m^{400k}
        "i": log_m is not None and math.log(b0) > 400 * k * log_m if b0 else False,
        "ii": 2 * bm > n,
    }
    trace.hypotheses = hyp
    trace.conclusions = con


def connection_bound(n: int, params: ExpansionParams) -> float:
    """``(40/eps1) log^3 n``."""
    return 40 / params.eps1 * math.log(n) ** 3 if n > 1 else 0.0


def connect_avoiding(G: Graph, A: Iterable[int], B: Iterable[int],
                     W: Iterable[int] = ()) -> Path | NotFound:
    """Lexicographically least shortest A-B path in ``G - W``.

    A shortest such path meets A and B only at its ends, so it is also a path
    *from A to B* in the strict sense.
    """
    A, B, W = (_check_set(G, S) for S in (A, B, W))
    if not A or not B:
        raise DomainError("A and B must be non-empty")
    if A & B:
        raise DomainError(f"A and B overlap in {sorted(A & B)}")
    if W & (A | B):
        raise DomainError("W must avoid A and B")
    P = shortest_path(G, A, B, W)
    if P is None:
        return NotFound("no_path", proved=True)
    return P


@dataclass(frozen=True)
class Core:
    B: frozenset
    center: int
    radius: int
    rounds: int
    radius_bound: float | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"B": sorted(self.B), "center": self.center, "radius": self.radius,
                "rounds": self.rounds, "radius_bound": self.radius_bound}


def core_constants(n: int, eps1: float) -> float:
    """``m = (50/eps1) log^3 n``; the core diameter bound is 2m."""
    return 50 / eps1 * math.log(n) ** 3 if n > 1 else 0.0


def trim_ball(G: Graph, B: Iterable[int], center: int, size: int) -> set[int]:
    """Shrink a connected set around ``center`` by deleting farthest vertices, largest id first."""
    B = set(B)
    avoid = set(range(G.n)) - B
    dist = {}
    for i, layer in enumerate(bfs_layers(G, (center,), avoid)):
        for v in layer:
            dist[v] = i
    # removing in (distance, id) descending order never disconnects the rest
    order = sorted(B, key=lambda v: (dist[v], v), reverse=True)
    return B - set(order[: max(0, len(B) - size)])


def low_diameter_core(G: Graph, W: Iterable[int] = (), params: ExpansionParams | None = None,
                      target: int | None = None, *, step: int = 1, max_radius: int | None = None,
                      trim: bool = False) -> Core | NotFound:
    """A large connected set of small radius around one center in ``G - W``.

    Starting from every free vertex, each round widens the radius by ``step``
    and keeps at most ``ceil(|V|/12)`` vertices whose joint ball is largest,
    until a single center remains.
    """
    W = _check_set(G, W)
    free = sorted(set(range(G.n)) - W)
    if target is None:
        target = max(1, math.ceil(G.n / 25))
    if target < 1:
        raise DomainError("target must be at least 1")
    max_radius = G.n if max_radius is None else max_radius
    if len(free) < target:
        return NotFound("too_few_free_vertices", proved=True, info={"free": len(free)})
    V = free
    radius = 0
    rounds = 0
    while len(V) > 1 and radius < max_radius:
        radius = min(max_radius, radius + step)
        rounds += 1
        keep = math.ceil(len(V) / 12)
        sizes = {v: len(ball(G, (v,), radius, W)) for v in V}
        ranked = sorted(V, key=lambda v: (-sizes[v], v))
        greedy = ranked[:keep]
        # averaging fallback: some block of the partition covers a twelfth
        blocks = [V[i:i + keep] for i in range(0, len(V), keep)]
        options = [greedy] + blocks
        V = max(options, key=lambda S: (len(ball(G, S, radius, W)), -min(S)))
        V = sorted(V)
    # single center, or the radius budget ran out: best remaining center
    center = min(V, key=lambda v: (-len(ball(G, (v,), radius, W)), v))
    B = ball(G, (center,), radius, W)
    while len(B) < target and radius < max_radius:
        radius += 1
        bigger = ball(G, (center,), radius, W)
        if len(bigger) == len(B):
            break
        B = bigger
    if len(B) < target:
        return NotFound("core_too_small", info={"center": center, "size": len(B), "target": target})
    if trim:
        B = trim_ball(G, B, center, target)
    ecc = 0
    for i, _ in enumerate(bfs_layers(G, (center,), set(range(G.n)) - B)):
        ecc = i
    bound = 2 * core_constants(G.n, params.eps1) if params is not None else None
    return Core(frozenset(B), center, ecc, rounds, bound)
