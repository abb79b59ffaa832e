"""Sublinear vertex expansion: the expansion function, the expander predicate
and the extraction of (bipartite) expander subgraphs.

A graph is an ``(eps1, k)``-expander when every vertex set X with
``k/2 <= |X| <= n/2`` has ``|N(X)| >= eps(|X|) * |X|`` where
``eps(x) = eps1 / log^2(15x/k)`` for ``x >= k/5`` and 0 below.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import CapacityError, DomainError, PreconditionError
from .graph import Graph, average_degree, components, edge_subgraph, induced

# witness declaration margin against floating-point noise
TOLERANCE = 1e-9
EXHAUSTIVE_CAP = 24
SAMPLED_BUDGET = 10_000
ABSORB_STEPS = 32
EXTRACT_BUDGET = 200


@dataclass(frozen=True)
class ExpansionParams:
    """``(eps1, k)``; optionally built as ``(eps1, eps2 * d)``."""

    eps1: float
    k: float
    eps2: float | None = None
    d: float | None = None

    def __post_init__(self) -> None:
        if not 0 < self.eps1 <= 1:
            raise DomainError(f"eps1 must lie in (0, 1], got {self.eps1}")
        if not self.k > 0:
            raise DomainError(f"k must be positive, got {self.k}")

    @classmethod
    def scaled(cls, eps1: float, eps2: float, d: float) -> "ExpansionParams":
        if not eps2 > 0 or not d > 0:
            raise DomainError("eps2 and d must be positive")
        return cls(eps1, eps2 * d, eps2, d)

    def to_dict(self) -> dict[str, Any]:
        return {"eps1": self.eps1, "k": self.k, "eps2": self.eps2, "d": self.d}


def epsilon(x: float, params: ExpansionParams) -> float:
    """Expansion rate required of a set of size ``x`` (natural logarithm)."""
    if x < 0:
        raise DomainError("set size must be non-negative")
    if x < params.k / 5:
        return 0.0
    return params.eps1 / math.log(15 * x / params.k) ** 2


def required_boundary(size: int, params: ExpansionParams) -> float:
    return epsilon(size, params) * size


def diameter_bound(n: float, params: ExpansionParams) -> float:
    """``(2/eps1) log^3(15n/k)``: the distance bound between large sets."""
    if not n >= params.k:
        raise DomainError(f"need n >= k, got n={n}, k={params.k}")
    return 2 / params.eps1 * math.log(15 * n / params.k) ** 3


def size_range(n: int, params: ExpansionParams) -> range:
    """Set sizes the expansion condition quantifies over."""
    return range(max(0, math.ceil(params.k / 2)), n // 2 + 1)


@dataclass(frozen=True)
class NonExpansionWitness:
    X: tuple[int, ...]
    boundary: int
    required: float

    def revalidate(self, G: Graph, params: ExpansionParams) -> bool:
        """Recompute everything from scratch and confirm the violation."""
        X = set(self.X)
        if len(X) != len(self.X) or not X or any(not 0 <= v < G.n for v in X):
            return False
        if not params.k / 2 <= len(X) <= G.n / 2:
            return False
        boundary = len({w for v in X for w in G.adj[v]} - X)
        required = required_boundary(len(X), params)
        return boundary == self.boundary and boundary < required - TOLERANCE

    def to_dict(self) -> dict[str, Any]:
        return {"X": list(self.X), "boundary": self.boundary, "required": self.required}


@dataclass(frozen=True)
class ExpanderCertificate:
    """No violating set: proved in exhaustive mode, merely not found when sampled."""

    mode: str
    subsets_checked: int
    violations: tuple = ()

    def to_dict(self) -> dict[str, Any]:
        return {"mode": self.mode, "subsets_checked": self.subsets_checked}


def regime_flags(n: int, params: ExpansionParams) -> dict[str, bool]:
    """Which of the asymptotic hypotheses hold literally on this instance."""
    return {
        "eps1_below_one": params.eps1 < 1,
        "size_range_nonempty": len(size_range(n, params)) > 0,
        "n_at_least_k": n >= params.k,
    }


def check_expander(G: Graph, params: ExpansionParams, mode: str = "exhaustive", *,
                   budget: int = SAMPLED_BUDGET, seed: int = 0,
                   cap: int = EXHAUSTIVE_CAP) -> ExpanderCertificate | NonExpansionWitness:
    """Certify or refute the expansion condition.

    Exhaustive mode enumerates every qualifying subset (``n <= cap``).  Sampled
    mode grows random connected sets and shrinks their boundary greedily; any
    witness it returns is genuine, but its certificate only means none was found.
    """
    if mode == "exhaustive":
        if G.n > cap:
            raise CapacityError(f"exhaustive expander check capped at n={cap}, got n={G.n}")
        return _exhaustive(G, params)
    if mode == "sampled":
        return _sampled(G, params, budget, seed)
    raise DomainError(f"unknown mode {mode!r}")


def _subset_unions(masks: Sequence[int], bits: int) -> np.ndarray:
    # union of neighbourhood masks over every subset of the first `bits` vertices
    table = np.zeros(1, dtype=np.uint64)
    for i in range(bits):
        table = np.concatenate([table, table | np.uint64(masks[i])])
    return table


def _exhaustive(G: Graph, params: ExpansionParams) -> ExpanderCertificate | NonExpansionWitness:
    n = G.n
    sizes = size_range(n, params)
    if n == 0 or len(sizes) == 0:
        return ExpanderCertificate("exhaustive", 0)
    req = np.full(n + 1, -np.inf)
    for s in sizes:
        req[s] = required_boundary(s, params) - TOLERANCE
    low = min(n, 16)
    high = n - low
    low_union = _subset_unions(G.masks, low)
    low_ids = np.arange(1 << low, dtype=np.uint64)
    low_size = np.bitwise_count(low_ids).astype(np.int64)
    high_masks = [m >> low for m in G.masks[low:]]
    high_union = [0]
    for i in range(high):
        high_union = high_union + [u | G.masks[low + i] for u in high_union]
    del high_masks
    checked = 0
    best = None
    for h in range(1 << high):
        hbits = np.uint64(h << low)
        members = low_ids | hbits
        union = low_union | np.uint64(high_union[h])
        boundary = np.bitwise_count(union & ~members).astype(np.int64)
        size = low_size + h.bit_count()
        in_range = (size >= sizes.start) & (size < sizes.stop)
        checked += int(in_range.sum())
        bad = np.flatnonzero(in_range & (boundary < req[size]))
        if bad.size:
            # least size, then least mask
            i = bad[np.lexsort((bad, size[bad]))[0]]
            key = (int(size[i]), int(members[i]))
            if best is None or key < best[0]:
                best = (key, int(boundary[i]))
    if best is None:
        return ExpanderCertificate("exhaustive", checked)
    (s, mask), boundary = best
    X = tuple(v for v in range(n) if mask >> v & 1)
    return NonExpansionWitness(X, boundary, required_boundary(s, params))


def _boundary(G: Graph, members: int) -> int:
    union = 0
    m = members
    while m:
        low = m & -m
        union |= G.masks[low.bit_length() - 1]
        m ^= low
    return (union & ~members).bit_count()


def _sampled(G: Graph, params: ExpansionParams, budget: int, seed: int,
             absorb: int = ABSORB_STEPS) -> ExpanderCertificate | NonExpansionWitness:
    n = G.n
    sizes = size_range(n, params)
    if n == 0 or len(sizes) == 0:
        return ExpanderCertificate("sampled", 0)
    req = [required_boundary(s, params) - TOLERANCE for s in range(n + 2)]
    rng = random.Random(seed)
    checked = 0
    for _ in range(budget):
        target = rng.randint(sizes.start, sizes.stop - 1)
        start = rng.randrange(n)
        members = 1 << start
        union = G.masks[start]
        size = 1
        pool = list(G.adj[start])
        # random connected growth to the target size
        while size < target:
            v = -1
            while pool:
                i = rng.randrange(len(pool))
                pool[i], pool[-1] = pool[-1], pool[i]
                w = pool.pop()
                if not members >> w & 1:
                    v = w
                    break
            if v < 0:
                # component exhausted: jump to a fresh vertex
                v = rng.choice([u for u in range(n) if not members >> u & 1])
            members |= 1 << v
            union |= G.masks[v]
            pool.extend(G.adj[v])
            size += 1
        # greedy boundary shrinking by absorbing neighbours
        for _ in range(absorb + 1):
            checked += 1
            boundary = (union & ~members).bit_count()
            if size in sizes and boundary < req[size]:
                X = tuple(v for v in range(n) if members >> v & 1)
                return NonExpansionWitness(X, boundary, required_boundary(size, params))
            if size + 1 not in sizes:
                break
            best = None
            c = union & ~members
            while c:
                low = c & -c
                c ^= low
                nb = ((union | G.masks[low.bit_length() - 1]) & ~(members | low)).bit_count()
                if best is None or nb < best[0]:
                    best = (nb, low)
            if best is None or best[0] - req[size + 1] >= boundary - req[size]:
                break
            members |= best[1]
            union |= G.masks[best[1].bit_length() - 1]
            size += 1
    return ExpanderCertificate("sampled", checked)


# -- extraction ------------------------------------------------------------------


@dataclass
class Extraction:
    """An expander subgraph of a host, given by its host vertex ids."""

    vertices: tuple[int, ...]
    graph: Graph
    verdict: ExpanderCertificate | NonExpansionWitness | None
    host_average: Fraction
    average: Fraction
    min_degree: int
    repairs: int = 0
    flags: dict[str, Any] = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return isinstance(self.verdict, ExpanderCertificate)

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "n": self.graph.n,
            "edges": self.graph.edge_count,
            "host_average_degree": str(self.host_average),
            "average_degree": str(self.average),
            "min_degree": self.min_degree,
            "verdict": None if self.verdict is None else (
                "expander" if self.certified else "witness"),
            "certificate": None if self.verdict is None else self.verdict.to_dict(),
            "repairs": self.repairs,
            "regime_flags": self.flags,
        }


def _peel(G: Graph, S: Iterable[int]) -> set[int]:
    """Delete minimum-degree vertices until every degree is at least half the average.

    Deleting a vertex of degree below half the average never lowers the
    average, so the result is at least as dense as the input.
    """
    S = set(S)
    deg = {v: sum(1 for w in G.adj[v] if w in S) for v in S}
    edges = sum(deg.values()) // 2
    while S:
        v = min(S, key=lambda u: (deg[u], u))
        # deg < avg/2  <=>  deg * |S| < edges
        if deg[v] * len(S) >= edges:
            break
        S.remove(v)
        edges -= deg[v]
        for w in G.adj[v]:
            if w in S:
                deg[w] -= 1
        del deg[v]
    return S


def _density(G: Graph, S: set[int]) -> Fraction:
    if not S:
        return Fraction(0)
    e = sum(1 for v in S for w in G.adj[v] if w in S) // 2
    return Fraction(2 * e, len(S))


def _densest_core(G: Graph, S: set[int]) -> set[int]:
    # peel, keep the densest component, repeat until stable
    while True:
        S = _peel(G, S)
        comps = components(G, set(range(G.n)) - S)
        if len(comps) <= 1:
            return S
        best = max(comps, key=lambda c: (_density(G, set(c)), -c[0]))
        S = set(best)


def extract_expander(G: Graph, params: ExpansionParams, *, cap: int = EXHAUSTIVE_CAP,
                     budget: int = EXTRACT_BUDGET, seed: int = 0, max_repairs: int = 200) -> Extraction:
    """Dense subgraph with ``d(H) >= d(G)/2`` and ``δ(H) >= d(H)/2``, repaired towards expansion.

    The degree bounds always hold.  Expansion is checked exhaustively up to
    ``cap`` vertices and sampled above; while a violating set X turns up the
    subgraph is replaced by the denser of ``H[B(X)]`` and ``H - X`` and re-peeled.
    """
    if G.n == 0:
        raise DomainError("cannot extract from the empty graph")
    host_avg = average_degree(G)
    floor = host_avg / 2
    S = _densest_core(G, set(range(G.n)))
    repairs = 0
    verdict = None
    stalled = False
    while True:
        ids = sorted(S)
        H = induced(G, ids)
        mode = "exhaustive" if H.n <= cap else "sampled"
        verdict = check_expander(H, params, mode, budget=budget, seed=seed + repairs, cap=cap)
        if isinstance(verdict, ExpanderCertificate) or repairs >= max_repairs:
            break
        X = {ids[v] for v in verdict.X}
        closed = X | {w for v in X for w in G.adj[v] if w in S}
        options = [closed, S - X]
        options = [o for o in options if o]
        cand = max(options, key=lambda o: (_density(G, o), -len(o)))
        cand = _densest_core(G, cand)
        if not cand or _density(G, cand) < floor:
            stalled = True
            break
        S = cand
        repairs += 1
    ids = sorted(S)
    H = induced(G, ids)
    mindeg = min((len(a) for a in H.adj), default=0)
    avg = average_degree(H)
    flags = regime_flags(H.n, params)
    flags.update({
        "average_at_least_half_host": avg >= floor,
        "min_degree_at_least_half_average": 2 * mindeg >= avg,
        "repair_stalled": stalled,
        "mode": "exhaustive" if H.n <= cap else "sampled",
    })
    return Extraction(tuple(ids), H, verdict, host_avg, avg, mindeg, repairs, flags)


def max_cut_sides(G: Graph, seed: int = 0) -> list[int]:
    """Local-search bipartition: no vertex has more neighbours on its own side."""
    rng = random.Random(seed)
    side = [rng.randrange(2) for _ in range(G.n)]
    changed = True
    while changed:
        changed = False
        for v in range(G.n):
            same = sum(1 for w in G.adj[v] if side[w] == side[v])
            if 2 * same > len(G.adj[v]):
                side[v] ^= 1
                changed = True
    return side


def extract_bipartite(G: Graph, seed: int = 0) -> Graph:
    """Spanning bipartite subgraph keeping at least half the edges (and half of every degree)."""
    side = max_cut_sides(G, seed)
    return edge_subgraph(G, [(u, v) for u, v in G.edges() if side[u] != side[v]])


def extract_bipartite_expander(G: Graph, eps1: float, eps2: float, d: float, *, seed: int = 0,
                               cap: int = EXHAUSTIVE_CAP, budget: int = EXTRACT_BUDGET) -> Extraction:
    """Bipartite ``(eps1, eps2*d)``-expander candidate with minimum degree at least ``d``."""
    if average_degree(G) < 8 * Fraction(d).limit_denominator():
        raise PreconditionError(f"need d(G) >= 8d = {8 * d}, got {average_degree(G)}")
    params = ExpansionParams.scaled(eps1, eps2, d)
    B = extract_bipartite(G, seed)
    ext = extract_expander(B, params, cap=cap, budget=budget, seed=seed)
    S = set(ext.vertices)
    while True:
        low = [v for v in S if sum(1 for w in B.adj[v] if w in S) < d]
        if not low:
            break
        S -= set(low)
    if S != set(ext.vertices) and S:
        ids = sorted(S)
        H = induced(B, ids)
        mode = "exhaustive" if H.n <= cap else "sampled"
        verdict = check_expander(H, params, mode, budget=budget, seed=seed, cap=cap)
        ext = Extraction(tuple(ids), H, verdict, ext.host_average, average_degree(H),
                         min(len(a) for a in H.adj), ext.repairs, dict(ext.flags))
    ext.host_average = average_degree(G)
    ext.flags["min_degree_at_least_d"] = ext.min_degree >= d
    ext.flags["host_average_at_least_8d"] = True
    return ext
