"""Balanced clique subdivisions: every edge of K_k replaced by a path of the same length."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import DomainError, NotFound, Unknown
from .gadget import VertexExpansion, exact_length_route, find_vertex_expansions, trim_expansion
from .graph import Graph, Path, _check_set, bipartition, Bipartition, distances_from, is_connected

SEARCH_BUDGET = 1_000_000


@dataclass
class BalancedSubdivision:
    k: int
    ell: int
    branch_vertices: tuple[int, ...]
    paths: dict[tuple[int, int], tuple[int, ...]]
    info: dict[str, Any] = field(default_factory=dict)

    def pairs(self) -> list[tuple[int, int]]:
        b = self.branch_vertices
        return [(b[i], b[j]) for i, j in itertools.combinations(range(len(b)), 2)]

    def vertices(self) -> set[int]:
        out = set(self.branch_vertices)
        for p in self.paths.values():
            out.update(p)
        return out

    def to_dict(self) -> dict[str, Any]:
        out = {"k": self.k, "ell": self.ell, "branch_vertices": list(self.branch_vertices),
               "paths": [list(self.paths[p]) for p in self.pairs() if p in self.paths]}
        if self.info:
            out["info"] = self.info
        return out


def validate_subdivision(G: Graph, S: BalancedSubdivision) -> dict[str, Any]:
    """Recheck every invariant edge by edge; ``violations`` lists what failed."""
    bad: list[str] = []
    b = S.branch_vertices
    if len(b) != S.k:
        bad.append(f"expected {S.k} branch vertices, got {len(b)}")
    if len(set(b)) != len(b):
        bad.append("branch vertices repeat")
    if any(not 0 <= v < G.n for v in b):
        bad.append("branch vertex out of range")
        return {"ok": False, "violations": bad}
    want = set(S.pairs())
    got = set(S.paths)
    for p in sorted(want - got):
        bad.append(f"missing path for pair {p}")
    for p in sorted(got - want):
        bad.append(f"unexpected pair {p}")
    owner: dict[int, tuple[int, int]] = {}
    branch = set(b)
    for pair in sorted(want & got):
        vs = S.paths[pair]
        if not vs or (vs[0], vs[-1]) != pair:
            bad.append(f"{pair}: path does not join its pair")
            continue
        if len(vs) - 1 != S.ell:
            bad.append(f"{pair}: length {len(vs) - 1} != {S.ell}")
        bad += [f"{pair}: {msg}" for msg in Path(tuple(vs)).problems(G)]
        for v in vs[1:-1]:
            if v in branch:
                bad.append(f"{pair}: passes through branch vertex {v}")
            elif v in owner:
                bad.append(f"{pair}: internal vertex {v} shared with {owner[v]}")
            else:
                owner[v] = pair
    if S.k >= 3 and S.ell % 2 and isinstance(bipartition(G), Bipartition):
        bad.append(f"odd ell={S.ell} with k>=3 in a bipartite host")
    return {"ok": not bad, "violations": bad}


# -- skewed bipartite configurations ---------------------------------------------------


def find_tk2_skewed(G: Graph, U: Iterable[int], W: Iterable[int], d: int) -> BalancedSubdivision:
    """TK_d^(2) with branch vertices in W and subdividing vertices in U.

    Greedily pick distinct common neighbours for as many pairs of W as
    possible.  Some u in U is left unused, and every pair inside its
    neighbourhood already has a representative, otherwise u itself would do.
    """
    U = sorted(_check_set(G, U))
    W = sorted(_check_set(G, W))
    if set(U) & set(W):
        raise DomainError("U and W must be disjoint")
    if d < 1:
        raise DomainError("d must be at least 1")
    if len(U) < len(W) ** 2:
        raise DomainError(f"need |U| >= |W|^2 = {len(W) ** 2}, got {len(U)}")
    Wmask = 0
    for w in W:
        Wmask |= 1 << w
    for u in U:
        if (G.masks[u] & Wmask).bit_count() < d:
            raise DomainError(f"vertex {u} has fewer than {d} neighbours in W")
    Uset = set(U)
    rep: dict[tuple[int, int], int] = {}
    used: set[int] = set()
    for x, y in itertools.combinations(W, 2):
        common = sorted((G.nbrs[x] & G.nbrs[y] & Uset) - used)
        if common:
            rep[(x, y)] = common[0]
            used.add(common[0])
    u = next(v for v in U if v not in used)
    S = sorted(G.nbrs[u] & set(W))[:d]
    paths = {}
    for x, y in itertools.combinations(S, 2):
        paths[(x, y)] = (x, rep[(x, y)], y)
    return BalancedSubdivision(d, 2, tuple(S), paths, {"leftover": u})


# -- exhaustive search -----------------------------------------------------------------


def _ells(ell_range: int | Sequence[int]) -> list[int]:
    if isinstance(ell_range, int):
        return [ell_range]
    rng = list(ell_range)
    if len(rng) == 2 and rng[0] <= rng[1]:
        return list(range(max(1, rng[0]), rng[1] + 1))
    return sorted(set(rng))


class _Budget(Exception):
    pass


def find_balanced_subdivision(G: Graph, k: int, ell_range: int | Sequence[int] = (1, 3),
                              budget: int = SEARCH_BUDGET) -> BalancedSubdivision | NotFound | Unknown:
    """Smallest ell (then lexicographically least branch set) admitting a TK_k^(ell).

    ``ell_range`` is a single length, an inclusive ``(lo, hi)`` pair, or a
    list.  Pairs are routed hardest first (largest distance, then pair order)
    and every exact-length path is tried before backtracking.
    """
    if k < 3:
        raise DomainError("k must be at least 3")
    ells = _ells(ell_range)
    bp = bipartition(G)
    side = bp.side if isinstance(bp, Bipartition) else None
    dist = [distances_from(G, (v,)) for v in range(G.n)]
    nodes = 0

    def tick() -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Budget

    def paths_of_length(a: int, b: int, ell: int, blocked: int):
        # blocked: bitmask of vertices the path may not touch (b itself excluded)
        path = [a]

        def rec(cur: int, used: int):
            tick()
            r = ell - (len(path) - 1)
            if r == 1:
                if G.masks[cur] >> b & 1:
                    yield tuple(path) + (b,)
                return
            nb = G.masks[cur] & ~used & ~blocked & ~(1 << b)
            while nb:
                low = nb & -nb
                w = low.bit_length() - 1
                nb ^= low
                if dist[w].get(b, math.inf) > r - 1:
                    continue
                path.append(w)
                yield from rec(w, used | low)
                path.pop()

        if ell == 0:
            return
        yield from rec(a, 1 << a)

    def route(pairs: list[tuple[int, int]], i: int, claimed: int, ell: int, out: dict):
        if i == len(pairs):
            return True
        a, b = pairs[i]
        for p in paths_of_length(a, b, ell, claimed):
            inner = 0
            for v in p[1:-1]:
                inner |= 1 << v
            out[(a, b)] = p
            if route(pairs, i + 1, claimed | inner, ell, out):
                return True
            del out[(a, b)]
        return False

    try:
        for ell in ells:
            if side is not None and ell % 2:
                continue  # k >= 3 needs an odd cycle of length 3*ell
            if G.n < k + math.comb(k, 2) * (ell - 1):
                continue
            cands = [v for v in range(G.n) if len(G.adj[v]) >= k - 1]
            for combo in itertools.combinations(cands, k):
                tick()
                if any(dist[a].get(b, math.inf) > ell for a, b in itertools.combinations(combo, 2)):
                    continue
                if ell == 1 and any(b not in G.nbrs[a] for a, b in itertools.combinations(combo, 2)):
                    continue
                pairs = sorted(itertools.combinations(combo, 2), key=lambda p: (-dist[p[0]][p[1]], p))
                blocked = 0
                for v in combo:
                    blocked |= 1 << v
                out: dict[tuple[int, int], tuple[int, ...]] = {}
                if route(pairs, 0, blocked, ell, out):
                    return BalancedSubdivision(k, ell, tuple(combo), out, {"nodes": nodes})
    except _Budget:
        return Unknown("budget_exhausted", nodes)
    return NotFound("exhausted", proved=True, info={"nodes": nodes, "ells": ells})


def balanced_subdivision_naive(G: Graph, k: int, ell: int) -> tuple[int, ...] | None:
    """Independent check: all exact-length paths per pair, then every combination."""
    for combo in itertools.combinations(range(G.n), k):
        others = set(combo)
        options = []
        for a, b in itertools.combinations(combo, 2):
            found = []
            stack = [(a,)]
            while stack:
                p = stack.pop()
                if len(p) - 1 == ell:
                    if p[-1] == b:
                        found.append(p)
                    continue
                for w in G.adj[p[-1]]:
                    if w in p:
                        continue
                    if w == b and len(p) == ell or w not in others:
                        stack.append(p + (w,))
            if not found:
                break
            options.append(found)
        else:
            for choice in itertools.product(*options):
                inner = [v for p in choice for v in p[1:-1]]
                if len(inner) == len(set(inner)):
                    return combo
    return None


# -- the expander pipeline --------------------------------------------------------------


def expansion_sizes(n: int, k: int, alpha: float = 1.2) -> list[int]:
    """Reserved size per pair index i = 1..K: ``floor(alpha^(K+1-i) * n / (4K))``, at least 1.

    Scaled down together when the 2K disjoint expansions would not fit
    beside the branch vertices.
    """
    K = math.comb(k, 2)
    if K == 0:
        return []
    sizes = [max(1, math.floor(alpha ** (K + 1 - i) * n / (4 * K))) for i in range(1, K + 1)]
    room = n - k
    total = 2 * sum(sizes)
    if total > room:
        scale = room / total
        sizes = [max(1, math.floor(s * scale)) for s in sizes]
    return sizes


def construct_balanced_subdivision_expander(H: Graph, k: int, ell: int, *, alpha: float = 1.2,
                                            m: float | None = None, branch: Sequence[int] | None = None,
                                            seed: int = 0) -> BalancedSubdivision | NotFound:
    """Connect k same-class vertices pairwise by length-``ell`` paths through reserved expansions.

    Pair i (in lexicographic order) joins its ends inside expansions of the
    reserved size for i, avoiding every other branch vertex, the expansions
    still reserved for later pairs, and all earlier paths.
    """
    if k < 2:
        raise DomainError("k must be at least 2")
    bp = bipartition(H)
    if not isinstance(bp, Bipartition) or not is_connected(H):
        raise DomainError("host must be connected and bipartite")
    if branch is None:
        classes = sorted(bp.classes(), key=len, reverse=True)
        pool = sorted(classes[0], key=lambda v: (-len(H.adj[v]), v))
        if len(pool) < k:
            return NotFound("class_too_small", proved=True, info={"size": len(pool)})
        branch = sorted(pool[:k])
    else:
        branch = list(branch)
        H.check_vertices(branch)
        if len(set(branch)) != k or len({bp.side[v] for v in branch}) != 1:
            raise DomainError("branch vertices must be k distinct vertices of one class")
    if ell % 2:
        raise DomainError(f"same-class vertices need even ell, got {ell}")
    if m is None:
        m = H.n
    K = math.comb(k, 2)
    pairs = list(itertools.combinations(range(k), 2))
    sizes = expansion_sizes(H.n, k, alpha)
    # F[a][b]: the expansion of branch a dedicated to pair {a, b}, nested over nothing else
    Ds = []
    for a in range(k):
        Ds.append([sizes[pairs.index(tuple(sorted((a, b))))] for b in range(k) if b != a])
    exp = find_vertex_expansions(H, None, branch, Ds, m, check_cycle=False)
    if not exp:
        return NotFound("no_expansions", info=exp.info)
    F: dict[tuple[int, int], VertexExpansion] = {}
    for a in range(k):
        for t, b in enumerate(b for b in range(k) if b != a):
            F[(a, b)] = exp[a][t]
    Hexp: dict[int, tuple[VertexExpansion, VertexExpansion]] = {}
    for i, (a, b) in enumerate(pairs):
        Hexp[i] = (trim_expansion(H, F[(a, b)], sizes[i]), trim_expansion(H, F[(b, a)], sizes[i]))
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    used: set[int] = set()
    avoid_sets = {}
    routes = {}
    for i, (a, b) in enumerate(pairs):
        va, vb = branch[a], branch[b]
        U = set(branch) | used
        for j in range(i + 1, K):
            U |= Hexp[j][0].F | Hexp[j][1].F
        U -= {va, vb}
        E1, E2 = Hexp[i]
        E1 = VertexExpansion(E1.v, E1.F - U, E1.m)
        E2 = VertexExpansion(E2.v, E2.F - U, E2.m)
        route, P = exact_length_route(H, U, E1, E2, ell, m=m, seed=seed + i)
        if not P:
            return NotFound("pair_failed", info={"pair": [va, vb], "index": i, "route": route,
                                                 "reason": P.reason})
        paths[(va, vb)] = P.vertices
        used |= set(P.vertices)
        avoid_sets[(va, vb)] = sorted(U)
        routes[f"{va}-{vb}"] = route
    # the literal sizes m^{10(K+1-i)} must fit in n; compared in log space
    fits = m > 1 and all(10 * (K + 1 - i) * math.log(m) <= math.log(H.n) for i in range(1, K + 1))
    flags = {"literal_sizes_fit": fits,
             "sizes_scaled": 2 * sum(expansion_sizes(H.n, k, alpha)) < 2 * sum(
                 max(1, math.floor(alpha ** (K + 1 - i) * H.n / (4 * K))) for i in range(1, K + 1))}
    S = BalancedSubdivision(k, ell, tuple(branch), paths,
                            {"sizes": sizes, "routes": routes, "regime_flags": flags})
    S.info["avoid_sets"] = {f"{a}-{b}": v for (a, b), v in avoid_sets.items()}
    return S


def avoidance_respected(S: BalancedSubdivision) -> list[str]:
    """Each path misses its recorded avoidance set (endpoints aside)."""
    out = []
    for (a, b), p in S.paths.items():
        U = set(S.info.get("avoid_sets", {}).get(f"{a}-{b}", ()))
        hit = U & set(p)
        if hit:
            out.append(f"{a}-{b} meets its avoidance set at {sorted(hit)}")
    return out
