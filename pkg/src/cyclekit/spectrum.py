"""Cycle-length spectra and the measurements built on them."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError, DomainError
from .graph import Graph, cycle_problems, parity_pi, _connected_bipartition

DP_CAP = 24
CC_CAP = 16
PROPERTY_P_CAP = 12


@dataclass
class CycleSpectrum:
    lengths: tuple[int, ...]
    exact: bool
    witnesses: dict[int, tuple[int, ...]] = field(default_factory=dict)
    n: int = 0
    method: str = ""
    budget: int | None = None
    confidence: dict[int, float] = field(default_factory=dict)

    def __contains__(self, ell: int) -> bool:
        return ell in self.lengths

    def as_set(self) -> set[int]:
        return set(self.lengths)

    def to_dict(self) -> dict[str, Any]:
        out = {"lengths": list(self.lengths), "exact": self.exact, "n": self.n,
               "method": self.method, "budget": self.budget}
        if self.witnesses:
            out["witnesses"] = {str(k): list(v) for k, v in sorted(self.witnesses.items())}
        if self.confidence:
            out["confidence"] = {str(k): v for k, v in sorted(self.confidence.items())}
        return out


def _make(G: Graph, found: dict[int, tuple[int, ...]], exact: bool, method: str,
          budget: int | None = None, keep: bool = True) -> CycleSpectrum:
    return CycleSpectrum(tuple(sorted(found)), exact, dict(found) if keep else {}, G.n, method, budget)


def cycle_spectrum_exact(G: Graph, cap: int = DP_CAP, witnesses: bool = True) -> CycleSpectrum:
    """Every cycle length by subset DP.

    For each start s, ``reach[mask]`` is the set of endpoints v of paths
    from s that use exactly ``mask`` among the vertices above s.  Masks are
    processed by popcount layer; a cycle of length ``|mask|+1`` closes
    whenever an endpoint is adjacent to s.
    """
    n = G.n
    if n > cap:
        raise CapacityError(f"exact spectrum capped at n={cap}, got n={n}; use cycle_spectrum_lower")
    found: dict[int, tuple[int, ...]] = {}
    for s in range(n):
        k = n - s - 1
        if k < 2:
            break
        if all(L in found for L in range(3, k + 2)):
            continue
        rel = [(G.masks[s + 1 + j] >> (s + 1)) for j in range(k)]
        start = G.masks[s] >> (s + 1)
        if start.bit_count() < 2:
            continue
        dtype = np.uint32 if k <= 32 else np.uint64
        size = 1 << k
        reach = np.zeros(size, dtype=dtype)
        for j in range(k):
            if start >> j & 1:
                reach[1 << j] = 1 << j
        pc = np.bitwise_count(np.arange(size, dtype=np.uint32))
        order = np.argsort(pc, kind="stable").astype(np.int64)
        bounds = np.searchsorted(pc[order], np.arange(k + 2))
        start_np = dtype(start)
        nb = [dtype(x) for x in rel]
        for p in range(1, k + 1):
            idx = order[bounds[p]:bounds[p + 1]]
            R = reach[idx]
            live = R != 0
            idx, R = idx[live], R[live]
            if idx.size == 0:
                break
            if p >= 2 and (p + 1) not in found:
                hit = np.flatnonzero(R & start_np)
                if hit.size:
                    mask = int(idx[hit[0]])
                    ends = int(R[hit[0]]) & start
                    v = (ends & -ends).bit_length() - 1
                    found[p + 1] = _rebuild(reach, rel, s, mask, v) if witnesses else ()
            if p == k:
                break
            for w in range(k):
                bit = 1 << w
                can = ((idx & bit) == 0) & ((R & nb[w]) != 0)
                if can.any():
                    t = idx[can] | bit
                    reach[t] |= dtype(bit)
    return _make(G, found, True, "subset_dp", keep=witnesses)


def _rebuild(reach: np.ndarray, rel: list[int], s: int, mask: int, v: int) -> tuple[int, ...]:
    seq = [v]
    while mask != 1 << v:
        mask ^= 1 << v
        opts = int(reach[mask]) & rel[v]
        v = (opts & -opts).bit_length() - 1
        seq.append(v)
    return tuple([s] + [s + 1 + u for u in reversed(seq)])


def cycle_spectrum_naive(G: Graph) -> set[int]:
    """Independent check: DFS over simple paths from each least vertex."""
    out = set()
    for s in range(G.n):
        stack = [(s, 1 << s, 0)]
        while stack:
            cur, used, length = stack.pop()
            for w in G.adj[cur]:
                if w == s and length >= 2:
                    out.add(length + 1)
                elif w > s and not used >> w & 1:
                    stack.append((w, used | 1 << w, length + 1))
    return out


def _dfs_cycles(G: Graph, rng: random.Random, found: dict[int, tuple[int, ...]], budget: int) -> int:
    """Randomized DFS; every back edge closes a tree cycle.  Returns work spent."""
    work = 0
    root = rng.randrange(G.n)
    depth = {root: 0}
    parent = {root: -1}
    pos: list[int] = [root]
    order = {root: list(G.adj[root])}
    rng.shuffle(order[root])
    while pos and work < budget:
        u = pos[-1]
        if order[u]:
            w = order[u].pop()
            work += 1
            if w not in depth:
                depth[w] = depth[u] + 1
                parent[w] = u
                nbrs = list(G.adj[w])
                rng.shuffle(nbrs)
                order[w] = nbrs
                pos.append(w)
            elif w != parent[u] and depth[w] < depth[u] and w in order:
                L = depth[u] - depth[w] + 1
                if L >= 3 and L not in found:
                    cyc = pos[depth[w]:]
                    found[L] = tuple(cyc)
        else:
            pos.pop()
            del order[u]
    return work


def _colorful(G: Graph, L: int, rng: random.Random, budget: int) -> tuple[tuple[int, ...] | None, int]:
    """One random L-colouring: look for a colourful cycle of length L."""
    colour = [rng.randrange(L) for _ in range(G.n)]
    classes = [0] * L
    for v, c in enumerate(colour):
        classes[c] |= 1 << v
    work = 0
    full = (1 << L) - 1
    for s in range(G.n):
        cs = 1 << colour[s]
        table: dict[int, int] = {cs: 1 << s}
        layer = [cs]
        for _ in range(L - 1):
            nxt = []
            for S in layer:
                ends = table[S]
                if not ends:
                    continue
                nbhd = 0
                e = ends
                while e:
                    low = e & -e
                    nbhd |= G.masks[low.bit_length() - 1]
                    e ^= low
                for c in range(L):
                    if S >> c & 1:
                        continue
                    work += 1
                    got = nbhd & classes[c]
                    if got:
                        T = S | 1 << c
                        if T not in table:
                            table[T] = 0
                            nxt.append(T)
                        table[T] |= got
            layer = nxt
            if work > budget:
                return None, work
        closing = table.get(full, 0) & G.masks[s]
        if closing and L >= 3:
            return _colourful_walk(G, colour, table, s, closing, full), work
    return None, work


def _colourful_walk(G: Graph, colour: list[int], table: dict[int, int], s: int,
                    closing: int, S: int) -> tuple[int, ...]:
    v = (closing & -closing).bit_length() - 1
    seq = [v]
    while v != s:
        S ^= 1 << colour[v]
        opts = table[S] & G.masks[v]
        v = (opts & -opts).bit_length() - 1
        seq.append(v)
    return tuple(reversed(seq))


def cycle_spectrum_lower(G: Graph, budget: int = 200_000, seed: int = 0, cc_cap: int = CC_CAP) -> CycleSpectrum:
    """Lengths certified present by witnesses; absence is never claimed.

    Half the budget goes to randomized DFS back-edge cycles, the rest to
    colour-coding repetitions for the lengths up to ``cc_cap`` not yet seen.
    ``confidence[L]`` is the chance a fixed L-cycle would have been coloured
    colourfully in at least one repetition actually run.
    """
    rng = random.Random(seed)
    found: dict[int, tuple[int, ...]] = {}
    if G.n == 0 or G.edge_count == 0:
        return _make(G, found, False, "dfs+colour_coding", budget)
    spent = 0
    dfs_budget = budget // 2
    while spent < dfs_budget:
        spent += _dfs_cycles(G, rng, found, dfs_budget - spent) + 1
    confidence = {}
    targets = [L for L in range(3, min(cc_cap, G.n) + 1) if L not in found]
    remaining = budget - spent
    for i, L in enumerate(targets):
        share = remaining // max(1, len(targets) - i)
        used = 0
        reps = 0
        p = math.factorial(L) / L ** L
        while used < share and L not in found:
            wit, work = _colorful(G, L, rng, share - used)
            used += work + 1
            if wit is None and used >= share:
                break
            reps += 1
            if wit is not None:
                found[L] = wit
        remaining -= used
        if L not in found:
            confidence[L] = 1 - (1 - p) ** reps
    spec = _make(G, found, False, "dfs+colour_coding", budget)
    spec.confidence = confidence
    return spec


def witnesses_valid(G: Graph, spec: CycleSpectrum) -> list[str]:
    out = []
    for L, cyc in spec.witnesses.items():
        if len(cyc) != L:
            out.append(f"{L}: witness has {len(cyc)} vertices")
        out += [f"{L}: {p}" for p in cycle_problems(G, cyc)]
    return out


# -- measurements ---------------------------------------------------------------------


def _lengths(S: CycleSpectrum | Iterable[int]) -> set[int]:
    return S.as_set() if isinstance(S, CycleSpectrum) else set(S)


def residue_spectrum(S: CycleSpectrum | Iterable[int], a: int, b: int) -> set[int]:
    if b < 1:
        raise DomainError("modulus must be at least 1")
    return {L for L in _lengths(S) if (L - a) % b == 0}


def odd_spectrum(S: CycleSpectrum | Iterable[int]) -> set[int]:
    return residue_spectrum(S, 1, 2)


def harmonic_sum(lengths: CycleSpectrum | Iterable[int]) -> float:
    ls = _lengths(lengths)
    if any(L < 3 for L in ls):
        raise DomainError("cycle lengths are at least 3")
    return math.fsum(1 / L for L in ls)


def harmonic_number(d: int) -> float:
    return math.fsum(1 / i for i in range(1, d + 1))


def complete_bipartite_spectrum(d: int) -> set[int]:
    """Known spectrum of K_{d,d}: every even length from 4 to 2d."""
    return set(range(4, 2 * d + 1, 2))


def even_lower_end(ell: int) -> tuple[int, bool]:
    """``max(4, ceil(log^8 ell))`` rounded up to even, and whether it exceeds ``ell``."""
    lo = max(4, math.ceil(math.log(ell) ** 8)) if ell > 1 else 4
    lo += lo % 2
    return lo, lo > ell


def even_interval_report(S: CycleSpectrum | Iterable[int], d: float | None = None) -> dict[str, Any]:
    """Largest even ``ell`` in S whose interval ``[log^8 ell, ell]`` of evens is covered.

    When the lower end exceeds ``ell`` (always, at desk scale) the check uses
    the full even run from 4 and sets ``degenerate``.
    """
    ls = _lengths(S)
    exact = S.exact if isinstance(S, CycleSpectrum) else True
    evens = sorted(L for L in ls if L % 2 == 0)
    best = None
    degenerate_any = False
    for ell in evens:
        lo, degenerate = even_lower_end(ell)
        if degenerate:
            lo = 4
            degenerate_any = True
        if all(t in ls for t in range(lo, ell + 1, 2)):
            best = ell
    top = evens[-1] if evens else 4
    missing = [t for t in range(4, top + 1, 2) if t not in ls]
    out: dict[str, Any] = {
        "best_ell": best,
        "holds": best is not None,
        "missing": missing,
        "degenerate": degenerate_any,
        "one_sided": not exact,
    }
    if d is not None and d > 1:
        bound = d / (10 * math.log(d) ** 12)
        out["literal_bound"] = bound
        out["literal_bound_vacuous"] = bound < 4
    return out


def odd_interval_report(S: CycleSpectrum | Iterable[int]) -> dict[str, Any] | None:
    """The odd run ``[ell, ell*r]`` of S with the largest ratio r (ties: smallest ell)."""
    ls = _lengths(S)
    odds = sorted(L for L in ls if L % 2)
    best = None
    for a in odds:
        b = a
        while b + 2 in ls:
            b += 2
        ratio = Fraction(b, a)
        if best is None or ratio > best[1]:
            best = (a, ratio, b)
    if best is None:
        return None
    exact = S.exact if isinstance(S, CycleSpectrum) else True
    return {"ell": best[0], "ratio": best[1], "top": best[2], "one_sided": not exact}


def odd_runs(S: CycleSpectrum | Iterable[int]) -> list[tuple[int, int]]:
    ls = sorted(L for L in _lengths(S) if L % 2)
    runs = []
    for L in ls:
        if runs and runs[-1][1] + 2 == L:
            runs[-1] = (runs[-1][0], L)
        else:
            runs.append((L, L))
    return runs


# -- sequences -------------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceSpec:
    """An increasing integer sequence: ``powers_of_two`` (4, 8, 16, ...),
    ``arithmetic`` (a, a+d, ...), ``geometric`` (floor(a * C^i), forced increasing)
    or ``explicit`` values; ``parity`` optionally keeps only even or odd terms."""

    kind: str
    a: int = 0
    d: int = 1
    C: float = 2.0
    values: tuple[int, ...] = ()
    parity: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("powers_of_two", "arithmetic", "geometric", "explicit"):
            raise DomainError(f"unknown sequence kind {self.kind!r}")
        if self.kind == "arithmetic" and self.d < 1:
            raise DomainError("arithmetic step must be positive")
        if self.kind == "geometric" and not self.C > 1:
            raise DomainError("geometric ratio must exceed 1")
        if self.kind == "explicit" and any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise DomainError("explicit sequence must be strictly increasing")
        if self.parity not in (None, "even", "odd"):
            raise DomainError("parity must be 'even', 'odd' or None")

    def _raw(self) -> Iterator[int]:
        if self.kind == "powers_of_two":
            x = 4
            while True:
                yield x
                x *= 2
        elif self.kind == "arithmetic":
            x = self.a
            while True:
                yield x
                x += self.d
        elif self.kind == "geometric":
            x = float(self.a)
            last = None
            while True:
                v = math.floor(x)
                if last is None or v > last:
                    yield v
                    last = v
                x *= self.C
        else:
            yield from self.values

    def terms(self, upto: int) -> list[int]:
        out = []
        for x in self._raw():
            if x > upto:
                break
            if self.parity == "even" and x % 2 or self.parity == "odd" and not x % 2:
                continue
            out.append(x)
        return out


def parse_sequence(text: str) -> SequenceSpec:
    """``pow2``, ``arith:a,d``, ``geom:a,C`` or ``list:x,y,z`` (optionally ``/even`` or ``/odd``)."""
    parity = None
    if "/" in text:
        text, parity = text.rsplit("/", 1)
    head, _, rest = text.partition(":")
    try:
        nums = [x for x in rest.split(",") if x]
        if head == "pow2":
            return SequenceSpec("powers_of_two", parity=parity)
        if head == "arith":
            return SequenceSpec("arithmetic", a=int(nums[0]), d=int(nums[1]), parity=parity)
        if head == "geom":
            return SequenceSpec("geometric", a=int(nums[0]), C=float(nums[1]), parity=parity)
        if head == "list":
            return SequenceSpec("explicit", values=tuple(int(x) for x in nums), parity=parity)
    except (IndexError, ValueError):
        pass
    raise DomainError(f"cannot parse sequence {text!r}")


def hits_sequence(S: CycleSpectrum | Iterable[int], seq: SequenceSpec, upto: int | None = None) -> dict[str, Any]:
    """First term of ``seq`` that is a cycle length, or a miss (one-sided for lower bounds)."""
    ls = _lengths(S)
    exact = S.exact if isinstance(S, CycleSpectrum) else True
    if upto is None:
        upto = max(ls, default=0)
        if isinstance(S, CycleSpectrum):
            upto = max(upto, S.n)
    for i, x in enumerate(seq.terms(upto)):
        if x in ls:
            return {"hit": x, "index": i}
    return {"hit": None, "miss": True, "exact": exact}


def growth_report(seq: SequenceSpec, upto: int) -> dict[str, Any]:
    """Gap conditions: ``s_{i+1} <= exp(s_i^{1/10})`` and the largest ratio ``s_{i+1}/s_i``."""
    t = seq.terms(upto)
    pairs = list(zip(t, t[1:]))
    # compare logs to dodge overflow
    slow = all(math.log(b) <= a ** 0.1 for a, b in pairs if a > 0)
    ratio = max((Fraction(b, a) for a, b in pairs if a > 0), default=None)
    return {
        "terms_checked": len(t),
        "increasing": all(b > a for a, b in pairs),
        "subexponential_gaps": slow,
        "max_ratio": None if ratio is None else float(ratio),
        "all_even": all(x % 2 == 0 for x in t),
        "all_odd": all(x % 2 for x in t),
    }


# -- property P -----------------------------------------------------------------------


def all_path_lengths(G: Graph, cap: int = PROPERTY_P_CAP) -> dict[tuple[int, int], int]:
    """Bitmask of path lengths for every pair u < v, by subset DP over paths from u."""
    n = G.n
    if n > cap:
        raise CapacityError(f"path-length table capped at n={cap}, got n={n}")
    out: dict[tuple[int, int], int] = {}
    for u in range(n):
        reach = {1 << u: 1 << u}
        lengths = [0] * n
        frontier = [1 << u]
        size = 0
        while frontier:
            nxt = {}
            for mask in frontier:
                ends = reach[mask]
                e = ends
                while e:
                    low = e & -e
                    v = low.bit_length() - 1
                    e ^= low
                    lengths[v] |= 1 << size
                    cand = G.masks[v] & ~mask
                    while cand:
                        lw = cand & -cand
                        cand ^= lw
                        T = mask | lw
                        nxt[T] = nxt.get(T, 0) | lw
            for T, ends in nxt.items():
                reach[T] = ends
            frontier = list(nxt)
            size += 1
        for v in range(u + 1, n):
            out[(u, v)] = lengths[v]
    return out


def property_P_check(H: Graph, ell: int, upper: int, cap: int = PROPERTY_P_CAP) -> dict[str, Any]:
    """Every parity-compatible length in ``[ell, upper]`` is a u,v-path length, for all u != v."""
    if H.n > cap:
        raise CapacityError(f"property P capped at n={cap}, got n={H.n}")
    bp = _connected_bipartition(H)
    if upper < ell:
        return {"holds": True, "vacuous": True, "counterexample": None, "pairs": 0}
    table = all_path_lengths(H, cap)
    for (u, v), mask in sorted(table.items()):
        pi = parity_pi(H, u, v, bp)
        for t in range(max(ell, 0), upper + 1):
            if (t - pi) % 2 == 0 and not mask >> t & 1:
                return {"holds": False, "vacuous": False, "counterexample": [u, v, t],
                        "pairs": len(table)}
    return {"holds": True, "vacuous": False, "counterexample": None, "pairs": len(table)}
