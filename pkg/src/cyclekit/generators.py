"""Named graph families used as the test and sweep corpus."""

from __future__ import annotations

import itertools
import random
from typing import Callable

from .errors import DomainError
from .graph import Graph, build_graph, short_cycles


def complete(n: int) -> Graph:
    _need(n >= 0, "complete: n >= 0")
    return build_graph(itertools.combinations(range(n), 2), n=n)


def complete_bipartite(a: int, b: int) -> Graph:
    """Sides are ``0..a-1`` and ``a..a+b-1``."""
    _need(a >= 0 and b >= 0, "complete_bipartite: sizes >= 0")
    return build_graph(((i, a + j) for i in range(a) for j in range(b)), n=a + b)


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle: n >= 3")
    return build_graph(((i, (i + 1) % n) for i in range(n)), n=n)


def path(n: int) -> Graph:
    _need(n >= 1, "path: n >= 1")
    return build_graph(((i, i + 1) for i in range(n - 1)), n=n)


def grid(rows: int, cols: int) -> Graph:
    """Vertex ``r*cols + c`` sits at row r, column c."""
    _need(rows >= 1 and cols >= 1, "grid: positive dimensions")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(edges, n=rows * cols)


def hypercube(d: int) -> Graph:
    _need(d >= 0, "hypercube: d >= 0")
    n = 1 << d
    return build_graph(((v, v ^ (1 << i)) for v in range(n) for i in range(d) if v < v ^ (1 << i)), n=n)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(outer + spokes + inner, n=10)


def octahedron() -> Graph:
    """K_{2,2,2}: every pair adjacent except (0,1), (2,3), (4,5)."""
    return build_graph(((u, v) for u, v in itertools.combinations(range(6), 2) if u // 2 != v // 2), n=6)


def random_gnp(n: int, p: float, seed: int = 0) -> Graph:
    _need(n >= 0 and 0.0 <= p <= 1.0, "random_gnp: n >= 0, 0 <= p <= 1")
    rng = random.Random(seed)
    return build_graph(((u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p), n=n)


def random_regular(n: int, d: int, seed: int = 0, tries: int = 1000) -> Graph:
    """Uniform-ish d-regular graph by the pairing model with restarts."""
    _need(0 <= d < n and (n * d) % 2 == 0, "random_regular: 0 <= d < n and n*d even")
    rng = random.Random(seed)
    for _ in range(tries):
        points = [v for v in range(n) for _ in range(d)]
        rng.shuffle(points)
        edges = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            if u == v or (min(u, v), max(u, v)) in edges:
                ok = False
                break
            edges.add((min(u, v), max(u, v)))
        if ok:
            return build_graph(sorted(edges), n=n)
    raise DomainError(f"random_regular: no simple pairing in {tries} tries")


def erdos_girth_stub(n: int, p: float, g: int, seed: int = 0) -> Graph:
    """G(n, p) with one edge deleted from each cycle shorter than ``g``.

    Only a stand-in for the probabilistic high-girth construction: it keeps
    whatever density survives the deletions.
    """
    _need(g >= 3, "erdos_girth_stub: g >= 3")
    G = random_gnp(n, p, seed)
    edges = set(G.edges())
    while True:
        H = build_graph(sorted(edges), n=n)
        cycles = [c for c in short_cycles(H) if len(c) < g]
        if not cycles:
            return H
        c = cycles[0]
        edges.discard((min(c[0], c[1]), max(c[0], c[1])))


FAMILIES: dict[str, Callable[..., Graph]] = {
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "cycle": cycle,
    "path": path,
    "grid": grid,
    "hypercube": hypercube,
    "petersen": petersen,
    "octahedron": octahedron,
    "random_gnp": random_gnp,
    "random_regular": random_regular,
    "erdos_girth_stub": erdos_girth_stub,
}

_RANDOM = {"random_gnp", "random_regular", "erdos_girth_stub"}
_PROBABILITY = {"random_gnp", "erdos_girth_stub"}


def generate(family: str, *params: float, seed: int = 0) -> Graph:
    """Build a named family member; random families take the seed."""
    try:
        fn = FAMILIES[family]
    except KeyError:
        raise DomainError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    args = [float(x) if i == 1 and family in _PROBABILITY else int(x) for i, x in enumerate(params)]
    try:
        if family in _RANDOM:
            return fn(*args, seed=seed)
        return fn(*args)
    except TypeError as exc:
        raise DomainError(f"{family}: bad parameters {params!r} ({exc})") from None


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)
