"""Small-graph corpora shared by the unit and acceptance suites."""

from __future__ import annotations

import itertools
import math
import random

import networkx as nx

from cyclekit.generators import generate
from cyclekit.graph import Graph, build_graph, is_connected

NAMED = [
    ("complete", (3,)), ("complete", (4,)), ("complete", (5,)), ("complete", (6,)), ("complete", (7,)),
    ("complete_bipartite", (2, 3)), ("complete_bipartite", (3, 3)), ("complete_bipartite", (3, 4)),
    ("complete_bipartite", (4, 4)), ("complete_bipartite", (5, 5)), ("complete_bipartite", (4, 6)),
    ("complete_bipartite", (6, 6)),
    ("cycle", (5,)), ("cycle", (6,)), ("cycle", (7,)), ("cycle", (8,)), ("cycle", (11,)), ("cycle", (12,)),
    ("path", (5,)), ("grid", (2, 3)), ("grid", (3, 3)), ("grid", (3, 4)),
    ("hypercube", (3,)), ("petersen", ()), ("octahedron", ()),
    ("random_gnp", (9, 0.4)), ("random_gnp", (10, 0.3)), ("random_gnp", (11, 0.3)), ("random_gnp", (12, 0.25)),
    ("random_regular", (10, 3)), ("random_regular", (12, 3)),
]


def named(max_n: int = 12) -> list[tuple[str, Graph]]:
    out = []
    for fam, params in NAMED:
        G = generate(fam, *params, seed=1)
        if G.n <= max_n:
            out.append((f"{fam}{params}", G))
    return out


def from_nx(H: nx.Graph) -> Graph:
    H = nx.convert_node_labels_to_integers(H)
    return build_graph(list(H.edges()), n=H.number_of_nodes())


def atlas_sample(count: int, min_n: int = 3, max_n: int = 7, seed: int = 0) -> list[tuple[str, Graph]]:
    """Connected graphs from the atlas of all graphs on at most seven vertices."""
    pool = [H for H in nx.graph_atlas_g()
            if min_n <= H.number_of_nodes() <= max_n and H.number_of_edges() and nx.is_connected(H)]
    rng = random.Random(seed)
    picks = rng.sample(range(len(pool)), count)
    return [(f"atlas{i}", from_nx(pool[i])) for i in sorted(picks)]


def spectrum_corpus() -> list[tuple[str, Graph]]:
    """60 graphs: a sample of small connected graphs plus named graphs up to 12 vertices."""
    nm = named(12)
    return atlas_sample(60 - len(nm)) + nm


def random_connected_bipartite(rng: random.Random, n: int, p: float) -> Graph:
    """Random bipartite graph, resampled until connected."""
    while True:
        side = [0, 1] + [rng.randrange(2) for _ in range(n - 2)]
        edges = [(a, b) for a in range(n) for b in range(a + 1, n)
                 if side[a] != side[b] and rng.random() < p]
        G = build_graph(edges, n=n)
        if is_connected(G):
            return G


def subset_oracle(G: Graph, params) -> bool:
    """Plain itertools enumeration: True iff no set of a qualifying size under-expands."""
    from cyclekit.expander import epsilon
    lo = math.ceil(params.k / 2)
    for size in range(max(lo, 1), G.n // 2 + 1):
        need = epsilon(size, params) * size
        for X in itertools.combinations(range(G.n), size):
            Xs = set(X)
            bd = {w for v in X for w in G.adj[v]} - Xs
            if len(bd) < need - 1e-9:
                return False
    return True
