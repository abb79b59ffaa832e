import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cyclekit import DomainError, Path, build_graph, degrees
from cyclekit.gadget import path_lengths_naive
from cyclekit.generators import generate
from cyclekit.graph import (Bipartition, OddCycle, ball, bipartition, components, distance, girth, induced,
                            is_connected, join_paths, minus, minus_edges, neighborhood, parity_pi,
                            parity_triple, shortest_cycle, shortest_path, short_cycles, sphere,
                            union_graphs, cycle_problems)

from strategies import bipartite_graphs, graphs


def test_build_graph_triangle():
    G = build_graph([(0, 1), (1, 2), (2, 0)])
    assert (G.n, G.edge_count) == (3, 3)


def test_build_graph_dedups():
    assert build_graph([(0, 1), (1, 0)]).edge_count == 1


def test_build_graph_rejects_loop():
    with pytest.raises(DomainError):
        build_graph([(0, 0)])


@pytest.mark.parametrize("G, expected", [
    (build_graph([(0, 1), (1, 2), (2, 0)]), (2, Fraction(2), 2)),
    (build_graph([(0, 1), (0, 2), (0, 3), (0, 4)]), (1, Fraction(8, 5), 4)),
    (generate("complete_bipartite", 3, 3), (3, Fraction(3), 3)),
])
def test_degrees(G, expected):
    assert degrees(G) == expected


def test_ball_and_sphere():
    P = generate("path", 4)
    assert ball(P, {0}, 2) == {0, 1, 2}
    C6 = generate("cycle", 6)
    assert ball(C6, {0}, 2) == {0, 1, 2, 4, 5}
    assert sphere(C6, {0}, 3) == {3}
    assert sphere(C6, {0}, 0) == {0}
    lonely = build_graph([(0, 1)], n=3)
    assert sphere(lonely, {2}, 1) == set()


def test_bipartition_examples():
    side = bipartition(generate("cycle", 6)).side
    assert all(side[i] != side[(i + 1) % 6] for i in range(6))
    wit = bipartition(generate("cycle", 5))
    assert isinstance(wit, OddCycle) and sorted(wit.cycle) == list(range(5))
    cls = bipartition(generate("complete_bipartite", 3, 3)).classes()
    assert sorted(map(len, cls)) == [3, 3]


def test_parity_examples():
    C4 = generate("cycle", 4)
    assert parity_pi(C4, 0, 2) == 2
    assert parity_pi(C4, 0, 1) == 1
    assert parity_pi(C4, 0, 0) == 0
    C6 = generate("cycle", 6)
    assert parity_triple(C6, 0, 2, 4) == 2
    assert parity_triple(C6, 0, 1, 2) == 2
    assert parity_triple(C6, 0, 2, 1) == 0


def test_parity_needs_connected_bipartite():
    with pytest.raises(DomainError):
        parity_pi(build_graph([(0, 1), (2, 3)]), 0, 2)
    with pytest.raises(DomainError):
        parity_pi(generate("cycle", 5), 0, 1)


def test_distance_and_operations():
    C6 = generate("cycle", 6)
    assert distance(C6, 0, 3) == 3
    P5 = minus(C6, {0})
    assert P5.n == 5 and P5.edge_count == 4 and is_connected(P5)
    K4 = generate("complete", 4)
    tri = build_graph([(0, 1), (1, 2), (0, 2)], n=4)
    R = minus_edges(K4, tri)
    assert [R.degree(v) for v in range(4)] == [1, 1, 1, 3]
    assert union_graphs(R, tri) == K4


def test_distance_infinite_when_disconnected():
    assert distance(build_graph([(0, 1), (2, 3)]), 0, 3) == float("inf")


def test_shortest_path_is_lex_least():
    C6 = generate("cycle", 6)
    assert shortest_path(C6, {0}, {3}).vertices == (0, 1, 2, 3)
    assert shortest_path(C6, {0}, {3}, avoid={1}).vertices == (0, 5, 4, 3)
    assert shortest_path(C6, {0}, {3}, avoid={1, 5}) is None


def test_path_problems():
    C6 = generate("cycle", 6)
    assert Path((0, 1, 2)).is_valid(C6)
    assert "repeated vertex" in Path((0, 1, 0)).problems(C6)
    assert any("non-edge" in p for p in Path((0, 2)).problems(C6))
    assert Path((4,)).length == 0
    assert join_paths((0, 1), (1, 2)).vertices == (0, 1, 2)


def test_girth_and_short_cycles():
    assert girth(generate("petersen")) == 5
    assert girth(generate("path", 5)) == float("inf")
    cyc = shortest_cycle(generate("complete_bipartite", 3, 3))
    assert len(cyc) == 4 and not cycle_problems(generate("complete_bipartite", 3, 3), cyc)
    cycles = short_cycles(generate("cycle", 7))
    assert cycles and len(cycles[0]) == 7


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=10), st.integers(0, 4))
def test_ball_grows_by_neighbourhood(G, r):
    W = {0}
    inner = ball(G, W, r)
    assert ball(G, W, r + 1) == inner | neighborhood(G, inner)
    layers = [sphere(G, W, i) for i in range(r + 1)]
    assert set().union(*layers) == inner
    assert sum(map(len, layers)) == len(inner)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=10))
def test_degree_sum(G):
    assert 2 * G.edge_count == sum(G.degree(v) for v in range(G.n))
    for u, v in G.edges():
        assert G.has_edge(v, u)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=10))
def test_odd_cycle_witness_is_genuine(G):
    res = bipartition(G)
    if isinstance(res, OddCycle):
        assert len(res.cycle) % 2 == 1
        assert not cycle_problems(G, res.cycle)
    else:
        assert all(res.side[u] != res.side[v] for u, v in G.edges())


@settings(max_examples=40, deadline=None)
@given(bipartite_graphs(max_n=8))
def test_path_lengths_respect_parity(H):
    for u, v in itertools.combinations(range(H.n), 2):
        pi = parity_pi(H, u, v)
        assert all(L % 2 == pi % 2 for L in path_lengths_naive(H, u, v))


@settings(max_examples=40, deadline=None)
@given(bipartite_graphs(min_n=3, max_n=10))
def test_parity_triple_is_zero_or_two(H):
    for a, b, c in itertools.permutations(range(min(H.n, 6)), 3):
        assert parity_triple(H, a, b, c) in (0, 2)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=9))
def test_components_partition(G):
    comps = components(G)
    assert sorted(v for c in comps for v in c) == list(range(G.n))
    for c in comps:
        assert is_connected(induced(G, c))
