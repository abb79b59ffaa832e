"""Acceptance criteria, one test per criterion.

Each test records its checks and wall time; conftest prints one PASS/FAIL
line per criterion at the end of the run.  ``python tests/test_acceptance.py``
runs the same suite and prints the lines directly.
"""

import itertools
import math
import random
from fractions import Fraction

import networkx as nx

from cyclekit import DomainError, NotFound, build_graph
from cyclekit.connect import grow_avoiding
from cyclekit.expander import (ExpanderCertificate, ExpansionParams, NonExpansionWitness, check_expander,
                               extract_bipartite, extract_expander, max_cut_sides)
from cyclekit.gadget import (VertexExpansion, build_simple_adjuster, chain_adjusters, exact_length_path,
                             find_adjuster_avoiding,
                             exact_length_path_oracle, path_lengths_naive, validate_adjuster)
from cyclekit.gadget.paths import effective_slack
from cyclekit.generators import generate
from cyclekit.graph import average_degree, parity_pi, parity_triple, shortest_cycle
from cyclekit.spectrum import (complete_bipartite_spectrum, cycle_spectrum_exact, cycle_spectrum_naive,
                               even_interval_report, growth_report, harmonic_number, harmonic_sum,
                               parse_sequence)
from cyclekit.subdivision import (balanced_subdivision_naive, construct_balanced_subdivision_expander,
                                  find_balanced_subdivision, find_tk2_skewed, validate_subdivision)

from acceptance_log import RESULTS, criterion
from corpus import from_nx, named, random_connected_bipartite, spectrum_corpus, subset_oracle

bare = VertexExpansion.bare


def _finish(out):
    assert out.passed, out.line()


def test_criterion_01_spectrum_oracle_equivalence():
    with criterion(1, "spectrum DP equals naive enumeration", 60) as out:
        corpus = spectrum_corpus()
        bad = [name for name, G in corpus
               if set(cycle_spectrum_exact(G, witnesses=False).lengths) != cycle_spectrum_naive(G)]
        out.checks["corpus has 60 graphs"] = len(corpus) == 60
        out.checks["zero discrepancies"] = not bad
        out.detail = f"graphs={len(corpus)} discrepancies={len(bad)}"
    _finish(out)


def test_criterion_02_petersen_spectrum():
    with criterion(2, "Petersen spectrum", 1) as out:
        P = generate("petersen")
        naive = cycle_spectrum_naive(P)
        dp = set(cycle_spectrum_exact(P).lengths)
        out.checks["naive oracle gives {5,6,8,9}"] = naive == {5, 6, 8, 9}
        out.checks["DP gives {5,6,8,9}"] = dp == {5, 6, 8, 9}
        out.detail = f"lengths={sorted(dp)}"
    _finish(out)


def test_criterion_03_complete_bipartite_harmonic():
    with criterion(3, "K_{d,d} harmonic sums", 5) as out:
        rows = []
        for d in (8, 12, 16, 20, 24):
            if 2 * d <= 24:
                S = set(cycle_spectrum_exact(generate("complete_bipartite", d, d), witnesses=False).lengths)
                out.checks[f"d={d} DP spectrum is the evens 4..2d"] = S == complete_bipartite_spectrum(d)
            else:
                S = complete_bipartite_spectrum(d)
            h = harmonic_sum(S)
            closed = (harmonic_number(d) - 1) / 2
            out.checks[f"d={d} matches (H_d-1)/2"] = abs(h - closed) <= 1e-12
            out.checks[f"d={d} exceeds 0.45 log d"] = h > 0.45 * math.log(d)
            rows.append(f"{d}:{h:.4f}/{0.45 * math.log(d):.4f}")
        out.detail = "sum/0.45logd " + " ".join(rows)
    _finish(out)


def test_criterion_04_parity_soundness():
    with criterion(4, "bipartite parity soundness", 120) as out:
        rng = random.Random(4)
        bad_len = bad_triple = 0
        for _ in range(500):
            n = rng.randint(2, 10)
            H = random_connected_bipartite(rng, n, rng.uniform(0.3, 0.8))
            for u, v in itertools.combinations(range(n), 2):
                pi = parity_pi(H, u, v)
                bad_len += sum(1 for L in path_lengths_naive(H, u, v) if L % 2 != pi % 2)
            for t in itertools.permutations(range(n), 3):
                if parity_triple(H, *t) not in (0, 2):
                    bad_triple += 1
        out.checks["path lengths match parity class"] = bad_len == 0
        out.checks["parity_triple in {0,2}"] = bad_triple == 0
        out.detail = f"graphs=500 length_violations={bad_len} triple_violations={bad_triple}"
    _finish(out)


def test_criterion_05_extraction_guarantees():
    with criterion(5, "extraction degree guarantees", 60) as out:
        rng = random.Random(5)
        fails = {"avg": 0, "min": 0, "bip_avg": 0, "cross": 0}
        for i in range(200):
            n = rng.randint(10, 200)
            p = rng.uniform(2, 12) / n
            G = generate("random_gnp", n, min(p, 1.0), seed=i)
            if G.edge_count == 0:
                G = generate("cycle", n)
            ext = extract_expander(G, ExpansionParams(0.5, 2), seed=i)
            dG = average_degree(G)
            fails["avg"] += not (ext.average >= dG / 2 and ext.average == Fraction(2 * ext.graph.edge_count,
                                                                                    ext.graph.n))
            fails["min"] += not (Fraction(ext.min_degree) >= ext.average / 2)
            B = extract_bipartite(G, seed=i)
            fails["bip_avg"] += not (average_degree(B) >= dG / 2)
            side = max_cut_sides(G, seed=i)
            fails["cross"] += sum(1 for v in range(G.n)
                                  if 2 * sum(1 for w in G.adj[v] if side[w] != side[v]) < G.degree(v)
                                  or 2 * B.degree(v) < G.degree(v))
        out.checks["d(H) >= d(G)/2"] = fails["avg"] == 0
        out.checks["min degree >= d(H)/2"] = fails["min"] == 0
        out.checks["bipartite d(B) >= d(G)/2"] = fails["bip_avg"] == 0
        out.checks["per-vertex half-degree cross"] = fails["cross"] == 0
        out.detail = f"instances=200 failures={fails}"
    _finish(out)


def _expander_corpus():
    extra = [("grid(4,4)", generate("grid", 4, 4)), ("hypercube(4)", generate("hypercube", 4)),
             ("cycle(16)", generate("cycle", 16)), ("random_gnp(14)", generate("random_gnp", 14, 0.3, seed=2)),
             ("random_regular(16,3)", generate("random_regular", 16, 3, seed=3)),
             ("complete_bipartite(7,8)", generate("complete_bipartite", 7, 8)),
             # non-expanders, so sampled mode has witnesses to revalidate
             ("empty(10)", build_graph([], n=10)),
             ("two_C6", build_graph([(i, (i + 1) % 6) for i in range(6)]
                                    + [(6 + i, 6 + (i + 1) % 6) for i in range(6)])),
             ("star(12)", build_graph([(0, i) for i in range(1, 12)])),
             ("matching(14)", build_graph([(2 * i, 2 * i + 1) for i in range(7)]))]
    return spectrum_corpus() + extra


def test_criterion_06_expander_cross_validation():
    with criterion(6, "expander predicate cross-validation", 300) as out:
        grid = [(0.5, 2), (0.9, 4), (1.0, 3), (0.2, 1)]
        disagree = bad_witness = witnesses = exhaustive_witnesses = 0
        corpus = _expander_corpus()
        for idx, (name, G) in enumerate(corpus):
            for eps1, k in grid:
                p = ExpansionParams(eps1, k)
                res = check_expander(G, p)
                if isinstance(res, ExpanderCertificate) != subset_oracle(G, p):
                    disagree += 1
                if isinstance(res, NonExpansionWitness):
                    exhaustive_witnesses += 1
                    bad_witness += not res.revalidate(G, p)
                s = check_expander(G, p, "sampled", budget=200, seed=idx)
                if isinstance(s, NonExpansionWitness):
                    witnesses += 1
                    bad_witness += not s.revalidate(G, p)
        out.checks["exhaustive agrees with subset oracle"] = disagree == 0
        out.checks["every witness revalidates"] = bad_witness == 0
        out.checks["sampled mode produced witnesses"] = witnesses > 0
        out.detail = (f"graphs={len(corpus)} max_n={max(G.n for _, G in corpus)} disagreements={disagree} "
                      f"exhaustive_witnesses={exhaustive_witnesses} sampled_witnesses={witnesses}")
    _finish(out)


def test_criterion_07_adjuster_axioms():
    with criterion(7, "adjuster axioms", 300) as out:
        ok = failed = violations = 0
        for i in range(100):
            n = 12 + (7 * i) % 29
            K = generate("complete_bipartite", n, n)
            r = 1 + i % 3
            if i % 2 == 0:
                C = shortest_cycle(K)
                off = [v for v in range(2 * n) if v not in C]
                rng = random.Random(i)
                x1, x2 = rng.sample(off, 2)
                adj = build_simple_adjuster(K, C, x1, x2, 1 + i % 3, n)
            else:
                adj = chain_adjusters(K, set(), 1 + i % 3, n, r, seed=i)
            if not adj:
                failed += 1
                continue
            rep = validate_adjuster(K, adj)
            ok += 1
            violations += not (rep["ok"] and rep["minimal"] and rep["A4"])
        out.checks["zero axiom violations"] = violations == 0
        out.checks["some runs succeed"] = ok > 0
        out.detail = f"runs=100 successes={ok} not_found={failed} violations={violations}"
    _finish(out)


def test_criterion_08_exact_length_soundness():
    with criterion(8, "exact-length constructive soundness", 600) as out:
        contradictions = checked = 0
        for name, G in named(12):
            for x, y in itertools.combinations(range(G.n), 2):
                for ell in range(1, 12):
                    try:
                        cons = exact_length_path(G, set(), bare(x), bare(y), ell)
                    except DomainError:
                        continue
                    checked += 1
                    if not cons:
                        continue
                    if not (cons.is_valid(G) and cons.length == ell and {cons.start, cons.end} == {x, y}):
                        contradictions += 1
                        continue
                    orc = exact_length_path_oracle(G, x, y, ell)
                    if isinstance(orc, NotFound) and orc.proved:
                        contradictions += 1
        hits = tries = 0
        for n in range(4, 11):
            K = generate("complete_bipartite", n, n)
            for ell in range(3, n + 1):
                for y in range(1, 2 * n):
                    if (y >= n) != (ell % 2 == 1):
                        continue
                    tries += 1
                    P = exact_length_path(K, set(), bare(0), bare(y), ell, seed=y)
                    hits += bool(P) and P.length == ell and P.is_valid(K)
        rate = hits / tries
        out.checks["no contradiction with a proved NotFound"] = contradictions == 0
        out.checks["K_{n,n} success rate >= 95%"] = rate >= 0.95
        out.detail = f"triples={checked} contradictions={contradictions} knn={hits}/{tries} ({rate:.1%})"
    _finish(out)


def _small_graphs():
    """All graphs of the atlas on 3..7 vertices plus named graphs up to 9 vertices."""
    atlas = [from_nx(H) for H in nx.graph_atlas_g() if 3 <= H.number_of_nodes() <= 7]
    return atlas + [G for _, G in named(9)]


def test_criterion_09_balanced_subdivisions():
    with criterion(9, "balanced subdivisions", 300) as out:
        K4 = find_balanced_subdivision(generate("complete", 4), 4, 1)
        out.checks["TK_4^(1) in K4"] = bool(K4) and validate_subdivision(generate("complete", 4), K4)["ok"]
        octa = generate("octahedron")
        res = find_balanced_subdivision(octa, 4, 1)
        out.checks["TK_4^(1) in octahedron"] = bool(res) and validate_subdivision(octa, res)["ok"]
        C6 = generate("cycle", 6)
        res = find_balanced_subdivision(C6, 3, 2)
        out.checks["TK_3^(2) in C6"] = bool(res) and validate_subdivision(C6, res)["ok"]
        graphs = _small_graphs()
        mismatch = cells = 0
        for G in graphs:
            for ell in range(1, 4):
                got = find_balanced_subdivision(G, 3, ell)
                want = balanced_subdivision_naive(G, 3, ell)
                cells += 1
                if bool(got) != (want is not None) or (got and not validate_subdivision(G, got)["ok"]):
                    mismatch += 1
        out.checks["search matches naive enumerator"] = mismatch == 0
        K = generate("complete_bipartite", 30, 30)
        built = None
        for ell in (2, 4, 6):
            S = construct_balanced_subdivision_expander(K, 3, ell)
            if S and validate_subdivision(K, S)["ok"]:
                built = ell
                break
        out.checks["pipeline TK_3 in K_{30,30}"] = built is not None
        out.detail = f"cells={cells} mismatches={mismatch} pipeline_ell={built}"
    _finish(out)


def test_criterion_10_skewed_tk2():
    with criterion(10, "skewed TK^(2)", 30) as out:
        rng = random.Random(10)
        good = 0
        for _ in range(50):
            w = rng.randint(2, 6)
            d = rng.randint(2, w)
            W = list(range(w))
            U = list(range(w, w + w * w))
            edges = [(x, u) for u in U for x in rng.sample(W, rng.randint(d, w))]
            G = build_graph(edges, n=w + w * w)
            S = find_tk2_skewed(G, U, W, d)
            good += (validate_subdivision(G, S)["ok"] and S.k == d and S.ell == 2
                     and all(set(p[1:-1]) <= set(U) for p in S.paths.values()))
        out.checks["50 instances validate"] = good == 50
        K = generate("complete_bipartite", 3, 9)
        rejects = 0
        for args in [(range(3, 11), range(3), 3),        # |U| < |W|^2
                     (range(2, 11), range(3), 3),        # U and W overlap
                     (range(3, 12), range(3), 4)]:       # d > |W|
            try:
                find_tk2_skewed(K, *args)
            except DomainError:
                rejects += 1
        sparse = build_graph([(0, u) for u in range(3, 12)] + [(1, u) for u in range(3, 12)] + [(2, 3)])
        try:
            find_tk2_skewed(sparse, range(3, 12), range(3), 3)
        except DomainError:
            rejects += 1
        out.checks["precondition violations rejected"] = rejects == 4
        out.detail = f"valid={good}/50 rejected={rejects}/4"
    _finish(out)


def test_criterion_11_regime_flags():
    with criterion(11, "regime flags instead of asymptotic claims", 60) as out:
        G = generate("random_gnp", 40, 0.3, seed=11)
        ext = extract_expander(G, ExpansionParams(0.5, 2), seed=11)
        out.checks["extraction records regime flags"] = bool(ext.to_dict()["regime_flags"])
        tr = grow_avoiding(G, {0}, params=ExpansionParams(0.5, 2))
        out.checks["growth records hypotheses"] = "all" in tr.hypotheses
        rep = even_interval_report(complete_bipartite_spectrum(24), d=24)
        out.checks["even interval bound flagged vacuous at d=24"] = rep["literal_bound_vacuous"] is True
        gr = growth_report(parse_sequence("pow2"), 10 ** 6)
        out.checks["sequence gap condition reported"] = "subexponential_gaps" in gr
        slack, which = effective_slack(1e9, 60)
        out.checks["window slack records the active bound"] = (slack, which) == (60, "n")
        S = construct_balanced_subdivision_expander(generate("complete_bipartite", 30, 30), 3, 2)
        flags = S.info.get("regime_flags", {}) if S else {}
        out.checks["pipeline records literal-size flag"] = flags.get("literal_sizes_fit") is False
        miss = find_adjuster_avoiding(generate("cycle", 6), set(), 1, 6)
        out.checks["adjuster search reports proof constants"] = (
            isinstance(miss, NotFound) and "Delta" in miss.info["constants"])
        out.detail = "asymptotic statements are reported as flags, not asserted"
    _finish(out)


if __name__ == "__main__":
    import sys
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    for num in sorted(RESULTS):
        print(RESULTS[num].line())
    sys.exit(0 if all(r.passed for r in RESULTS.values()) else 1)
