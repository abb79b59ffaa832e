import csv
import io
import json

import pytest

from cyclekit.cli import cell_seed, load_config, run
from cyclekit.io import graph_from_dict, read_graph


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def report(*argv):
    code, text = call(*argv)
    assert code == 0, text
    return json.loads(text)


def test_spectrum_petersen():
    rep = report("spectrum", "--family", "petersen", "--exact")
    assert rep["lengths"] == [5, 6, 8, 9] and rep["exact"]
    assert rep["seed"] == 0 and rep["n"] == 10


def test_spectrum_sequence_and_residue():
    rep = report("spectrum", "--family", "complete_bipartite", "4", "4", "--sequence", "pow2", "--residue", "0,4")
    assert rep["sequence_hits"]["hit"] == 4 and rep["residue"]["lengths"] == [4, 8]


def test_exact_path_both_backends():
    rep = report("exact-path", "--family", "complete_bipartite", "5", "5", "--from", "0", "--to", "5",
                 "--length", "7", "--backend", "both")
    assert rep["verdict"] == "found" and len(rep["path"]) == 8
    assert rep["agreement"] and not rep["contradiction"]


def test_not_found_exits_zero():
    rep = report("exact-path", "--family", "cycle", "6", "--from", "0", "--to", "3", "--length", "5",
                 "--backend", "oracle")
    assert rep["verdict"] == "not_found"


def test_empty_input_exits_2(tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("")
    assert call("spectrum", "--input", str(f))[0] == 2
    assert call("spectrum", "--input", str(tmp_path / "missing.txt"))[0] == 2
    assert call("spectrum", "--family", "cycle", "2")[0] == 2


def test_capacity_exits_3():
    assert call("expander-check", "--family", "cycle", "40", "--k", "2")[0] == 3


def test_other_commands_run():
    assert report("expander-check", "--family", "complete_bipartite", "4", "4", "--k", "2")["verdict"]
    assert report("extract", "--family", "random_gnp", "30", "0.3", "--seed", "4", "--k", "2")["verdict"] == "found"
    assert report("connect", "--family", "grid", "4", "4", "--A", "0", "--B", "15", "--W", "5")["path"]
    assert report("adjuster", "--family", "complete_bipartite", "12", "12", "--r", "2")["verdict"] == "found"
    rep = report("tk", "--family", "cycle", "6", "--k", "3")
    assert rep["subdivision"]["ell"] == 2
    assert report("property-p", "--family", "complete_bipartite", "4", "4", "--ell", "1", "--upper", "7")["holds"]


def test_tk_construct_mode():
    rep = report("tk", "--family", "complete_bipartite", "30", "30", "--k", "3", "--mode", "construct",
                 "--ell-min", "2", "--ell-max", "6")
    assert rep["verdict"] == "found" and rep["subdivision"]["ell"] % 2 == 0


def test_determinism():
    argv = ("extract", "--family", "random_gnp", "40", "0.2", "--seed", "9", "--k", "2")
    assert call(*argv) == call(*argv)


def test_json_and_dot_output(tmp_path):
    out = tmp_path / "rep.dot"
    assert call("exact-path", "--family", "cycle", "6", "--from", "0", "--to", "3", "--length", "3",
                "--format", "dot", "--output", str(out))[0] == 0
    text = out.read_text()
    assert text.startswith("graph") and "color" in text


def test_graph_json_round_trip(tmp_path):
    from cyclekit.generators import generate
    from cyclekit.io import graph_to_dict
    G = generate("random_gnp", 20, 0.3, seed=7)
    f = tmp_path / "g.json"
    f.write_text(json.dumps(graph_to_dict(G)))
    assert read_graph(str(f)) == G == graph_from_dict(json.loads(f.read_text()))
    rep = report("spectrum", "--input", str(f), "--budget", "2000")
    assert not rep["exact"]


def test_config_and_env(tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nexact = true\nseed=5\n")
    assert load_config(str(cfg)) == {"exact": "true", "seed": "5"}
    rep = report("--config", str(cfg), "spectrum", "--family", "complete", "4")
    assert rep["seed"] == 5 and rep["lengths"] == [3, 4]
    monkeypatch.setenv("CYCLEKIT_SEED", "11")
    assert report("spectrum", "--family", "complete", "4")["seed"] == 11
    bad = tmp_path / "bad.cfg"
    bad.write_text("no equals sign\n")
    assert call("--config", str(bad), "spectrum", "--family", "complete", "4")[0] == 2


def test_sweep_rows(tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("cycle 6\npetersen\n# skipped\ncomplete 25\npath 4\n")
    code, text = call("sweep", "--corpus", str(corpus), "--commands", "spectrum,tk", "--cell-args", "tk=--k 3",
                      "--workers", "3", "--seed", "2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 4 * 2
    assert {r["verdict"] for r in rows} >= {"found", "not_found"}
    assert rows[0]["seed"] == str(cell_seed(2, 0))
    # same master seed, fewer workers: identical output
    assert call("sweep", "--corpus", str(corpus), "--commands", "spectrum,tk", "--cell-args", "tk=--k 3",
                "--seed", "2")[1] == text


def test_sweep_needs_corpus():
    assert call("sweep")[0] == 2
