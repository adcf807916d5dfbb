import json

import numpy as np
import pytest

from conftest import gnp
from plclique.cli import main
from plclique.errors import ValidationError
from plclique.graph import Graph
from plclique.graphio import read_dimacs, read_edgelist, read_graph, write_dimacs, write_graph
from plclique.weights import WeightVector, read_weights, write_weights


@pytest.mark.parametrize("fmt", ["edgelist", "dimacs"])
def test_round_trip(tmp_path, rng, fmt):
    g = gnp(30, 0.3, rng)
    path = tmp_path / "g"
    write_graph(path, g, fmt)
    h = read_graph(path, fmt)
    assert h.n == 30 and np.array_equal(h.edge_keys(), g.edge_keys())


def test_round_trip_empty(tmp_path):
    write_graph(tmp_path / "g", Graph.empty(5))
    assert read_edgelist(tmp_path / "g").edge_count == 0


def test_labels_are_one_based(tmp_path, worked_example):
    write_dimacs(tmp_path / "g", worked_example, comment="worked example")
    lines = (tmp_path / "g").read_text().splitlines()
    assert lines[0] == "c worked example"
    assert lines[1] == "p edge 4 4"
    assert lines[2:] == ["e 1 3", "e 1 4", "e 2 4", "e 3 4"]


@pytest.mark.parametrize("text", [
    "", "3\n", "3 1\n1 4\n", "3 2\n1 2\n", "3 1\n1 x\n", "3 1\n2 2\n", "3 1\n1 2 3\n",
])
def test_bad_edgelists(tmp_path, text):
    (tmp_path / "g").write_text(text)
    with pytest.raises(ValidationError):
        read_edgelist(tmp_path / "g")


@pytest.mark.parametrize("text", ["e 1 2\n", "p edge 3 1\ne 1\n", "p edge 3 1\nx 1 2\n"])
def test_bad_dimacs(tmp_path, text):
    (tmp_path / "g").write_text(text)
    with pytest.raises(ValidationError):
        read_dimacs(tmp_path / "g")


def test_weights_round_trip(tmp_path):
    w = WeightVector(np.array([1.0, 2.5, 1e-3, 123456.789]))
    write_weights(tmp_path / "w", w)
    assert np.array_equal(read_weights(tmp_path / "w").w, w.w)
    (tmp_path / "bad").write_text("1.0\nabc\n")
    with pytest.raises(ValidationError):
        read_weights(tmp_path / "bad")


def test_weights_length_mismatch(tmp_path, worked_example):
    write_graph(tmp_path / "g", worked_example)
    with pytest.raises(ValidationError):
        read_graph(tmp_path / "g", weights=WeightVector(np.ones(3)))


def test_cli_generate_then_clique(tmp_path, capsys):
    out = str(tmp_path / "g.txt")
    assert main(["generate", "--alpha", "1", "--n", "300", "--seed", "5", "--out", out]) == 0
    results = {}
    for m in ("full_top", "quasi_top", "greedy", "exact"):
        capsys.readouterr()
        assert main(["clique", out, "--weights", out + ".weights", "--method", m]) == 0
        lines = capsys.readouterr().out.splitlines()
        verts = [int(v) for v in lines[0].split()]
        assert lines[1] == f"size {len(verts)}"
        assert all(1 <= v <= 300 for v in verts)
        results[m] = len(verts)
    assert results["full_top"] <= results["quasi_top"] <= results["greedy"] <= results["exact"]


def test_cli_generate_reproducible(tmp_path):
    paths = [str(tmp_path / f"g{i}") for i in range(2)]
    for p in paths:
        assert main(["generate", "--alpha", "1.5", "--n", "200", "--seed", "9", "--format", "dimacs",
                     "--kernel", "capped", "--out", p]) == 0
    assert open(paths[0]).read() == open(paths[1]).read()
    assert open(paths[0] + ".weights").read() == open(paths[1] + ".weights").read()


def test_cli_generate_poisson_count(tmp_path):
    out = str(tmp_path / "g")
    assert main(["generate", "--alpha", "1", "--n", "100.5", "--weights", "poisson-count",
                 "--out", out]) == 0
    assert read_edgelist(out).n == read_weights(out + ".weights").n


def test_cli_predict(capsys):
    assert main(["predict", "--alpha", "1", "--n", "1000"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["clique_constant_c"] == pytest.approx(2 ** 0.5)
    assert data["ft_ratio"] == pytest.approx(2 ** -0.5)


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["predict", "--alpha", "-1"]) == 1
    assert main(["clique", str(tmp_path / "missing"), "--weights", str(tmp_path / "nope")]) == 2
    g = gnp(60, 0.6, np.random.default_rng(3))
    write_graph(tmp_path / "g", g)
    write_weights(tmp_path / "w", WeightVector(np.ones(60)))
    assert main(["clique", str(tmp_path / "g"), "--weights", str(tmp_path / "w"),
                 "--method", "exact", "--node-budget", "2"]) == 3
    (tmp_path / "bad").write_text("2 1\n1 7\n")
    assert main(["clique", str(tmp_path / "bad"), "--weights", str(tmp_path / "w")]) == 1
    err = capsys.readouterr().err
    assert "error:" in err


def test_cli_gof(tmp_path, capsys):
    counts = np.random.default_rng(0).poisson(2.0, 500)
    (tmp_path / "c").write_text(" ".join(map(str, counts)))
    assert main(["gof", str(tmp_path / "c"), "--rate", "2.0"]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["samples"] == 500 and res["p_value"] > 0.001
    (tmp_path / "bad").write_text("1 2 x")
    assert main(["gof", str(tmp_path / "bad"), "--rate", "2.0"]) == 1
    assert main(["gof", str(tmp_path / "c"), "--rate", "0"]) == 1


def test_cli_experiment(tmp_path, capsys):
    cfg = tmp_path / "exp.toml"
    cfg.write_text('n_grid = [40, 80, 160]\nreplications = 2\nalgorithms = ["greedy", "full_top", "exact"]\n'
                   "[model]\nalpha = 1.0\n")
    out = tmp_path / "report"
    assert main(["experiment", str(cfg), "--seed", "3", "--out", str(out)]) == 0
    assert "6 records" in capsys.readouterr().out
    summary = json.loads((out / "summary.json").read_text())
    assert "greedy" in summary["fits"]
    rows = (out / "records.csv").read_text().splitlines()
    assert len(rows) == 7 and rows[0].startswith("n,replicate,seed")
    cfg.write_text("n_grid = []\n")
    assert main(["experiment", str(cfg)]) == 1
