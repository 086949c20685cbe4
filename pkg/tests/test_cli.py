import json

import numpy as np
import pytest

from gradalign.cli import main
from gradalign.dataio import load_edge_list, load_pairs, save_attributes, save_edge_list
from gradalign.synthetic import erdos_renyi

FAST = ["--set", "train.epochs=20", "--set", "train.hidden_dim=16"]


@pytest.fixture
def graph_file(tmp_path):
    path = tmp_path / "g.txt"
    save_edge_list(erdos_renyi(60, 0.1, 2), path)
    return path


def test_perturb_align_eval(tmp_path, graph_file, capsys):
    t, gt = tmp_path / "t.txt", tmp_path / "gt.tsv"
    assert main(["perturb", "--input", str(graph_file), "-o", str(t), "--ground-truth", str(gt),
                 "--edge-removal", "0", "--attr-flip", "0", "--seed", "4"]) == 0
    mapping, metrics, trace = tmp_path / "m.tsv", tmp_path / "m.json", tmp_path / "trace.jsonl"
    assert main(["align", "--source", str(graph_file), "--target", str(t), "--ground-truth", str(gt),
                 "-o", str(mapping), "--metrics", str(metrics), "--trace", str(trace)] + FAST) == 0
    report = json.loads(metrics.read_text())
    assert set(report) == {"accuracy", "precision@1", "precision@5", "precision@10", "matched_count"}
    assert report["matched_count"] == 60
    records = [json.loads(line) for line in trace.read_text().splitlines()]
    assert [r["iteration"] for r in records] == list(range(1, len(records) + 1))
    assert records[-1]["matched"] == 60
    assert len(mapping.read_text().splitlines()) == 60

    capsys.readouterr()
    assert main(["eval", "--mapping", str(gt), "--ground-truth", str(gt)]) == 0
    assert json.loads(capsys.readouterr().out)["accuracy"] == 1.0


def test_perturb_is_deterministic(tmp_path, graph_file):
    outs = []
    for k in range(2):
        t, gt = tmp_path / f"t{k}.txt", tmp_path / f"gt{k}.tsv"
        assert main(["perturb", "--input", str(graph_file), "-o", str(t), "--ground-truth", str(gt),
                     "--seed", "7"]) == 0
        outs.append((t.read_bytes(), gt.read_bytes()))
    assert outs[0] == outs[1]
    g, _ = load_edge_list(graph_file)
    noisy, _ = load_edge_list(tmp_path / "t0.txt")
    assert noisy.edge_count == g.edge_count - int(0.1 * g.edge_count)


def test_perturb_with_attributes(tmp_path, graph_file):
    attrs = tmp_path / "x.csv"
    save_attributes((np.random.default_rng(0).random((60, 5)) < 0.5).astype(float), attrs)
    out_attrs = tmp_path / "y.csv"
    args = ["perturb", "--input", str(graph_file), "--attrs", str(attrs), "-o", str(tmp_path / "t.txt"),
            "--ground-truth", str(tmp_path / "gt.tsv")]
    assert main(args) == 2  # attributes need an output path
    assert main(args + ["--output-attrs", str(out_attrs)]) == 0
    assert len(out_attrs.read_text().splitlines()) == 60


def test_align_with_string_ids_and_anchors(tmp_path, capsys):
    src = tmp_path / "s.txt"
    src.write_text("a b\nb c\nc d\nd a\na c\n")
    tgt = tmp_path / "t.txt"
    tgt.write_text("w x\nx y\ny z\nz w\nw y\n")
    gt = tmp_path / "gt.tsv"
    gt.write_text("a\tw\nb\tx\nc\ty\nd\tz\n")
    anchors = tmp_path / "an.tsv"
    anchors.write_text("a\tw\n")
    out = tmp_path / "m.tsv"
    assert main(["align", "--source", str(src), "--target", str(tgt), "--ground-truth", str(gt),
                 "--anchors", str(anchors), "-o", str(out)] + FAST) == 0
    pairs = [line.split("\t") for line in out.read_text().splitlines()]
    assert pairs[0] == ["a", "w"] and len(pairs) == 4
    assert "accuracy" in json.loads(capsys.readouterr().out)


def test_bench_rows(tmp_path, capsys):
    out = tmp_path / "bench.json"
    assert main(["bench", "--n", "40", "--seeds", "3,1", "--output", str(out)] + FAST) == 0
    table = capsys.readouterr().out.splitlines()
    assert [row.split("\t")[0] for row in table] == ["seed", "1", "3", "mean"]
    data = json.loads(out.read_text())
    assert [r["seed"] for r in data["runs"]] == [1, 3]


def test_gradcheck_exit_zero(capsys):
    assert main(["gradcheck", "--seeds", "2", "--trials", "10"]) == 0
    assert "bound check eps=1" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["align", "--source", "missing.txt", "--target", "missing.txt", "-o", "x.tsv"],
    ["eval", "--mapping", "missing.tsv", "--ground-truth", "missing.tsv"],
    ["bench", "--bogus-flag"],
    ["frobnicate"],
])
def test_errors_exit_nonzero(argv, capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) != 0
    assert capsys.readouterr().err.strip()


def test_bad_config_key(tmp_path, graph_file, capsys):
    assert main(["align", "--source", str(graph_file), "--target", str(graph_file), "-o",
                 str(tmp_path / "m.tsv"), "--set", "train.nope=1"]) == 2
    assert "unknown key" in capsys.readouterr().err


def test_mapping_pairs_readable(tmp_path, graph_file):
    out = tmp_path / "m.tsv"
    assert main(["align", "--source", str(graph_file), "--target", str(graph_file), "-o", str(out)] + FAST) == 0
    _, ids = load_edge_list(graph_file)
    assert len(load_pairs(out, ids, ids)) == 60
