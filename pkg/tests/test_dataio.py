import numpy as np
import pytest

from gradalign.dataio import (
    ParseError,
    load_attributes,
    load_edge_list,
    load_pairs,
    save_attributes,
    save_edge_list,
    save_pairs,
)
from gradalign.graph import build_graph
from conftest import random_graph


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_edge_list_p3_and_comments(tmp_path):
    g, ids = load_edge_list(_write(tmp_path, "a.txt", "# header\n0 1\n\n# mid\n1 2\n"))
    assert g.node_count == 3 and g.degrees.tolist() == [1, 2, 1]
    assert ids == ["0", "1", "2"]


def test_edge_list_string_ids(tmp_path):
    g, ids = load_edge_list(_write(tmp_path, "s.txt", "a b\nb c\n"))
    assert ids == ["a", "b", "c"] and g.edge_count == 2


def test_edge_list_numeric_order(tmp_path):
    _, ids = load_edge_list(_write(tmp_path, "n.txt", "10 2\n2 1\n"))
    assert ids == ["1", "2", "10"]


def test_edge_list_malformed(tmp_path):
    with pytest.raises(ParseError, match=":2:"):
        load_edge_list(_write(tmp_path, "bad.txt", "0 1\n0 1 2\n"))


def test_edge_list_round_trip(tmp_path, rng):
    for _ in range(5):
        g = random_graph(rng, 15, 0.1)  # sparse enough for isolated nodes
        path = tmp_path / "g.txt"
        save_edge_list(g, path)
        back, ids = load_edge_list(path)
        assert back.node_count == g.node_count
        assert (back.edges == g.edges).all()
        save_edge_list(back, tmp_path / "g2.txt", ids)
        assert (tmp_path / "g2.txt").read_bytes() == path.read_bytes()


def test_attributes(tmp_path):
    x = load_attributes(_write(tmp_path, "x.csv", "1,0\n0,1\n"), 2)
    np.testing.assert_array_equal(x, np.eye(2))
    assert load_attributes(_write(tmp_path, "e.csv", ""), 0).shape[0] == 0
    with pytest.raises(ParseError, match="row 2"):
        load_attributes(_write(tmp_path, "r.csv", "1,0\n1\n"), 2)
    with pytest.raises(ParseError, match="expected 3 rows"):
        load_attributes(_write(tmp_path, "c.csv", "1,0\n0,1\n"), 3)
    with pytest.raises(ParseError, match="non-numeric"):
        load_attributes(_write(tmp_path, "q.csv", "1,x\n"), 1)
    y = np.random.default_rng(0).normal(size=(4, 3))
    save_attributes(y, tmp_path / "y.csv")
    assert (load_attributes(tmp_path / "y.csv", 4) == y).all()


def test_pairs_round_trip(tmp_path):
    pairs = [(0, 2), (1, 0), (2, 1)]
    src, tgt = ["a", "b", "c"], ["x", "y", "z"]
    save_pairs(pairs, tmp_path / "p.tsv", src, tgt)
    assert (tmp_path / "p.tsv").read_text() == "a\tz\nb\tx\nc\ty\n"
    assert load_pairs(tmp_path / "p.tsv", src, tgt) == pairs
    save_pairs(pairs, tmp_path / "q.tsv")
    assert load_pairs(tmp_path / "q.tsv") == pairs
    with pytest.raises(ParseError):
        load_pairs(tmp_path / "p.tsv", src, ["x"])
    with pytest.raises(ParseError):
        load_pairs(_write(tmp_path, "bad.tsv", "1\t2\t3\n"))


def test_single_isolated_node(tmp_path):
    g = build_graph(1, [])
    save_edge_list(g, tmp_path / "one.txt")
    back, ids = load_edge_list(tmp_path / "one.txt")
    assert back.node_count == 1 and ids == ["0"]
