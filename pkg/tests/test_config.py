import pytest

from gradalign.centrality import CentralityKind
from gradalign.config import ConfigError, RunConfig, format_config, load_config, parse_config


def test_defaults():
    cfg = parse_config("")
    assert cfg == RunConfig()
    assert cfg.match.iterations == 10 and cfg.train.epochs == 200 and cfg.qs == (1, 5, 10)


def test_parse_values():
    cfg = parse_config("""
        # comment
        centrality.kind = katz
        augment.width = 0.5   # trailing comment
        train.epochs = 3
        match.lambda = 0.25
        anchors.t = 0.05
        metrics.q = 1, 3
        bench.seeds = 7,8
    """)
    assert cfg.centrality.kind is CentralityKind.KATZ
    assert cfg.augment.centrality.kind is CentralityKind.KATZ
    assert cfg.augment.width == 0.5 and cfg.augment.target_dim is None
    assert cfg.train.epochs == 3 and cfg.match.lam == 0.25
    assert cfg.anchor_fraction == 0.05 and cfg.qs == (1, 3) and cfg.bench.seeds == (7, 8)


@pytest.mark.parametrize("text", [
    "nonsense",
    "foo.bar = 1",
    "train.epochs = many",
    "anchors.t = 2",
    "centrality.kind = pagerank",
    "match.iterations = 0",
    "augment.enabled = maybe",
])
def test_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_format_round_trip(tmp_path):
    cfg = parse_config("centrality.kind = katz\naugment.target_dim = 7\naugment.enabled = false\n")
    path = tmp_path / "run.cfg"
    path.write_text(format_config(cfg))
    assert load_config(path) == cfg
