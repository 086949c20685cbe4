"""Run configuration and its flat ``section.key = value`` file format.

Example::

    # comments and blank lines are ignored
    centrality.kind = katz
    augment.target_dim = 20
    train.epochs = 200
    match.p = 2
    anchors.t = 0.05
    metrics.q = 1,5,10
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

from .augment import AugmentConfig
from .centrality import CentralityConfig
from .encoder import TrainConfig
from .matcher import MatchConfig


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class BenchConfig:
    """Synthetic protocol: ER source graph, noisy shuffled copy as target."""

    n: int = 500
    edge_prob: float = 0.02
    attr_dim: int = 0
    edge_removal_rate: float = 0.1
    attr_flip_rate: float = 0.1
    seeds: tuple[int, ...] = (0, 1, 2, 3, 4)


@dataclass(frozen=True)
class RunConfig:
    centrality: CentralityConfig = field(default_factory=CentralityConfig)
    augment: AugmentConfig = field(default_factory=AugmentConfig)
    augment_enabled: bool = True
    train: TrainConfig = field(default_factory=TrainConfig)
    match: MatchConfig = field(default_factory=MatchConfig)
    anchor_fraction: float = 0.0
    anchor_seed: int = 0
    qs: tuple[int, ...] = (1, 5, 10)
    bench: BenchConfig = field(default_factory=BenchConfig)

    def __post_init__(self):
        if not 0.0 <= self.anchor_fraction <= 1.0:
            raise ConfigError(f"anchors.t must be in [0, 1], got {self.anchor_fraction}")
        if any(q < 1 for q in self.qs):
            raise ConfigError("metrics.q values must be >= 1")
        # keep the augmentation's centrality in sync with the top-level one
        if self.augment.centrality != self.centrality:
            object.__setattr__(self, "augment", dataclasses.replace(self.augment, centrality=self.centrality))

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)


def _parse_bool(text: str) -> bool:
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _optional(conv):
    def parse(text):
        return None if text.lower() in ("", "none", "auto") else conv(text)
    return parse


def _int_tuple(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x)


# key -> (section attribute, field name, parser)
_KEYS = {
    "centrality.kind": ("centrality", "kind", str),
    "centrality.k": ("centrality", "k", int),
    "centrality.alpha": ("centrality", "alpha", _optional(float)),
    "centrality.beta": ("centrality", "beta", float),
    "centrality.tol": ("centrality", "tol", float),
    "centrality.max_iter": ("centrality", "max_iter", int),
    "augment.width": ("augment", "width", _optional(float)),
    "augment.target_dim": ("augment", "target_dim", _optional(int)),
    "augment.enabled": (None, "augment_enabled", _parse_bool),
    "train.num_layers": ("train", "num_layers", int),
    "train.hidden_dim": ("train", "hidden_dim", int),
    "train.learning_rate": ("train", "learning_rate", float),
    "train.epochs": ("train", "epochs", int),
    "train.adam_beta1": ("train", "adam_beta1", float),
    "train.adam_beta2": ("train", "adam_beta2", float),
    "train.adam_eps": ("train", "adam_eps", float),
    "train.rng_seed": ("train", "rng_seed", int),
    "train.activation": ("train", "activation", str),
    "match.iterations": ("match", "iterations", int),
    "match.p": ("match", "p", float),
    "match.lambda": ("match", "lam", float),
    "match.rng_seed": ("match", "rng_seed", int),
    "anchors.t": (None, "anchor_fraction", float),
    "anchors.rng_seed": (None, "anchor_seed", int),
    "metrics.q": (None, "qs", _int_tuple),
    "bench.n": ("bench", "n", int),
    "bench.edge_prob": ("bench", "edge_prob", float),
    "bench.attr_dim": ("bench", "attr_dim", int),
    "bench.edge_removal_rate": ("bench", "edge_removal_rate", float),
    "bench.attr_flip_rate": ("bench", "attr_flip_rate", float),
    "bench.seeds": ("bench", "seeds", _int_tuple),
}


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    """Parse ``key = value`` lines on top of ``base`` (defaults when omitted)."""
    sections: dict[str, dict] = {}
    top: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        section, name, conv = _KEYS[key]
        try:
            parsed = conv(value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from None
        (top if section is None else sections.setdefault(section, {}))[name] = parsed
    return build_config(sections, top, base)


def build_config(sections: dict[str, dict], top: dict, base: RunConfig | None = None) -> RunConfig:
    base = base or RunConfig()
    aug_changes = dict(sections.get("augment", {}))
    # width and target_dim are exclusive; setting one clears the other
    if "width" in aug_changes and "target_dim" not in aug_changes:
        aug_changes["target_dim"] = None
    if "target_dim" in aug_changes and "width" not in aug_changes:
        aug_changes["width"] = None
    try:
        cent = dataclasses.replace(base.centrality, **sections.get("centrality", {}))
        return dataclasses.replace(
            base,
            centrality=cent,
            augment=dataclasses.replace(base.augment, centrality=cent, **aug_changes),
            train=dataclasses.replace(base.train, **sections.get("train", {})),
            match=dataclasses.replace(base.match, **sections.get("match", {})),
            bench=dataclasses.replace(base.bench, **sections.get("bench", {})),
            **top,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str | Path, base: RunConfig | None = None) -> RunConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"), base)


def config_to_dict(cfg: RunConfig) -> dict:
    """Flat ``{dotted key: value}`` view, the inverse of :func:`parse_config`."""
    out = {}
    for key, (section, name, _) in _KEYS.items():
        obj = cfg if section is None else getattr(cfg, section)
        value = getattr(obj, name)
        if hasattr(value, "value"):
            value = value.value
        if isinstance(value, tuple):
            value = ",".join(str(x) for x in value)
        out[key] = value
    return out


def format_config(cfg: RunConfig) -> str:
    lines = []
    for key, value in config_to_dict(cfg).items():
        if value is None:
            value = "none"
        elif isinstance(value, bool):
            value = str(value).lower()
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"
