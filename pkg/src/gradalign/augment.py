"""Centrality-based attribute augmentation via equal-width binning."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .centrality import (
    CentralityConfig,
    CentralityKind,
    compute_centrality,
    spectral_radius_estimate,
)
from .graph import AlignmentProblem, Graph


class AugmentConfigError(ValueError):
    pass


@dataclass(frozen=True)
class AugmentConfig:
    """Exactly one of ``width`` and ``target_dim`` must be set."""

    width: float | None = None
    target_dim: int | None = 10
    centrality: CentralityConfig = field(default_factory=CentralityConfig)

    def __post_init__(self):
        if (self.width is None) == (self.target_dim is None):
            raise AugmentConfigError("give exactly one of width and target_dim")
        if self.width is not None and not self.width > 0:
            raise AugmentConfigError(f"width must be positive, got {self.width}")
        if self.target_dim is not None and self.target_dim < 1:
            raise AugmentConfigError(f"target_dim must be >= 1, got {self.target_dim}")


@dataclass(frozen=True)
class AugmentedAttributes:
    source: np.ndarray
    target: np.ndarray
    width: float
    bins: np.ndarray  # retained 1-based bin indices, ascending

    @property
    def dim(self) -> int:
        return len(self.bins)

    @property
    def bin_edges(self) -> np.ndarray:
        """Upper boundary of every retained bin; bin ``b`` covers ``((b-1)w, bw]``."""
        return self.bins * self.width


def _ceil_ratio(c: np.ndarray, w: float) -> np.ndarray:
    q = np.asarray(c, dtype=np.float64) / w
    # snap ratios that are integers up to rounding, so c = k*w lands in bin k
    r = np.round(q)
    q = np.where(np.abs(q - r) <= 1e-9 * np.maximum(1.0, np.abs(q)), r, q)
    return np.ceil(q).astype(np.int64)


def bin_count(c_max: float, w: float) -> int:
    return max(1, int(_ceil_ratio(np.array([c_max]), w)[0]))


def bin_assign(c: np.ndarray, w: float, c_max: float) -> np.ndarray:
    """1-based bin of each score: ``ceil(c / w)`` clamped to ``[1, ceil(c_max / w)]``."""
    if not w > 0:
        raise AugmentConfigError(f"width must be positive, got {w}")
    d = bin_count(c_max, w)
    return np.clip(_ceil_ratio(c, w), 1, d)


def one_hot(bins: np.ndarray, retained: np.ndarray) -> np.ndarray:
    """One-hot rows over the retained bins (each value of ``bins`` must be retained)."""
    if not np.isin(bins, retained).all():
        raise AugmentConfigError("bin index outside the retained set")
    col = np.searchsorted(retained, bins)
    out = np.zeros((len(bins), len(retained)))
    out[np.arange(len(bins)), col] = 1.0
    return out


def encode_pair(c_s: np.ndarray, c_t: np.ndarray, width: float | None = None,
                target_dim: int | None = None) -> AugmentedAttributes:
    """Bin both centrality vectors on a shared grid and drop bins neither side uses."""
    c_max = float(max(np.max(c_s, initial=0.0), np.max(c_t, initial=0.0)))
    if width is None:
        if target_dim is None:
            raise AugmentConfigError("give exactly one of width and target_dim")
        width = c_max / target_dim if c_max > 0 else 1.0
    b_s = bin_assign(c_s, width, c_max)
    b_t = bin_assign(c_t, width, c_max)
    if target_dim is not None:
        b_s = np.minimum(b_s, target_dim)
        b_t = np.minimum(b_t, target_dim)
    retained = np.unique(np.concatenate([b_s, b_t]))
    if len(retained) == 0:
        retained = np.array([1], dtype=np.int64)
    return AugmentedAttributes(one_hot(b_s, retained), one_hot(b_t, retained), float(width), retained)


def shared_centrality_config(g_s: Graph, g_t: Graph, cfg: CentralityConfig) -> CentralityConfig:
    """Pin a default Katz alpha to one value valid for both graphs."""
    if cfg.kind is CentralityKind.KATZ and cfg.alpha is None:
        rho = max(spectral_radius_estimate(g_s), spectral_radius_estimate(g_t))
        alpha = 0.1 if rho == 0.0 else min(0.9 / rho, 0.1)
        return CentralityConfig(cfg.kind, cfg.k, alpha, cfg.beta, cfg.tol, cfg.max_iter)
    return cfg


def augment(problem: AlignmentProblem, cfg: AugmentConfig) -> AugmentedAttributes:
    ccfg = shared_centrality_config(problem.source, problem.target, cfg.centrality)
    c_s = compute_centrality(problem.source, ccfg)
    c_t = compute_centrality(problem.target, ccfg)
    return encode_pair(c_s, c_t, cfg.width, cfg.target_dim)


def bin_indices(attrs: AugmentedAttributes) -> tuple[np.ndarray, np.ndarray]:
    """Recover the 1-based bin index of every row."""
    return attrs.bins[np.argmax(attrs.source, axis=1)], attrs.bins[np.argmax(attrs.target, axis=1)]


def ones_attributes(n: int) -> np.ndarray:
    """The featureless all-ones input used when augmentation is disabled."""
    return np.ones((n, 1))
