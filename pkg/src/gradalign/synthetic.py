"""Synthetic graphs, noise model and anchor sampling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph, build_graph, permute_graph


class PerturbConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PerturbConfig:
    edge_removal_rate: float = 0.1
    attr_flip_rate: float = 0.1
    rng_seed: int = 0

    def __post_init__(self):
        for name in ("edge_removal_rate", "attr_flip_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate < 1.0:
                raise PerturbConfigError(f"{name} must be in [0, 1), got {rate}")


def _count(rate: float, total: int) -> int:
    # floor(rate * total), robust to products like 0.29 * 100 = 28.999999999999996
    return int(np.floor(rate * total + 1e-9))


def erdos_renyi(n: int, p: float, rng_seed: int) -> Graph:
    rng = np.random.default_rng(rng_seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return build_graph(n, np.stack([iu[keep], ju[keep]], axis=1))


def random_binary_attributes(n: int, dim: int, rng_seed: int, density: float = 0.5) -> np.ndarray:
    rng = np.random.default_rng(rng_seed)
    return (rng.random((n, dim)) < density).astype(np.float64)


def perturb(g: Graph, cfg: PerturbConfig) -> tuple[Graph, list[tuple[int, int]]]:
    """Noisy copy of ``g`` with identity ground truth.

    Removes exactly ``floor(rate * |E|)`` edges chosen uniformly without
    replacement and flips exactly ``floor(rate * n * d)`` attribute cells.
    """
    rng = np.random.default_rng(cfg.rng_seed)
    m = g.edge_count
    n_remove = _count(cfg.edge_removal_rate, m)
    keep = np.ones(m, dtype=bool)
    if n_remove:
        keep[rng.choice(m, size=n_remove, replace=False)] = False
    attrs = g.attributes
    if attrs is not None and cfg.attr_flip_rate > 0:
        if not np.isin(attrs, (0.0, 1.0)).all():
            raise PerturbConfigError("attribute flipping needs binary (0/1) attributes")
        attrs = attrs.copy()
        n_flip = _count(cfg.attr_flip_rate, attrs.size)
        if n_flip:
            cells = rng.choice(attrs.size, size=n_flip, replace=False)
            flat = attrs.reshape(-1)
            flat[cells] = 1.0 - flat[cells]
    noisy = build_graph(g.node_count, g.edges[keep], attrs)
    return noisy, [(i, i) for i in range(g.node_count)]


def shuffle_nodes(g: Graph, rng_seed: int) -> tuple[Graph, list[tuple[int, int]]]:
    """Randomly relabel nodes; returns the relabelled graph and ``(old, new)`` pairs."""
    perm = np.random.default_rng(rng_seed).permutation(g.node_count)
    return permute_graph(g, perm), [(i, int(perm[i])) for i in range(g.node_count)]


def sample_anchors(ground_truth: Sequence[tuple[int, int]], t: float, rng_seed: int) -> list[tuple[int, int]]:
    """``floor(t * |GT|)`` pairs sampled uniformly, returned in ground-truth order."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"anchor fraction must be in [0, 1], got {t}")
    k = _count(t, len(ground_truth))
    if k == 0:
        return []
    idx = np.sort(np.random.default_rng(rng_seed).choice(len(ground_truth), size=k, replace=False))
    return [tuple(ground_truth[i]) for i in idx.tolist()]
