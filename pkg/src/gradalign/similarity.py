"""Embedding similarity, ACN counts/similarity and their combination."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _kernels
from .encoder import ShapeError, row_normalize
from .graph import Graph, Mapping


class SimilarityConfigError(ValueError):
    pass


def embedding_similarity(
    emb_s: Sequence[np.ndarray] | None,
    emb_t: Sequence[np.ndarray] | None,
    aug_emb_s: Sequence[np.ndarray],
    aug_emb_t: Sequence[np.ndarray],
    lam: float = 1.0,
) -> np.ndarray:
    """Sum of per-layer cosine similarity matrices.

    ``S = sum_l cos(H_s, H_t) + lam * sum_l cos(Hhat_s, Hhat_t)``. When the
    original-attribute channel is absent (``emb_s is None``) only the
    augmented term is used, unweighted.
    """
    if lam < 0:
        raise SimilarityConfigError(f"lambda must be non-negative, got {lam}")
    if len(aug_emb_s) != len(aug_emb_t):
        raise ShapeError(f"layer count mismatch: {len(aug_emb_s)} vs {len(aug_emb_t)}")
    aug = _layer_cosines(aug_emb_s, aug_emb_t)
    if emb_s is None or emb_t is None:
        return aug
    if len(emb_s) != len(emb_t):
        raise ShapeError(f"layer count mismatch: {len(emb_s)} vs {len(emb_t)}")
    return _layer_cosines(emb_s, emb_t) + lam * aug


def _layer_cosines(emb_s, emb_t) -> np.ndarray:
    total = None
    for hs, ht in zip(emb_s, emb_t):
        if hs.shape[1] != ht.shape[1]:
            raise ShapeError(f"embedding widths differ: {hs.shape[1]} vs {ht.shape[1]}")
        term = row_normalize(hs) @ row_normalize(ht).T
        total = term if total is None else total + term
    if total is None:
        raise ShapeError("no embedding layers given")
    return total


class ACNCounter:
    """Aligned cross-network neighbour-pair counts, maintained incrementally.

    ``counts[u, v]`` is the number of mapped pairs ``(u', v')`` with ``u'``
    adjacent to ``u`` and ``v'`` adjacent to ``v``.
    """

    def __init__(self, g_s: Graph, g_t: Graph):
        self.g_s = g_s
        self.g_t = g_t
        self.counts = np.zeros((g_s.node_count, g_t.node_count), dtype=np.int64)
        self._s = (g_s.indptr.astype(np.int64), g_s.indices.astype(np.int64))
        self._t = (g_t.indptr.astype(np.int64), g_t.indices.astype(np.int64))

    def add_pairs(self, pairs: Sequence[tuple[int, int]]) -> None:
        if not len(pairs):
            return
        arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        _kernels.acn_increment(self.counts, *self._s, *self._t, arr[:, 0].copy(), arr[:, 1].copy())


def acn_counts(g_s: Graph, g_t: Graph, mapping: Mapping | Sequence[tuple[int, int]]) -> np.ndarray:
    """ACN count matrix for a one-to-one mapping."""
    counter = ACNCounter(g_s, g_t)
    counter.add_pairs(list(mapping))
    return counter.counts


def acn_counts_matrix(g_s: Graph, g_t: Graph, mapping: Mapping | Sequence[tuple[int, int]]) -> np.ndarray:
    """Same counts as :func:`acn_counts`, via ``A_s P A_t`` with P the mapping indicator."""
    pairs = np.asarray(list(mapping), dtype=np.int64).reshape(-1, 2)
    a_s = g_s.adjacency[:, pairs[:, 0]]
    a_t = g_t.adjacency[pairs[:, 1], :]
    return np.rint((a_s @ a_t).toarray()).astype(np.int64)


def acn_similarity(counts: np.ndarray, p: float = 2.0) -> np.ndarray:
    """Smoothed ACN similarity ``(count + 1) ** p``.

    The +1 keeps an empty mapping from zeroing every score.
    """
    if not p > 0:
        raise SimilarityConfigError(f"ACN exponent p must be positive, got {p}")
    return (np.asarray(counts, dtype=np.float64) + 1.0) ** p


def combined_similarity(s_emb: np.ndarray, s_acn: np.ndarray) -> np.ndarray:
    """Element-wise product of embedding and ACN similarity."""
    if s_emb.shape != s_acn.shape:
        raise ShapeError(f"similarity shapes differ: {s_emb.shape} vs {s_acn.shape}")
    return s_emb * s_acn


def dump_similarity_csv(s: np.ndarray, path) -> None:
    """Dense CSV dump, one row per source node."""
    np.savetxt(path, s, delimiter=",", fmt="%.17g")
