"""Gradual node matching driven by embedding and ACN similarity."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import _kernels
from .graph import AlignmentProblem, GraphInputError, Mapping
from .similarity import ACNCounter, acn_similarity, combined_similarity, embedding_similarity


@dataclass(frozen=True)
class MatchConfig:
    iterations: int = 10
    p: float = 2.0
    lam: float = 1.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if not self.p > 0:
            raise ValueError(f"p must be positive, got {self.p}")
        if self.lam < 0:
            raise ValueError(f"lambda must be non-negative, got {self.lam}")


@dataclass
class ChannelEmbeddings:
    """Layer embeddings of both graphs; the original-attribute channel is optional."""

    aug_s: list[np.ndarray]
    aug_t: list[np.ndarray]
    orig_s: list[np.ndarray] | None = None
    orig_t: list[np.ndarray] | None = None

    def similarity(self, lam: float) -> np.ndarray:
        return embedding_similarity(self.orig_s, self.orig_t, self.aug_s, self.aug_t, lam)


@dataclass
class MatchResult:
    mapping: Mapping
    acn: np.ndarray
    final_similarity: np.ndarray
    trace: list[dict] = field(default_factory=list)


def greedy_commit(s: np.ndarray, budget: int, matched_s: Iterable[int] = (),
                  matched_t: Iterable[int] = ()) -> list[tuple[int, int]]:
    """Commit up to ``budget`` pairs by repeatedly taking the global maximum.

    Already-matched rows and columns are excluded, and each committed pair
    removes its row and column. Ties go to the smaller ``u``, then the smaller
    ``v``.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    s = np.asarray(s, dtype=np.float64)
    rows = np.setdiff1d(np.arange(s.shape[0]), np.fromiter(matched_s, dtype=np.int64))
    cols = np.setdiff1d(np.arange(s.shape[1]), np.fromiter(matched_t, dtype=np.int64))
    if not len(rows) or not len(cols):
        return []
    r, c = _kernels.greedy_select(np.ascontiguousarray(s[np.ix_(rows, cols)]), int(budget))
    return list(zip(rows[r].tolist(), cols[c].tolist()))


def match(problem: AlignmentProblem, s_emb: np.ndarray, cfg: MatchConfig,
          on_iteration: Callable[[dict], None] | None = None) -> MatchResult:
    """Run the gradual matching loop on a precomputed embedding similarity."""
    g_s, g_t = problem.source, problem.target
    n_s, n_t = g_s.node_count, g_t.node_count
    if s_emb.shape != (n_s, n_t):
        raise GraphInputError(f"similarity shape {s_emb.shape} != ({n_s}, {n_t})")
    mapping = Mapping()
    for u, v in problem.seed_anchors:
        mapping.add(u, v, iteration=0)
    counter = ACNCounter(g_s, g_t)
    counter.add_pairs(problem.seed_anchors)
    target_size = min(n_s, n_t)
    remaining = target_size - len(mapping)
    budget = math.ceil(remaining / cfg.iterations) if remaining > 0 else 0
    row_free = np.ones(n_s, dtype=bool)
    col_free = np.ones(n_t, dtype=bool)
    for u, v in problem.seed_anchors:
        row_free[u] = col_free[v] = False
    trace = []
    iteration = 0
    while len(mapping) < target_size:
        iteration += 1
        rows = np.flatnonzero(row_free)
        cols = np.flatnonzero(col_free)
        ix = np.ix_(rows, cols)
        sub = combined_similarity(s_emb[ix], acn_similarity(counter.counts[ix], cfg.p))
        r, c = _kernels.greedy_select(np.ascontiguousarray(sub), min(budget, target_size - len(mapping)))
        new = list(zip(rows[r].tolist(), cols[c].tolist()))
        for u, v in new:
            mapping.add(u, v, iteration=iteration)
            row_free[u] = col_free[v] = False
        counter.add_pairs(new)
        vals = sub[r, c]
        record = {
            "iteration": iteration,
            "committed": len(new),
            "matched": len(mapping),
            "min_similarity": float(vals.min()),
            "max_similarity": float(vals.max()),
        }
        trace.append(record)
        if on_iteration is not None:
            on_iteration(record)
    final = combined_similarity(s_emb, acn_similarity(counter.counts, cfg.p))
    return MatchResult(mapping, counter.counts, final, trace)


def gradual_align(problem: AlignmentProblem, emb: ChannelEmbeddings, cfg: MatchConfig) -> Mapping:
    """One-to-one mapping covering the smaller graph."""
    return match(problem, emb.similarity(cfg.lam), cfg).mapping


def committed_by_iteration(mapping: Mapping) -> dict[int, list[tuple[int, int]]]:
    out: dict[int, list[tuple[int, int]]] = {}
    for pair, it in zip(mapping.pairs, mapping.iteration):
        out.setdefault(it, []).append(pair)
    return out

