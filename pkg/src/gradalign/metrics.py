"""Alignment accuracy and Precision@q."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .graph import Mapping


class MetricError(ValueError):
    pass


def _evaluated_pairs(ground_truth, seeds) -> list[tuple[int, int]]:
    seeds = set(map(tuple, seeds))
    pairs = [tuple(p) for p in ground_truth if tuple(p) not in seeds]
    if not pairs:
        raise MetricError("metric undefined: no ground-truth pairs left to evaluate")
    return pairs


def accuracy(mapping: Mapping | Iterable[tuple[int, int]], ground_truth: Sequence[tuple[int, int]],
             seeds: Sequence[tuple[int, int]] = ()) -> float:
    """Fraction of non-seed ground-truth pairs present in the mapping."""
    pairs = _evaluated_pairs(ground_truth, seeds)
    predicted = mapping.as_dict() if isinstance(mapping, Mapping) else dict(mapping)
    hits = sum(1 for u, v in pairs if predicted.get(u) == v)
    return hits / len(pairs)


def true_ranks(s: np.ndarray, pairs: Sequence[tuple[int, int]]) -> np.ndarray:
    """0-based rank of the true target in its source row (ties favour smaller columns)."""
    u = np.array([p[0] for p in pairs], dtype=np.int64)
    v = np.array([p[1] for p in pairs], dtype=np.int64)
    rows = s[u]
    true = rows[np.arange(len(u)), v][:, None]
    cols = np.arange(s.shape[1])[None, :]
    ahead = (rows > true) | ((rows == true) & (cols < v[:, None]))
    return ahead.sum(axis=1)


def precision_at_q(s: np.ndarray, ground_truth: Sequence[tuple[int, int]], q: int,
                   seeds: Sequence[tuple[int, int]] = ()) -> float:
    """Fraction of non-seed source nodes whose true target is in the row's top ``q``."""
    if q < 1:
        raise MetricError(f"q must be >= 1, got {q}")
    if q > s.shape[1]:
        raise MetricError(f"q={q} exceeds the number of target nodes {s.shape[1]}")
    pairs = _evaluated_pairs(ground_truth, seeds)
    return float(np.mean(true_ranks(s, pairs) < q))


@dataclass
class EvalReport:
    accuracy: float
    precision_at: dict[int, float] = field(default_factory=dict)
    matched_count: int = 0

    def to_dict(self) -> dict:
        out = {"accuracy": self.accuracy}
        for q in sorted(self.precision_at):
            out[f"precision@{q}"] = self.precision_at[q]
        out["matched_count"] = self.matched_count
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def evaluate(mapping: Mapping, ground_truth, s_final: np.ndarray | None = None,
             qs: Sequence[int] = (1, 5, 10), seeds=()) -> EvalReport:
    """Accuracy plus Precision@q for every ``q`` that fits the target graph."""
    report = EvalReport(accuracy(mapping, ground_truth, seeds), matched_count=len(mapping))
    if s_final is not None:
        for q in qs:
            if q <= s_final.shape[1]:
                report.precision_at[q] = precision_at_q(s_final, ground_truth, q, seeds)
    return report
