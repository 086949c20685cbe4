"""k-hop and Katz node centrality."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph


class CentralityConfigError(ValueError):
    pass


class KatzConvergenceError(RuntimeError):
    pass


class CentralityKind(str, enum.Enum):
    KHOP = "khop"
    KATZ = "katz"


@dataclass(frozen=True)
class CentralityConfig:
    """Centrality settings.

    For Katz, ``alpha=None`` selects ``min(0.9 / rho, 0.1)`` per graph where
    ``rho`` is the power-iteration estimate of the adjacency spectral radius.
    """

    kind: CentralityKind = CentralityKind.KHOP
    k: int = 1
    alpha: float | None = None
    beta: float = 1.0
    tol: float = 1e-10
    max_iter: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "kind", CentralityKind(self.kind))
        if self.kind is CentralityKind.KHOP:
            if self.k < 1:
                raise CentralityConfigError(f"k-hop radius must be >= 1, got {self.k}")
            if self.alpha is not None and self.alpha < 1:
                raise CentralityConfigError(f"k-hop penalty alpha must be >= 1, got {self.alpha}")
        else:
            if self.alpha is not None and self.alpha <= 0:
                raise CentralityConfigError(f"Katz alpha must be positive, got {self.alpha}")
            if self.beta <= 0:
                raise CentralityConfigError(f"Katz beta must be positive, got {self.beta}")
            if self.tol <= 0 or self.max_iter < 1:
                raise CentralityConfigError("Katz tol must be > 0 and max_iter >= 1")


def khop_centrality(g: Graph, k: int, alpha: float = 2.0) -> np.ndarray:
    """Sum over ``l = 1..k`` of ``n_l(i) / alpha**(l-1)``.

    ``n_l(i)`` counts the nodes other than ``i`` within ``l`` hops, so ``k=1``
    is exactly the degree.
    """
    if k < 1:
        raise CentralityConfigError(f"k-hop radius must be >= 1, got {k}")
    if alpha < 1:
        raise CentralityConfigError(f"k-hop penalty alpha must be >= 1, got {alpha}")
    counts = _kernels.khop_layer_counts(g.indptr.astype(np.int64), g.indices.astype(np.int64), int(k))
    weights = float(alpha) ** -np.arange(k, dtype=np.float64)
    return counts.astype(np.float64) @ weights


def spectral_radius_estimate(g: Graph, iters: int = 200) -> float:
    """Power-iteration estimate of the largest adjacency eigenvalue magnitude.

    Uses the norm ratio ``|A x| / |x|`` starting from the all-ones vector; for a
    symmetric non-negative matrix this is non-decreasing and bounded by the
    spectral radius, and it is not fooled by the ``+-rho`` pair of bipartite
    graphs.
    """
    if iters < 1:
        raise ValueError("iters must be >= 1")
    if g.node_count == 0 or g.edge_count == 0:
        return 0.0
    a = g.adjacency
    x = np.ones(g.node_count) / np.sqrt(g.node_count)
    est = 0.0
    for _ in range(iters):
        y = a @ x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return 0.0
        prev, est = est, float(norm)
        x = y / norm
        if abs(est - prev) <= 1e-13 * est:
            break
    return est


def default_katz_alpha(g: Graph) -> float:
    rho = spectral_radius_estimate(g)
    return 0.1 if rho == 0.0 else min(0.9 / rho, 0.1)


def katz_centrality(
    g: Graph,
    alpha: float | None = None,
    beta: float = 1.0,
    tol: float = 1e-10,
    max_iter: int = 1000,
) -> np.ndarray:
    """Fixed point of ``c = alpha * A c + beta`` by Jacobi iteration from ``beta * 1``.

    Raises
    ------
    KatzConvergenceError
        If ``alpha * rho >= 1`` for the estimated spectral radius, or the
        iteration does not settle within ``max_iter`` steps.
    """
    if alpha is None:
        alpha = default_katz_alpha(g)
    if alpha <= 0 or beta <= 0:
        raise CentralityConfigError("Katz alpha and beta must be positive")
    rho = spectral_radius_estimate(g)
    if alpha * rho >= 1.0:
        raise KatzConvergenceError(
            f"Katz iteration diverges: alpha={alpha:g} * spectral radius estimate {rho:.6g} >= 1"
        )
    a = g.adjacency
    c = np.full(g.node_count, float(beta))
    for _ in range(max_iter):
        nxt = alpha * (a @ c) + beta
        if not np.all(np.isfinite(nxt)):
            break
        delta = np.max(np.abs(nxt - c)) if len(c) else 0.0
        c = nxt
        if delta <= tol:
            return c
    raise KatzConvergenceError(
        f"Katz iteration did not converge in {max_iter} steps "
        f"(alpha={alpha:g}, spectral radius estimate {rho:.6g})"
    )


def compute_centrality(g: Graph, cfg: CentralityConfig) -> np.ndarray:
    if cfg.kind is CentralityKind.KHOP:
        return khop_centrality(g, cfg.k, 2.0 if cfg.alpha is None else cfg.alpha)
    return katz_centrality(g, cfg.alpha, cfg.beta, cfg.tol, cfg.max_iter)
