"""GIN encoder trained by a layer-wise adjacency reconstruction loss.

Everything is plain numpy with hand-written backpropagation. One parameter
set is shared by the source and target graphs; the pipeline trains one set
per attribute channel.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .graph import Graph, build_graph, normalized_adjacency

CHECKPOINT_VERSION = 1
ACTIVATIONS = ("tanh", "relu", "identity")


class ShapeError(ValueError):
    pass


class TrainingDivergedError(RuntimeError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    num_layers: int = 2
    hidden_dim: int = 128
    learning_rate: float = 0.005
    epochs: int = 200
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    rng_seed: int = 0
    activation: str = "tanh"

    def __post_init__(self):
        if self.num_layers < 1 or self.hidden_dim < 1:
            raise ValueError("num_layers and hidden_dim must be >= 1")
        if self.learning_rate < 0:
            raise ValueError(f"learning_rate must be non-negative, got {self.learning_rate}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"activation must be one of {ACTIVATIONS}, got {self.activation!r}")


@dataclass
class EncoderParams:
    """Per-layer weights ``W^(l)`` (dim_in x h) and GIN self-weights ``eps``."""

    weights: list[np.ndarray]
    eps: list[float]
    activation: str = "tanh"
    loss_history: list[float] = field(default_factory=list)

    @property
    def num_layers(self) -> int:
        return len(self.weights)

    @property
    def input_dim(self) -> int:
        return self.weights[0].shape[0]

    def copy(self) -> "EncoderParams":
        return EncoderParams([w.copy() for w in self.weights], list(self.eps), self.activation,
                             list(self.loss_history))

    def save(self, path: str | Path) -> None:
        arrays = {f"w{i}": w for i, w in enumerate(self.weights)}
        meta = {"version": CHECKPOINT_VERSION, "num_layers": self.num_layers, "activation": self.activation}
        np.savez(
            path,
            meta=np.frombuffer(json.dumps(meta).encode(), dtype=np.uint8),
            eps=np.asarray(self.eps, dtype=np.float64),
            loss_history=np.asarray(self.loss_history, dtype=np.float64),
            **arrays,
        )

    @classmethod
    def load(cls, path: str | Path) -> "EncoderParams":
        with np.load(path) as data:
            meta = json.loads(data["meta"].tobytes().decode())
            if meta.get("version") != CHECKPOINT_VERSION:
                raise ValueError(f"unsupported checkpoint version {meta.get('version')}")
            weights = [data[f"w{i}"].copy() for i in range(meta["num_layers"])]
            return cls(weights, data["eps"].tolist(), meta["activation"], data["loss_history"].tolist())


def init_params(input_dim: int, cfg: TrainConfig, rng: np.random.Generator | None = None) -> EncoderParams:
    """Glorot-uniform weights, ``eps = 0``."""
    rng = np.random.default_rng(cfg.rng_seed) if rng is None else rng
    weights = []
    fan_in = input_dim
    for _ in range(cfg.num_layers):
        bound = math.sqrt(6.0 / (fan_in + cfg.hidden_dim))
        weights.append(rng.uniform(-bound, bound, size=(fan_in, cfg.hidden_dim)))
        fan_in = cfg.hidden_dim
    return EncoderParams(weights, [0.0] * cfg.num_layers, cfg.activation)


def _act(z: np.ndarray, activation: str) -> np.ndarray:
    if activation == "tanh":
        return np.tanh(z)
    if activation == "relu":
        return np.maximum(z, 0.0)
    if activation == "identity":
        return z
    raise ValueError(f"unknown activation {activation!r}")


def _forward(adj: np.ndarray, attrs: np.ndarray, params: EncoderParams, activation: str):
    hs = [attrs]
    ps, zs = [], []
    for w, eps in zip(params.weights, params.eps):
        h = hs[-1]
        p = (1.0 + eps) * h + adj @ h
        z = p @ w
        ps.append(p)
        zs.append(z)
        hs.append(_act(z, activation))
    return hs, ps, zs


def _check_shapes(g: Graph, attrs: np.ndarray, params: EncoderParams) -> None:
    if attrs.ndim != 2 or attrs.shape[0] != g.node_count:
        raise ShapeError(f"attributes have shape {attrs.shape}, graph has {g.node_count} nodes")
    if attrs.shape[1] != params.input_dim:
        raise ShapeError(f"attribute dim {attrs.shape[1]} != encoder input dim {params.input_dim}")


def gin_forward(g: Graph, attrs: np.ndarray, params: EncoderParams) -> list[np.ndarray]:
    """Per-layer embeddings ``H^(1)..H^(L)``.

    ``H^(l+1) = act(((1 + eps_l) I + A_norm) H^(l) W^(l))`` with ``A_norm`` the
    symmetric-normalised adjacency with self-loops and ``act`` the
    activation stored in ``params``.
    """
    attrs = np.asarray(attrs, dtype=np.float64)
    _check_shapes(g, attrs, params)
    hs, _, _ = _forward(normalized_adjacency(g), attrs, params, params.activation)
    return hs[1:]


def row_normalize(h: np.ndarray) -> np.ndarray:
    """Unit-norm rows; all-zero rows stay zero."""
    norms = np.linalg.norm(h, axis=1, keepdims=True)
    return np.divide(h, norms, out=np.zeros_like(h), where=norms > 0)


def _layer_loss(adj: np.ndarray, h: np.ndarray) -> float:
    hn = row_normalize(h)
    n = adj.shape[0]
    return float(np.sum((adj - hn @ hn.T) ** 2)) / (n * n) if n else 0.0


def reconstruction_loss(emb_s: list[np.ndarray], emb_t: list[np.ndarray], g_s: Graph, g_t: Graph) -> float:
    """``sum_graphs sum_l ||A_norm - Hn Hn^T||_F^2 / n^2`` over row-normalised embeddings."""
    total = 0.0
    for emb, g in ((emb_s, g_s), (emb_t, g_t)):
        adj = normalized_adjacency(g)
        for h in emb:
            if h.shape[0] != g.node_count:
                raise ShapeError(f"embedding has {h.shape[0]} rows, graph has {g.node_count} nodes")
            total += _layer_loss(adj, h)
    return total


def _graph_loss_and_grad(adj, attrs, params):
    n = adj.shape[0]
    activation = params.activation
    hs, ps, zs = _forward(adj, attrs, params, activation)
    L = params.num_layers
    loss = 0.0
    g_h = [None] * (L + 1)
    for l in range(1, L + 1):
        h = hs[l]
        norms = np.linalg.norm(h, axis=1, keepdims=True)
        hn = np.divide(h, norms, out=np.zeros_like(h), where=norms > 0)
        resid = hn @ hn.T - adj
        loss += float(np.sum(resid ** 2)) / (n * n)
        g_hn = (4.0 / (n * n)) * (resid @ hn)
        radial = np.sum(hn * g_hn, axis=1, keepdims=True)
        g_h[l] = np.divide(g_hn - hn * radial, norms, out=np.zeros_like(h), where=norms > 0)
    g_w = [None] * L
    g_eps = [0.0] * L
    for l in range(L, 0, -1):
        if activation == "tanh":
            gz = g_h[l] * (1.0 - hs[l] ** 2)
        elif activation == "relu":
            gz = g_h[l] * (zs[l - 1] > 0)
        else:
            gz = g_h[l]
        w = params.weights[l - 1]
        g_w[l - 1] = ps[l - 1].T @ gz
        g_eps[l - 1] = float(np.sum((hs[l - 1] @ w) * gz))
        if l > 1:
            g_p = gz @ w.T
            g_h[l - 1] = g_h[l - 1] + (1.0 + params.eps[l - 1]) * g_p + adj @ g_p
    return loss, g_w, g_eps, zs


def loss_and_grad(g_s: Graph, g_t: Graph, attrs_s: np.ndarray, attrs_t: np.ndarray,
                  params: EncoderParams):
    """Reconstruction loss over both graphs and its gradient w.r.t. weights and eps."""
    total = 0.0
    g_w = [np.zeros_like(w) for w in params.weights]
    g_eps = [0.0] * params.num_layers
    for g, x in ((g_s, attrs_s), (g_t, attrs_t)):
        loss, gw, ge, _ = _graph_loss_and_grad(normalized_adjacency(g), x, params)
        total += loss
        for i in range(params.num_layers):
            g_w[i] += gw[i]
            g_eps[i] += ge[i]
    return total, g_w, g_eps


def train(g_s: Graph, g_t: Graph, attrs_s: np.ndarray, attrs_t: np.ndarray, cfg: TrainConfig,
          params: EncoderParams | None = None) -> EncoderParams:
    """Full-batch Adam on the reconstruction loss; weights shared by both graphs.

    ``eps`` stays fixed (GIN with a constant self-weight). The loss before each
    update is recorded in ``loss_history`` with the loss after the final update
    appended, so ``loss_history[0]`` is the initial loss.
    """
    attrs_s = np.asarray(attrs_s, dtype=np.float64)
    attrs_t = np.asarray(attrs_t, dtype=np.float64)
    if attrs_s.shape[1] != attrs_t.shape[1]:
        raise ShapeError(f"attribute dims differ: {attrs_s.shape[1]} vs {attrs_t.shape[1]}")
    params = init_params(attrs_s.shape[1], cfg) if params is None else params.copy()
    _check_shapes(g_s, attrs_s, params)
    _check_shapes(g_t, attrs_t, params)
    m = [np.zeros_like(w) for w in params.weights]
    v = [np.zeros_like(w) for w in params.weights]
    b1, b2 = cfg.adam_beta1, cfg.adam_beta2
    history = []
    for epoch in range(cfg.epochs):
        loss, grads, _ = loss_and_grad(g_s, g_t, attrs_s, attrs_t, params)
        if not math.isfinite(loss):
            raise TrainingDivergedError(f"non-finite loss at epoch {epoch}")
        history.append(loss)
        t = epoch + 1
        for i, gw in enumerate(grads):
            m[i] = b1 * m[i] + (1 - b1) * gw
            v[i] = b2 * v[i] + (1 - b2) * gw * gw
            m_hat = m[i] / (1 - b1 ** t)
            v_hat = v[i] / (1 - b2 ** t)
            params.weights[i] = params.weights[i] - cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.adam_eps)
    final = reconstruction_loss(gin_forward(g_s, attrs_s, params), gin_forward(g_t, attrs_t, params), g_s, g_t)
    if not math.isfinite(final):
        raise TrainingDivergedError(f"non-finite loss at epoch {cfg.epochs}")
    history.append(final)
    params.loss_history = history
    return params


# --- gradient verification -------------------------------------------------

def _random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return build_graph(n, np.stack([iu[keep], ju[keep]], axis=1))


def _min_abs_preactivation(g_s, g_t, x_s, x_t, params) -> float:
    out = np.inf
    for g, x in ((g_s, x_s), (g_t, x_t)):
        _, _, zs = _forward(normalized_adjacency(g), x, params, "relu")
        out = min(out, min(float(np.min(np.abs(z))) for z in zs))
    return out


def gradient_check(cfg: TrainConfig | None = None, trial_seed: int = 0, step: float = 1e-5,
                   params: EncoderParams | None = None, kink_margin: float = 1e-3) -> float:
    """Max relative error between analytic and central-difference gradients.

    Builds a random pair of graphs with at most 8 nodes and random attributes,
    and random parameters (or ``params``) using ``cfg.activation``. With relu,
    weights are nudged until every pre-activation is at least ``kink_margin``
    away from zero so the finite differences never straddle a kink. Relative
    error is ``|a - f| / max(|a|, |f|, 1e-6)`` over every weight and every eps;
    the floor sits above the ~1e-11 round-off of the central difference so
    exactly-zero gradients do not count as failures.
    """
    cfg = cfg or TrainConfig(num_layers=2, hidden_dim=6)
    rng = np.random.default_rng(trial_seed)
    n_s, n_t = rng.integers(3, 9, size=2)
    g_s = _random_graph(rng, int(n_s), 0.4)
    g_t = _random_graph(rng, int(n_t), 0.4)
    d = int(rng.integers(1, 5))
    x_s = rng.normal(size=(n_s, d))
    x_t = rng.normal(size=(n_t, d))
    if params is None:
        params = init_params(d, cfg, rng)
        params.eps = rng.uniform(-0.2, 0.2, size=cfg.num_layers).tolist()
        if cfg.activation == "relu":
            for _ in range(1000):
                if _min_abs_preactivation(g_s, g_t, x_s, x_t, params) >= kink_margin:
                    break
                for w in params.weights:
                    w += rng.normal(scale=0.05, size=w.shape)
            else:
                raise RuntimeError("could not move parameters away from relu kinks")
    else:
        params = params.copy()
        if params.input_dim != d:
            x_s = rng.normal(size=(n_s, params.input_dim))
            x_t = rng.normal(size=(n_t, params.input_dim))

    def f(p: EncoderParams) -> float:
        return loss_and_grad(g_s, g_t, x_s, x_t, p)[0]

    _, g_w, g_eps = loss_and_grad(g_s, g_t, x_s, x_t, params)
    worst = 0.0
    for i, w in enumerate(params.weights):
        for idx in np.ndindex(w.shape):
            orig = w[idx]
            w[idx] = orig + step
            up = f(params)
            w[idx] = orig - step
            down = f(params)
            w[idx] = orig
            num = (up - down) / (2 * step)
            worst = max(worst, _rel_err(g_w[i][idx], num))
    for i in range(params.num_layers):
        orig = params.eps[i]
        params.eps[i] = orig + step
        up = f(params)
        params.eps[i] = orig - step
        down = f(params)
        params.eps[i] = orig
        worst = max(worst, _rel_err(g_eps[i], (up - down) / (2 * step)))
    return worst


def _rel_err(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-6)


# --- attribute-consistency bound -----------------------------------------

@dataclass
class BoundCheckResult:
    ok: bool
    trials: int
    worst_ratio: float
    first_violation: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def bound_trial(rng: np.random.Generator, epsilon: float, weight: np.ndarray | None = None) -> tuple[float, float]:
    """One ground-truth pair with a fully matched neighbourhood.

    The target graph is a random relabelling of a random source graph, so every
    neighbour of ``u`` has its counterpart among the neighbours of ``v``. Every
    matched attribute row differs by a vector of norm at most ``epsilon`` (half
    of the rows by exactly ``epsilon``). Returns ``(||h_u - h_v||, ||W||_2 * eps)``
    for the pre-activation one-layer output with mean aggregation over the
    closed neighbourhood.
    """
    n = int(rng.integers(2, 16))
    d = int(rng.integers(1, 9))
    g_s = _random_graph(rng, n, float(rng.uniform(0.1, 0.7)))
    perm = rng.permutation(n)
    u = int(rng.integers(n))
    x_s = rng.normal(size=(n, d))
    delta = rng.normal(size=(n, d))
    norms = np.linalg.norm(delta, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    scale = np.where(rng.random((n, 1)) < 0.5, 1.0, rng.random((n, 1))) * epsilon
    x_t = np.empty_like(x_s)
    x_t[perm] = x_s + delta / norms * scale
    if weight is None:
        weight = rng.normal(size=(d, int(rng.integers(1, 9))))
    # matched closed neighbourhoods, summed in the same order on both sides
    nbr_s = [u] + g_s.neighbors(u)
    nbr_t = [int(perm[j]) for j in nbr_s]
    coef = 1.0 / len(nbr_s)
    agg_s = sum(coef * x_s[j] for j in nbr_s)
    agg_t = sum(coef * x_t[j] for j in nbr_t)
    diff = float(np.linalg.norm(agg_s @ weight - agg_t @ weight))
    bound = float(np.linalg.norm(weight, 2)) * epsilon
    return diff, bound


def theorem_bound_check(epsilon: float, trials: int = 200, rng_seed: int = 0) -> BoundCheckResult:
    """Check ``||h_u - h_v||_2 <= ||W||_2 * epsilon`` on random matched pairs.

    A relative slack of 1e-12 absorbs floating-point rounding; with
    ``epsilon = 0`` both sides are computed identically and the difference is
    exactly zero.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    rng = np.random.default_rng(rng_seed)
    worst = 0.0
    for trial in range(trials):
        diff, bound = bound_trial(rng, epsilon)
        if bound > 0:
            worst = max(worst, diff / bound)
        if diff > bound * (1 + 1e-12):
            return BoundCheckResult(False, trials, worst,
                                    {"trial": trial, "difference": diff, "bound": bound})
    return BoundCheckResult(True, trials, worst)

