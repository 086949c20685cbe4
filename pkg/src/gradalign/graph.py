"""Graph, alignment-problem and mapping data model."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp


class GraphInputError(ValueError):
    """Raised for malformed graph input (bad endpoints, shapes, mappings)."""


class Graph:
    """Immutable undirected simple graph with optional node attributes.

    Node ids are the dense integers ``0..node_count-1``. Input edges may be
    duplicated, reversed or self-loops; all of these are normalised away.
    """

    __slots__ = ("node_count", "_edges", "_adj", "_attributes", "_norm_adj", "_degrees")

    def __init__(self, node_count: int, edges: np.ndarray, attributes: np.ndarray | None = None):
        # use build_graph(); this constructor trusts its (canonical) input
        self.node_count = int(node_count)
        self._edges = edges
        n = self.node_count
        if len(edges):
            rows = np.concatenate([edges[:, 0], edges[:, 1]])
            cols = np.concatenate([edges[:, 1], edges[:, 0]])
        else:
            rows = cols = np.zeros(0, dtype=np.int64)
        data = np.ones(len(rows), dtype=np.float64)
        adj = sp.csr_matrix((data, (rows, cols)), shape=(n, n))
        adj.sort_indices()
        self._adj = adj
        self._degrees = np.diff(adj.indptr).astype(np.int64)
        if attributes is not None:
            attributes = np.array(attributes, dtype=np.float64)
            attributes.setflags(write=False)
        self._attributes = attributes
        self._norm_adj = None

    @property
    def edges(self) -> np.ndarray:
        """Canonical edge array of shape (m, 2) with ``u < v``, sorted."""
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def adjacency(self) -> sp.csr_matrix:
        """Symmetric 0/1 CSR adjacency (no self-loops)."""
        return self._adj

    @property
    def attributes(self) -> np.ndarray | None:
        return self._attributes

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def indptr(self) -> np.ndarray:
        return self._adj.indptr

    @property
    def indices(self) -> np.ndarray:
        return self._adj.indices

    def neighbors(self, i: int) -> list[int]:
        return neighbors(self, i)

    def with_attributes(self, attributes: np.ndarray | None) -> "Graph":
        return build_graph(self.node_count, self._edges, attributes)

    def dense_adjacency(self) -> np.ndarray:
        return self._adj.toarray()

    def __repr__(self) -> str:
        d = None if self._attributes is None else self._attributes.shape[1]
        return f"Graph(n={self.node_count}, m={self.edge_count}, attr_dim={d})"


def build_graph(
    node_count: int,
    edge_list: Iterable[Sequence[int]] | np.ndarray,
    attributes: np.ndarray | None = None,
) -> Graph:
    """Build a canonical undirected graph.

    Duplicate edges, reversed duplicates and self-loops are dropped.

    Raises
    ------
    GraphInputError
        If an endpoint is outside ``[0, node_count)`` or the attribute matrix
        does not have ``node_count`` rows.
    """
    if node_count < 0:
        raise GraphInputError(f"node_count must be non-negative, got {node_count}")
    edges = np.asarray(list(edge_list) if not isinstance(edge_list, np.ndarray) else edge_list,
                       dtype=np.int64)
    if edges.size == 0:
        edges = np.zeros((0, 2), dtype=np.int64)
    if edges.ndim != 2 or edges.shape[1] != 2:
        raise GraphInputError(f"edge list must be a sequence of pairs, got shape {edges.shape}")
    bad = (edges < 0) | (edges >= node_count)
    if bad.any():
        row = int(np.flatnonzero(bad.any(axis=1))[0])
        u, v = edges[row]
        raise GraphInputError(
            f"endpoint out of range: edge ({u}, {v}) at position {row} with node_count={node_count}"
        )
    edges = np.sort(edges, axis=1)
    edges = edges[edges[:, 0] != edges[:, 1]]
    if len(edges):
        edges = np.unique(edges, axis=0)
    if attributes is not None:
        attributes = np.asarray(attributes, dtype=np.float64)
        if attributes.ndim == 1:
            attributes = attributes[:, None]
        if attributes.ndim != 2 or attributes.shape[0] != node_count:
            raise GraphInputError(
                f"attribute shape mismatch: expected {node_count} rows, got shape {attributes.shape}"
            )
    edges.setflags(write=False)
    return Graph(node_count, edges, attributes)


def neighbors(g: Graph, i: int) -> list[int]:
    """Sorted neighbour ids of node ``i``."""
    if not 0 <= i < g.node_count:
        raise GraphInputError(f"node id {i} out of range for graph with {g.node_count} nodes")
    return g.indices[g.indptr[i]:g.indptr[i + 1]].tolist()


def normalized_adjacency(g: Graph) -> np.ndarray:
    """Dense ``D^-1/2 (A + I) D^-1/2`` with D the degree matrix of ``A + I``."""
    if g._norm_adj is None:
        n = g.node_count
        a = g.dense_adjacency() + np.eye(n)
        dinv = 1.0 / np.sqrt(a.sum(axis=1))
        norm = dinv[:, None] * a * dinv[None, :]
        norm.setflags(write=False)
        g._norm_adj = norm
    return g._norm_adj


def mean_adjacency(g: Graph) -> np.ndarray:
    """Dense row-stochastic ``D^-1 (A + I)``."""
    a = g.dense_adjacency() + np.eye(g.node_count)
    return a / a.sum(axis=1, keepdims=True)


def permute_graph(g: Graph, perm: np.ndarray) -> Graph:
    """Relabel node ``i`` as ``perm[i]``; attribute rows move with their node."""
    perm = np.asarray(perm, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(g.node_count)):
        raise GraphInputError("perm must be a permutation of range(node_count)")
    attrs = None
    if g.attributes is not None:
        attrs = np.empty_like(g.attributes)
        attrs[perm] = g.attributes
    return build_graph(g.node_count, perm[g.edges], attrs)


def _check_one_to_one(pairs: Iterable[tuple[int, int]], what: str) -> None:
    seen_u: set[int] = set()
    seen_v: set[int] = set()
    for u, v in pairs:
        if u in seen_u or v in seen_v:
            raise GraphInputError(f"{what} is not one-to-one at pair ({u}, {v})")
        seen_u.add(u)
        seen_v.add(v)


@dataclass(frozen=True)
class AlignmentProblem:
    """A source/target graph pair with ground truth and optional seed anchors."""

    source: Graph
    target: Graph
    ground_truth: tuple[tuple[int, int], ...] = ()
    seed_anchors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        gt = tuple((int(u), int(v)) for u, v in self.ground_truth)
        seeds = tuple((int(u), int(v)) for u, v in self.seed_anchors)
        object.__setattr__(self, "ground_truth", gt)
        object.__setattr__(self, "seed_anchors", seeds)
        _check_one_to_one(gt, "ground truth")
        _check_one_to_one(seeds, "seed anchors")
        for u, v in gt + seeds:
            if not (0 <= u < self.source.node_count and 0 <= v < self.target.node_count):
                raise GraphInputError(f"pair ({u}, {v}) references a node outside the graphs")
        if gt:
            missing = set(seeds) - set(gt)
            if missing:
                raise GraphInputError(f"seed anchors not in ground truth: {sorted(missing)[:5]}")


@dataclass
class Mapping:
    """Growing one-to-one partial correspondence between source and target nodes.

    ``pairs`` holds ``(u, v)`` in insertion order and ``iteration`` the matcher
    iteration that committed each pair (0 for seeds).
    """

    pairs: list[tuple[int, int]] = field(default_factory=list)
    iteration: list[int] = field(default_factory=list)
    _fwd: dict[int, int] = field(default_factory=dict, repr=False)
    _bwd: dict[int, int] = field(default_factory=dict, repr=False)

    def add(self, u: int, v: int, iteration: int = 0) -> None:
        u, v = int(u), int(v)
        if u in self._fwd:
            raise GraphInputError(f"source node {u} already mapped to {self._fwd[u]}")
        if v in self._bwd:
            raise GraphInputError(f"target node {v} already mapped from {self._bwd[v]}")
        self._fwd[u] = v
        self._bwd[v] = u
        self.pairs.append((u, v))
        self.iteration.append(iteration)

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        u, v = pair
        return self._fwd.get(u) == v

    def __iter__(self):
        return iter(self.pairs)

    def forward(self, u: int) -> int | None:
        return self._fwd.get(u)

    def backward(self, v: int) -> int | None:
        return self._bwd.get(v)

    def as_dict(self) -> dict[int, int]:
        return dict(self._fwd)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Mapping":
        m = cls()
        for u, v in pairs:
            m.add(u, v)
        return m
