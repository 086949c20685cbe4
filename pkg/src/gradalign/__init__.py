"""Gradual network alignment with centrality-based attribute augmentation."""

from ._kernels import BACKEND
from .augment import AugmentConfig, AugmentedAttributes, augment, encode_pair
from .centrality import CentralityConfig, CentralityKind, compute_centrality, katz_centrality, khop_centrality
from .config import BenchConfig, RunConfig, load_config, parse_config
from .encoder import EncoderParams, TrainConfig, gin_forward, gradient_check, theorem_bound_check, train
from .graph import AlignmentProblem, Graph, GraphInputError, Mapping, build_graph, normalized_adjacency
from .matcher import ChannelEmbeddings, MatchConfig, gradual_align, greedy_commit, match
from .metrics import EvalReport, accuracy, evaluate, precision_at_q
from .pipeline import PipelineResult, run_alignment
from .similarity import acn_counts, acn_similarity, combined_similarity, embedding_similarity

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AlignmentProblem",
    "AugmentConfig",
    "AugmentedAttributes",
    "BenchConfig",
    "CentralityConfig",
    "CentralityKind",
    "ChannelEmbeddings",
    "EncoderParams",
    "EvalReport",
    "Graph",
    "GraphInputError",
    "Mapping",
    "MatchConfig",
    "PipelineResult",
    "RunConfig",
    "TrainConfig",
    "accuracy",
    "acn_counts",
    "acn_similarity",
    "augment",
    "build_graph",
    "combined_similarity",
    "compute_centrality",
    "embedding_similarity",
    "encode_pair",
    "evaluate",
    "gin_forward",
    "gradient_check",
    "gradual_align",
    "greedy_commit",
    "katz_centrality",
    "khop_centrality",
    "load_config",
    "match",
    "normalized_adjacency",
    "parse_config",
    "precision_at_q",
    "run_alignment",
    "theorem_bound_check",
    "train",
]
