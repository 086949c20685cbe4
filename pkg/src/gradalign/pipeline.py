"""End-to-end alignment: augment, embed, match, evaluate."""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .augment import AugmentedAttributes, augment, ones_attributes
from .config import RunConfig
from .encoder import EncoderParams, gin_forward, train
from .graph import AlignmentProblem
from .matcher import ChannelEmbeddings, MatchResult, match
from .metrics import EvalReport, evaluate

log = logging.getLogger(__name__)

# offsets keeping the two attribute channels on independent random streams
AUG_CHANNEL_SEED = 0
ORIG_CHANNEL_SEED = 1


@dataclass
class PipelineResult:
    match: MatchResult
    embeddings: ChannelEmbeddings
    s_emb: np.ndarray
    aug_params: EncoderParams
    orig_params: EncoderParams | None = None
    augmented: AugmentedAttributes | None = None
    report: EvalReport | None = None
    problem: AlignmentProblem | None = None
    extra: dict = field(default_factory=dict)

    @property
    def mapping(self):
        return self.match.mapping


def augmented_inputs(problem: AlignmentProblem, cfg: RunConfig):
    """Augmented-channel inputs; all-ones columns when augmentation is off."""
    if not cfg.augment_enabled:
        return None, ones_attributes(problem.source.node_count), ones_attributes(problem.target.node_count)
    aug = augment(problem, dataclasses.replace(cfg.augment, centrality=cfg.centrality))
    return aug, aug.source, aug.target


def embed(problem: AlignmentProblem, cfg: RunConfig):
    g_s, g_t = problem.source, problem.target
    aug, x_s, x_t = augmented_inputs(problem, cfg)
    seed = cfg.train.rng_seed
    aug_params = train(g_s, g_t, x_s, x_t, dataclasses.replace(cfg.train, rng_seed=seed + AUG_CHANNEL_SEED))
    emb = ChannelEmbeddings(gin_forward(g_s, x_s, aug_params), gin_forward(g_t, x_t, aug_params))
    orig_params = None
    if g_s.attributes is not None and g_t.attributes is not None:
        orig_params = train(g_s, g_t, g_s.attributes, g_t.attributes,
                            dataclasses.replace(cfg.train, rng_seed=seed + ORIG_CHANNEL_SEED))
        emb.orig_s = gin_forward(g_s, g_s.attributes, orig_params)
        emb.orig_t = gin_forward(g_t, g_t.attributes, orig_params)
    return aug, emb, aug_params, orig_params


def run_alignment(problem: AlignmentProblem, cfg: RunConfig,
                  on_iteration: Callable[[dict], None] | None = None) -> PipelineResult:
    aug, emb, aug_params, orig_params = embed(problem, cfg)
    log.info("trained encoders: aug loss %.4g -> %.4g", aug_params.loss_history[0], aug_params.loss_history[-1])
    s_emb = emb.similarity(cfg.match.lam)
    result = match(problem, s_emb, cfg.match, on_iteration)
    report = None
    if problem.ground_truth and len(problem.seed_anchors) < len(problem.ground_truth):
        report = evaluate(result.mapping, problem.ground_truth, result.final_similarity,
                          cfg.qs, problem.seed_anchors)
    return PipelineResult(result, emb, s_emb, aug_params, orig_params, aug, report, problem)
