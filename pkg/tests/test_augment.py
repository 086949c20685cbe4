import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gradalign.augment import (
    AugmentConfig,
    AugmentConfigError,
    augment,
    bin_assign,
    bin_count,
    bin_indices,
    encode_pair,
    one_hot,
)
from gradalign.centrality import CentralityConfig
from gradalign.graph import AlignmentProblem
from gradalign.synthetic import shuffle_nodes
from conftest import random_graph


def test_bin_assign_examples():
    assert bin_assign(np.array([1.0, 2.5, 3.0]), 1.0, 3.0).tolist() == [1, 3, 3]
    assert bin_count(3.0, 1.0) == 3
    assert bin_assign(np.array([0.0]), 1.0, 0.0).tolist() == [1]
    c = np.array([0.4, 2.0, 7.5])
    assert bin_assign(c, 10.0, 7.5).tolist() == [1, 1, 1]
    assert bin_count(7.5, 10.0) == 1


def test_bin_assign_exact_multiples():
    # 0.3 / 0.1 is 2.9999999999999996 in floating point
    assert bin_assign(np.array([0.3]), 0.1, 0.3).tolist() == [3]


def test_bin_assign_rejects_bad_width():
    with pytest.raises(AugmentConfigError):
        bin_assign(np.array([1.0]), 0.0, 1.0)


def test_pruning_example():
    aug = encode_pair(np.array([1.0, 3.0]), np.array([1.0, 3.0]), width=1.0)
    assert aug.bins.tolist() == [1, 3]
    assert aug.dim == 2
    np.testing.assert_array_equal(aug.source, [[1, 0], [0, 1]])
    np.testing.assert_allclose(aug.bin_edges, [1.0, 3.0])


def test_target_dim_mode():
    rng = np.random.default_rng(0)
    c_s, c_t = rng.uniform(0, 9, 30), rng.uniform(0, 9, 25)
    aug = encode_pair(c_s, c_t, target_dim=5)
    c_max = max(c_s.max(), c_t.max())
    assert aug.width == pytest.approx(c_max / 5)
    assert 1 <= aug.dim <= 5
    assert aug.bins.max() <= 5


def test_config_exclusive():
    with pytest.raises(AugmentConfigError):
        AugmentConfig(width=1.0, target_dim=5)
    with pytest.raises(AugmentConfigError):
        AugmentConfig(width=None, target_dim=None)
    with pytest.raises(AugmentConfigError):
        AugmentConfig(width=-1.0, target_dim=None)


@pytest.mark.parametrize("cfg", [
    AugmentConfig(target_dim=10, centrality=CentralityConfig(kind="katz")),
    AugmentConfig(target_dim=4, centrality=CentralityConfig(kind="khop", k=2)),
    AugmentConfig(width=1.0, target_dim=None, centrality=CentralityConfig(kind="khop", k=1)),
])
def test_augment_invariants(cfg, rng):
    for _ in range(5):
        g_s = random_graph(rng, 40, 0.1)
        g_t = random_graph(rng, 35, 0.12)
        aug = augment(AlignmentProblem(g_s, g_t), cfg)
        for m in (aug.source, aug.target):
            assert (m.sum(axis=1) == 1).all()
            assert set(np.unique(m)) <= {0.0, 1.0}
        assert aug.source.shape[1] == aug.target.shape[1] == aug.dim >= 1
        assert (np.vstack([aug.source, aug.target]).sum(axis=0) > 0).all()
        # re-encoding with the retained bins changes nothing
        b_s, b_t = bin_indices(aug)
        np.testing.assert_array_equal(one_hot(b_s, aug.bins), aug.source)
        np.testing.assert_array_equal(one_hot(b_t, aug.bins), aug.target)


def test_self_alignment_attributes_identical(rng):
    g = random_graph(rng, 60, 0.08)
    h, gt = shuffle_nodes(g, 3)
    aug = augment(AlignmentProblem(g, h, gt), AugmentConfig(target_dim=15))
    for u, v in gt:
        np.testing.assert_array_equal(aug.source[u], aug.target[v])
    same = augment(AlignmentProblem(g, g), AugmentConfig(target_dim=15))
    np.testing.assert_array_equal(same.source, same.target)


def test_refinement_never_merges(rng):
    c = rng.uniform(0, 20, 200)
    for w in (4.0, 2.5, 1.0):
        coarse = bin_assign(c, w, c.max())
        for m in (2, 3, 5):
            fine = bin_assign(c, w / m, c.max())
            split = coarse[:, None] != coarse[None, :]
            assert (fine[:, None] != fine[None, :])[split].all()


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0, 50), min_size=2, max_size=30), st.floats(0.1, 10), st.integers(1, 6))
def test_refinement_property(scores, width, divisor):
    # width / divisor refines width: nodes split at the coarse width stay split
    c = np.array(scores)
    c_max = float(c.max())
    coarse = bin_assign(c, width, c_max)
    fine = bin_assign(c, width / divisor, c_max)
    same_fine = fine[:, None] == fine[None, :]
    same_coarse = coarse[:, None] == coarse[None, :]
    assert not np.any(same_fine & ~same_coarse)
