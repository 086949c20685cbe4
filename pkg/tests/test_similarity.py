import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gradalign.encoder import ShapeError
from gradalign.graph import build_graph
from gradalign.similarity import (
    ACNCounter,
    SimilarityConfigError,
    acn_counts,
    acn_counts_matrix,
    acn_similarity,
    combined_similarity,
    embedding_similarity,
)
from conftest import random_graph


def _cos(a, b):
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    return 0.0 if na == 0 or nb == 0 else float(a @ b) / (na * nb)


def test_embedding_similarity_triple_loop(rng):
    orig_s = [rng.normal(size=(3, 4)), rng.normal(size=(3, 4))]
    orig_t = [rng.normal(size=(2, 4)), rng.normal(size=(2, 4))]
    aug_s = [rng.normal(size=(3, 5)), rng.normal(size=(3, 5))]
    aug_t = [rng.normal(size=(2, 5)), rng.normal(size=(2, 5))]
    lam = 0.7
    expected = np.zeros((3, 2))
    for u in range(3):
        for v in range(2):
            for layer in range(2):
                expected[u, v] += _cos(orig_s[layer][u], orig_t[layer][v])
                expected[u, v] += lam * _cos(aug_s[layer][u], aug_t[layer][v])
    got = embedding_similarity(orig_s, orig_t, aug_s, aug_t, lam)
    np.testing.assert_allclose(got, expected, atol=1e-10)


def test_embedding_similarity_lambda_zero_and_missing_channel(rng):
    orig = [rng.normal(size=(4, 3))]
    aug = [rng.normal(size=(4, 2))]
    only_orig = embedding_similarity(orig, orig, aug, aug, 0.0)
    np.testing.assert_allclose(np.diag(only_orig), 1.0)
    np.testing.assert_allclose(only_orig, embedding_similarity(None, None, orig, orig, 5.0))
    # lambda is ignored without the original channel
    assert (embedding_similarity(None, None, aug, aug, 3.0) == embedding_similarity(None, None, aug, aug, 1.0)).all()


def test_embedding_similarity_shape_errors(rng):
    a = [rng.normal(size=(3, 2))]
    with pytest.raises(ShapeError):
        embedding_similarity(None, None, a, a + a)
    with pytest.raises(ShapeError):
        embedding_similarity(None, None, a, [rng.normal(size=(3, 3))])
    with pytest.raises(ShapeError):
        embedding_similarity(a, a + a, a, a)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31), st.floats(0, 3), st.integers(1, 3))
def test_embedding_similarity_range(seed, lam, layers):
    rng = np.random.default_rng(seed)
    s = [rng.normal(size=(4, 3)) for _ in range(layers)]
    t = [rng.normal(size=(5, 3)) for _ in range(layers)]
    out = embedding_similarity(s, t, t[:0] + s, t, lam)
    bound = (1 + lam) * layers + 1e-12
    assert np.all(np.abs(out) <= bound)


def _acn_brute(g_s, g_t, pairs):
    out = np.zeros((g_s.node_count, g_t.node_count), dtype=np.int64)
    ns = [set(g_s.neighbors(i)) for i in range(g_s.node_count)]
    nt = [set(g_t.neighbors(i)) for i in range(g_t.node_count)]
    for u in range(g_s.node_count):
        for v in range(g_t.node_count):
            out[u, v] = sum(1 for a, b in pairs if a in ns[u] and b in nt[v])
    return out


def _random_mapping(rng, n_s, n_t):
    k = int(rng.integers(0, min(n_s, n_t) + 1))
    return list(zip(rng.permutation(n_s)[:k].tolist(), rng.permutation(n_t)[:k].tolist()))


def test_acn_examples():
    # u=0 with neighbours {1, 2}; v=0 with neighbours {1, 2}
    g = build_graph(3, [(0, 1), (0, 2)])
    assert not acn_counts(g, g, []).any()
    assert acn_counts(g, g, [(1, 1), (2, 2)])[0, 0] == 2
    h = build_graph(3, [(0, 1)])
    assert acn_counts(g, h, [(1, 2)])[0, 0] == 0


def test_acn_matches_brute_force(rng, backend):
    import gradalign._kernels as kernels
    for _ in range(20):
        n_s, n_t = int(rng.integers(1, 30)), int(rng.integers(1, 30))
        g_s, g_t = random_graph(rng, n_s, 0.2), random_graph(rng, n_t, 0.2)
        pairs = _random_mapping(rng, n_s, n_t)
        counts = np.zeros((n_s, n_t), dtype=np.int64)
        arr = np.array(pairs, dtype=np.int64).reshape(-1, 2)
        backend.acn_increment(counts, g_s.indptr.astype(np.int64), g_s.indices.astype(np.int64),
                              g_t.indptr.astype(np.int64), g_t.indices.astype(np.int64),
                              arr[:, 0].copy(), arr[:, 1].copy())
        brute = _acn_brute(g_s, g_t, pairs)
        assert (counts == brute).all()
        assert (acn_counts(g_s, g_t, pairs) == brute).all()
        assert (acn_counts_matrix(g_s, g_t, pairs) == brute).all()
        assert kernels.BACKEND in ("cython", "python")


def test_acn_incremental_equals_recompute_and_grows(rng):
    g_s, g_t = random_graph(rng, 25, 0.2), random_graph(rng, 22, 0.2)
    pairs = _random_mapping(rng, 25, 22)
    counter = ACNCounter(g_s, g_t)
    prev = counter.counts.copy()
    for start in range(0, len(pairs), 4):
        counter.add_pairs(pairs[start:start + 4])
        assert (counter.counts >= prev).all()
        assert (counter.counts == acn_counts_matrix(g_s, g_t, pairs[:start + 4])).all()
        prev = counter.counts.copy()


def test_acn_similarity():
    assert (acn_similarity(np.zeros((2, 3)), 2.5) == 1.0).all()
    assert acn_similarity(np.array([[2]]), 3)[0, 0] == 27.0
    c = np.array([[0, 1], [4, 2]])
    np.testing.assert_array_equal(acn_similarity(c, 1), c + 1)
    for p in (0, -1):
        with pytest.raises(SimilarityConfigError):
            acn_similarity(c, p)


def test_combined_similarity(rng):
    s = rng.normal(size=(4, 3))
    a = rng.random((4, 3))
    assert (combined_similarity(s, np.ones((4, 3))) == s).all()
    a[1, 2] = 0.0
    out = combined_similarity(s, a)
    assert out[1, 2] == 0.0
    for i in range(4):
        for j in range(3):
            assert abs(out[i, j] - s[i, j] * a[i, j]) <= 1e-12
    with pytest.raises(ShapeError):
        combined_similarity(s, a.T)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31), st.floats(1e-3, 1e3))
def test_argmax_invariant_to_acn_scale(seed, scale):
    rng = np.random.default_rng(seed)
    s = rng.random((5, 6))
    a = acn_similarity(rng.integers(0, 4, size=(5, 6)), 2.0)
    base = np.argmax(combined_similarity(s, a), axis=1)
    assert (np.argmax(combined_similarity(s, a * scale), axis=1) == base).all()
