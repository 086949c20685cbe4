"""Reference (interpreted) implementations of the hot kernels.

Every function here has a compiled twin in ``_ext.pyx`` with the same
signature and bit-identical results.
"""

from collections import deque

import numpy as np


def khop_layer_counts(indptr, indices, k):
    """Cumulative BFS layer sizes.

    Returns an ``(n, k)`` int64 array whose ``[i, l-1]`` entry is the number of
    nodes other than ``i`` at shortest-path distance ``<= l`` from ``i``.
    """
    n = len(indptr) - 1
    out = np.zeros((n, k), dtype=np.int64)
    indptr = indptr.tolist()
    indices = indices.tolist()
    dist = [-1] * n
    for src in range(n):
        layer = [0] * (k + 1)
        dist[src] = 0
        seen = [src]
        queue = deque([src])
        while queue:
            x = queue.popleft()
            dx = dist[x]
            if dx == k:
                continue
            for p in range(indptr[x], indptr[x + 1]):
                y = indices[p]
                if dist[y] < 0:
                    dist[y] = dx + 1
                    layer[dx + 1] += 1
                    seen.append(y)
                    queue.append(y)
        for x in seen:
            dist[x] = -1
        total = 0
        for l in range(1, k + 1):
            total += layer[l]
            out[src, l - 1] = total
    return out


def acn_increment(counts, s_indptr, s_indices, t_indptr, t_indices, us, vs):
    """In place: for each new pair (u', v') add 1 to counts[N_s(u') x N_t(v')]."""
    for u, v in zip(np.asarray(us).tolist(), np.asarray(vs).tolist()):
        nu = s_indices[s_indptr[u]:s_indptr[u + 1]]
        nv = t_indices[t_indptr[v]:t_indptr[v + 1]]
        if len(nu) and len(nv):
            counts[np.ix_(nu, nv)] += 1


def greedy_select(values, budget):
    """Greedy global-max selection with row/column elimination.

    Ties go to the smaller row, then the smaller column. Returns local
    ``(rows, cols)`` int64 arrays in commit order.
    """
    n_rows, n_cols = values.shape
    limit = min(budget, n_rows, n_cols)
    order = np.argsort(-values.ravel(), kind="stable")
    row_used = [False] * n_rows
    col_used = [False] * n_cols
    rows, cols = [], []
    for flat in order.tolist():
        if len(rows) >= limit:
            break
        r, c = divmod(flat, n_cols)
        if row_used[r] or col_used[c]:
            continue
        row_used[r] = col_used[c] = True
        rows.append(r)
        cols.append(c)
    return np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64)
