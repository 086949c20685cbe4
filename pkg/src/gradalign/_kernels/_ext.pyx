# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_pure.py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32


def khop_layer_counts(indptr, indices, Py_ssize_t k):
    cdef i64[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef i64[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef Py_ssize_t n = ip.shape[0] - 1
    out_arr = np.zeros((n, k), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    cdef i64[::1] dist = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef i64[::1] layer = np.zeros(k + 1, dtype=np.int64)
    cdef Py_ssize_t src, head, tail, x, y, p, l
    cdef i64 dx, total
    for src in range(n):
        for l in range(k + 1):
            layer[l] = 0
        dist[src] = 0
        queue[0] = src
        head = 0
        tail = 1
        while head < tail:
            x = queue[head]
            head += 1
            dx = dist[x]
            if dx == k:
                continue
            for p in range(ip[x], ip[x + 1]):
                y = ix[p]
                if dist[y] < 0:
                    dist[y] = dx + 1
                    layer[dx + 1] += 1
                    queue[tail] = y
                    tail += 1
        for p in range(tail):
            dist[queue[p]] = -1
        total = 0
        for l in range(1, k + 1):
            total += layer[l]
            out[src, l - 1] = total
    return out_arr


def acn_increment(counts, s_indptr, s_indices, t_indptr, t_indices, us, vs):
    cdef i64[:, ::1] c = counts
    cdef i64[::1] sip = np.ascontiguousarray(s_indptr, dtype=np.int64)
    cdef i64[::1] six = np.ascontiguousarray(s_indices, dtype=np.int64)
    cdef i64[::1] tip = np.ascontiguousarray(t_indptr, dtype=np.int64)
    cdef i64[::1] tix = np.ascontiguousarray(t_indices, dtype=np.int64)
    cdef i64[::1] uu = np.ascontiguousarray(us, dtype=np.int64)
    cdef i64[::1] vv = np.ascontiguousarray(vs, dtype=np.int64)
    cdef Py_ssize_t q, a, b, u, v
    for q in range(uu.shape[0]):
        u = uu[q]
        v = vv[q]
        for a in range(sip[u], sip[u + 1]):
            for b in range(tip[v], tip[v + 1]):
                c[six[a], tix[b]] += 1


def greedy_select(values, Py_ssize_t budget):
    cdef Py_ssize_t n_rows = values.shape[0]
    cdef Py_ssize_t n_cols = values.shape[1]
    cdef Py_ssize_t limit = min(budget, n_rows, n_cols)
    cdef i64[::1] order = np.argsort(-np.ravel(values), kind="stable").astype(np.int64)
    cdef cnp.uint8_t[::1] row_used = np.zeros(n_rows, dtype=np.uint8)
    cdef cnp.uint8_t[::1] col_used = np.zeros(n_cols, dtype=np.uint8)
    rows_arr = np.empty(limit, dtype=np.int64)
    cols_arr = np.empty(limit, dtype=np.int64)
    cdef i64[::1] rows = rows_arr
    cdef i64[::1] cols = cols_arr
    cdef Py_ssize_t got = 0, i, r, col, flat
    for i in range(order.shape[0]):
        if got >= limit:
            break
        flat = order[i]
        r = flat // n_cols
        col = flat - r * n_cols
        if row_used[r] or col_used[col]:
            continue
        row_used[r] = 1
        col_used[col] = 1
        rows[got] = r
        cols[got] = col
        got += 1
    return rows_arr[:got], cols_arr[:got]
