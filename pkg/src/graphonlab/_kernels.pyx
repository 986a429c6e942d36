# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; ``_fallback.py`` holds the reference twins."""

import numpy as np

from libc.math cimport pow
from libc.stdlib cimport malloc, free


def cut_norm_search(a_in):
    cdef double[:, ::1] a = np.ascontiguousarray(a_in, dtype=np.float64)
    cdef Py_ssize_t p = a.shape[0]
    cdef double[::1] col = np.zeros(p, dtype=np.float64)
    cdef long long total = 1LL << p
    cdef long long g, mask = 0, bit, changed, best_mask = 0
    cdef double best = 0.0, pos, neg, c
    cdef int best_sign = 1, sgn
    cdef Py_ssize_t j, r
    with nogil:
        for g in range(1, total):
            # Gray code: exactly one row enters or leaves S per step.
            changed = g & (-g)
            r = 0
            bit = changed
            while bit > 1:
                bit >>= 1
                r += 1
            if mask & changed:
                mask ^= changed
                sgn = -1
            else:
                mask |= changed
                sgn = 1
            pos = 0.0
            neg = 0.0
            for j in range(p):
                if sgn > 0:
                    col[j] += a[r, j]
                else:
                    col[j] -= a[r, j]
                c = col[j]
                if c > 0:
                    pos += c
                elif c < 0:
                    neg -= c
            if pos > best:
                best = pos
                best_mask = mask
                best_sign = 1
            if neg > best:
                best = neg
                best_mask = mask
                best_sign = -1
    return best, int(best_mask), best_sign


cdef inline bint _has(const long long[::1] indptr, const long long[::1] indices,
                      long long u, long long x) nogil:
    cdef long long lo = indptr[u], hi = indptr[u + 1], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if indices[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < indptr[u + 1] and indices[lo] == x


cdef long long _rec(int k, int v, long long n,
                    const long long[::1] indptr, const long long[::1] indices,
                    const long long[::1] back_ptr, const long long[::1] back_idx,
                    long long* image) nogil:
    cdef long long total = 0, c, base, img, d, dbest, q
    cdef long long b0 = back_ptr[k], b1 = back_ptr[k + 1], b
    cdef bint last = k == v - 1, ok
    if b0 == b1:
        if last:
            return n
        for c in range(n):
            image[k] = c
            total += _rec(k + 1, v, n, indptr, indices, back_ptr, back_idx, image)
        return total
    base = image[back_idx[b0]]
    dbest = indptr[base + 1] - indptr[base]
    for b in range(b0 + 1, b1):
        img = image[back_idx[b]]
        d = indptr[img + 1] - indptr[img]
        if d < dbest:
            dbest = d
            base = img
    for q in range(indptr[base], indptr[base + 1]):
        c = indices[q]
        ok = True
        for b in range(b0, b1):
            img = image[back_idx[b]]
            if img != base and not _has(indptr, indices, img, c):
                ok = False
                break
        if not ok:
            continue
        if last:
            total += 1
        else:
            image[k] = c
            total += _rec(k + 1, v, n, indptr, indices, back_ptr, back_idx, image)
    return total


def hom_count(indptr_in, indices_in, long long n, back_ptr_in, back_idx_in):
    cdef const long long[::1] indptr = np.ascontiguousarray(indptr_in, dtype=np.int64)
    cdef const long long[::1] indices = np.ascontiguousarray(indices_in, dtype=np.int64)
    cdef const long long[::1] back_ptr = np.ascontiguousarray(back_ptr_in, dtype=np.int64)
    cdef const long long[::1] back_idx = np.ascontiguousarray(
        back_idx_in if len(back_idx_in) else np.zeros(1, dtype=np.int64), dtype=np.int64)
    cdef int v = back_ptr.shape[0] - 1
    cdef long long result
    cdef long long* image
    if v == 0:
        return 1
    image = <long long*> malloc(v * sizeof(long long))
    try:
        with nogil:
            result = _rec(0, v, n, indptr, indices, back_ptr, back_idx, image)
    finally:
        free(image)
    return int(result)


def line_graph_pairs(indptr_in, incident_in):
    cdef const long long[::1] indptr = np.ascontiguousarray(indptr_in, dtype=np.int64)
    cdef const long long[::1] incident = np.ascontiguousarray(incident_in, dtype=np.int64)
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef long long total = 0, d, pos = 0, a, b
    cdef Py_ssize_t vtx
    for vtx in range(n):
        d = indptr[vtx + 1] - indptr[vtx]
        total += d * (d - 1) // 2
    out_arr = np.empty((total, 2), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    with nogil:
        for vtx in range(n):
            for a in range(indptr[vtx], indptr[vtx + 1]):
                for b in range(a + 1, indptr[vtx + 1]):
                    out[pos, 0] = incident[a]
                    out[pos, 1] = incident[b]
                    pos += 1
    return out_arr


cdef void _fw_add(double* tree, long long size, long long idx, double delta) nogil:
    cdef long long i = idx + 1
    while i <= size:
        tree[i] += delta
        i += i & (-i)


cdef double _fw_total(double* tree, long long size) nogil:
    cdef double total = 0.0
    cdef long long i = size
    while i > 0:
        total += tree[i]
        i -= i & (-i)
    return total


cdef long long _fw_find(double* tree, long long size, long long top, double target) nogil:
    cdef long long pos = 0, step = top, nxt
    while step:
        nxt = pos + step
        if nxt <= size and tree[nxt] <= target:
            pos = nxt
            target -= tree[nxt]
        step >>= 1
    return pos


cdef void _rebuild(double* tree, double* weights, long long* deg, long long size,
                   long long cur, double scale, double alpha) nogil:
    cdef long long i, j
    for i in range(cur):
        weights[i] = pow(deg[i] / scale, alpha)
    for i in range(cur, size):
        weights[i] = 0.0
    tree[0] = 0.0
    for i in range(size):
        tree[i + 1] = weights[i]
    for i in range(1, size + 1):
        j = i + (i & (-i))
        if j <= size:
            tree[j] += tree[i]


def pa_attach(long long s0, long long s, long long t, double alpha, uniforms_in,
              long long rebuild_every):
    cdef const double[::1] uniforms = np.ascontiguousarray(uniforms_in, dtype=np.float64)
    cdef long long size = s0 + t
    cdef long long m_cap = s0 + t * s
    edges_arr = np.empty((m_cap, 2), dtype=np.int64)
    cdef long long[:, ::1] edges = edges_arr
    cdef long long* deg = <long long*> malloc(max(size, 1) * sizeof(long long))
    cdef double* weights = <double*> malloc(max(size, 1) * sizeof(double))
    cdef double* tree = <double*> malloc((size + 1) * sizeof(double))
    cdef long long* chosen = <long long*> malloc(max(s, 1) * sizeof(long long))
    cdef long long i, j, m = 0, top = 1, kmax = 0, cur = s0, step, take, q, idx, new, u_pos = 0
    cdef double scale, total, target, w
    cdef bint grew
    try:
        with nogil:
            for i in range(size):
                deg[i] = 0
            for i in range(s0):
                j = (i + 1) % s0
                edges[m, 0] = i if i < j else j
                edges[m, 1] = j if i < j else i
                m += 1
                deg[i] += 1
                deg[j] += 1
            while top * 2 <= size:
                top *= 2
            for i in range(size):
                if deg[i] > kmax:
                    kmax = deg[i]
            if kmax == 0:
                kmax = 1
            scale = <double> kmax
            _rebuild(tree, weights, deg, size, cur, scale, alpha)
            for step in range(t):
                take = s if s < cur else cur
                for q in range(take):
                    total = _fw_total(tree, size)
                    target = uniforms[u_pos] * total
                    u_pos += 1
                    idx = _fw_find(tree, size, top, target)
                    if idx > cur - 1:
                        idx = cur - 1
                    j = idx
                    while j >= 0 and weights[j] == 0.0:
                        j -= 1
                    if j < 0:
                        j = idx
                        while j < cur - 1 and weights[j] == 0.0:
                            j += 1
                    idx = j
                    chosen[q] = idx
                    _fw_add(tree, size, idx, -weights[idx])
                    weights[idx] = 0.0
                u_pos += s - take
                new = cur
                cur += 1
                for q in range(take):
                    idx = chosen[q]
                    deg[idx] += 1
                    edges[m, 0] = idx
                    edges[m, 1] = new
                    m += 1
                deg[new] = take
                grew = False
                for q in range(take):
                    if deg[chosen[q]] > kmax:
                        kmax = deg[chosen[q]]
                        grew = True
                if take > kmax:
                    kmax = take
                    grew = True
                if grew and kmax >= 2.0 * scale:
                    scale = <double> kmax
                    _rebuild(tree, weights, deg, size, cur, scale, alpha)
                elif (step + 1) % rebuild_every == 0:
                    _rebuild(tree, weights, deg, size, cur, scale, alpha)
                else:
                    for q in range(take):
                        idx = chosen[q]
                        w = pow(deg[idx] / scale, alpha)
                        _fw_add(tree, size, idx, w)
                        weights[idx] = w
                    if take:
                        w = pow(take / scale, alpha)
                        _fw_add(tree, size, new, w)
                        weights[new] = w
    finally:
        free(deg)
        free(weights)
        free(tree)
        free(chosen)
    return edges_arr[:m].copy()
