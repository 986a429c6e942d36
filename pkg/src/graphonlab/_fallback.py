"""Pure-Python/numpy implementations of the hot kernels.

Signatures and results match ``_kernels.pyx`` exactly (the PA sampler
reproduces the same floating-point operation sequence, so a given seed yields
the same graph on either backend).
"""

import numpy as np

_CUT_CHUNK_BITS = 14


def cut_norm_search(a):
    """Maximise ``|sum_{i in S, j in T} a[i, j]|`` over subsets S, T.

    Returns ``(value, s_mask, sign)`` where ``sign`` is +1 if the optimum is
    the positive part of the column sums of S and -1 otherwise. T is then
    ``{j : sign * colsum_S[j] > 0}``.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    p = a.shape[0]
    best, best_mask, best_sign = 0.0, 0, 1
    chunk_bits = min(p, _CUT_CHUNK_BITS)
    low = np.arange(1 << chunk_bits, dtype=np.int64)
    low_bits = ((low[:, None] >> np.arange(chunk_bits)) & 1).astype(np.float64)
    low_sums = low_bits @ a[:chunk_bits]
    for high in range(1 << (p - chunk_bits)):
        high_sum = np.zeros(p)
        for b in range(p - chunk_bits):
            if high >> b & 1:
                high_sum += a[chunk_bits + b]
        col = low_sums + high_sum
        pos = np.where(col > 0, col, 0.0).sum(axis=1)
        neg = -np.where(col < 0, col, 0.0).sum(axis=1)
        i_pos = int(np.argmax(pos))
        i_neg = int(np.argmax(neg))
        if pos[i_pos] > best:
            best, best_mask, best_sign = float(pos[i_pos]), (high << chunk_bits) | i_pos, 1
        if neg[i_neg] > best:
            best, best_mask, best_sign = float(neg[i_neg]), (high << chunk_bits) | i_neg, -1
    return best, best_mask, best_sign


def hom_count(indptr, indices, n, back_ptr, back_idx):
    """Count homomorphisms of a pattern into a graph given in CSR form.

    Pattern vertices are processed in positions ``0..v-1``; position ``k``
    must be adjacent to the earlier positions ``back_idx[back_ptr[k]:back_ptr[k+1]]``.
    """
    v = len(back_ptr) - 1
    indptr = indptr.tolist()
    indices = indices.tolist()
    nbr_list = [indices[indptr[i] : indptr[i + 1]] for i in range(n)]
    nbr_set = [set(lst) for lst in nbr_list]
    deg = [len(lst) for lst in nbr_list]
    backs = [list(back_idx[back_ptr[k] : back_ptr[k + 1]]) for k in range(v)]
    image = [0] * v

    def rec(k):
        bk = backs[k]
        last = k == v - 1
        if not bk:
            if last:
                return n
            total = 0
            for c in range(n):
                image[k] = c
                total += rec(k + 1)
            return total
        imgs = [image[b] for b in bk]
        base = min(imgs, key=deg.__getitem__)
        others = [nbr_set[i] for i in imgs if i != base]
        if last:
            if not others:
                return deg[base]
            return len(nbr_set[base].intersection(*others))
        total = 0
        for c in nbr_list[base]:
            if all(c in s for s in others):
                image[k] = c
                total += rec(k + 1)
        return total

    if v == 0:
        return 1
    return rec(0)


def line_graph_pairs(indptr, incident):
    """All pairs of edge ids sharing an endpoint, one row per pair (i < j)."""
    n = len(indptr) - 1
    deg = np.diff(indptr)
    total = int((deg * (deg - 1) // 2).sum())
    out = np.empty((total, 2), dtype=np.int64)
    pos = 0
    cache = {}
    for vtx in range(n):
        d = int(deg[vtx])
        if d < 2:
            continue
        if d not in cache:
            cache[d] = np.triu_indices(d, k=1)
        r, c = cache[d]
        ids = incident[indptr[vtx] : indptr[vtx + 1]]
        k = r.shape[0]
        out[pos : pos + k, 0] = ids[r]
        out[pos : pos + k, 1] = ids[c]
        pos += k
    # incident lists are sorted, so ids[r] < ids[c] already
    return out


def _fenwick_build(tree, weights, size):
    for i in range(size):
        tree[i + 1] = weights[i]
    for i in range(1, size + 1):
        j = i + (i & -i)
        if j <= size:
            tree[j] += tree[i]


def _fenwick_add(tree, size, idx, delta):
    i = idx + 1
    while i <= size:
        tree[i] += delta
        i += i & -i


def _fenwick_find(tree, size, top, target):
    pos = 0
    step = top
    while step:
        nxt = pos + step
        if nxt <= size and tree[nxt] <= target:
            pos = nxt
            target -= tree[nxt]
        step >>= 1
    return pos


def pa_attach(s0, s, t, alpha, uniforms, rebuild_every):
    """Grow a superlinear/linear PA graph from the cycle on ``s0`` vertices.

    Returns the ``(m, 2)`` array of edges in insertion order. Weights are
    ``(k_i / scale)**alpha`` where ``scale`` tracks the maximum degree; the
    Fenwick tree is rebuilt from exact weights whenever the scale changes and
    every ``rebuild_every`` steps so accumulated rounding stays bounded.
    """
    size = s0 + t
    deg = [0] * size
    edges = []
    for i in range(s0):
        j = (i + 1) % s0
        edges.append((min(i, j), max(i, j)))
        deg[i] += 1
        deg[j] += 1
    weights = [0.0] * size
    tree = [0.0] * (size + 1)
    top = 1
    while top * 2 <= size:
        top *= 2
    kmax = max(deg) if size else 1
    scale = float(kmax)
    cur = s0

    def rebuild():
        for i in range(cur):
            weights[i] = (deg[i] / scale) ** alpha
        for i in range(cur, size):
            weights[i] = 0.0
        for i in range(size + 1):
            tree[i] = 0.0
        _fenwick_build(tree, weights, size)

    rebuild()
    u_pos = 0
    for step in range(t):
        take = min(s, cur)
        chosen = []
        for _ in range(take):
            total = _fenwick_total(tree, size, top)
            target = uniforms[u_pos] * total
            u_pos += 1
            idx = _fenwick_find(tree, size, top, target)
            idx = _nonzero_near(weights, min(idx, cur - 1), cur)
            chosen.append(idx)
            _fenwick_add(tree, size, idx, -weights[idx])
            weights[idx] = 0.0
        u_pos += s - take
        new = cur
        cur += 1
        for idx in chosen:
            deg[idx] += 1
            edges.append((idx, new))
        deg[new] = take
        grew = False
        for idx in chosen:
            if deg[idx] > kmax:
                kmax = deg[idx]
                grew = True
        if take > kmax:
            kmax = take
            grew = True
        if grew and kmax >= 2.0 * scale:
            scale = float(kmax)
            rebuild()
        elif (step + 1) % rebuild_every == 0:
            rebuild()
        else:
            for idx in chosen:
                w = (deg[idx] / scale) ** alpha
                _fenwick_add(tree, size, idx, w)
                weights[idx] = w
            if take:
                w = (take / scale) ** alpha
                _fenwick_add(tree, size, new, w)
                weights[new] = w
    return np.asarray(edges, dtype=np.int64).reshape(-1, 2)


def _fenwick_total(tree, size, top):
    total = 0.0
    i = size
    while i > 0:
        total += tree[i]
        i -= i & -i
    return total


def _nonzero_near(weights, idx, cur):
    # Rounding drift can land the search on a zero-weight slot; step to the
    # nearest live one, preferring lower indices.
    j = idx
    while j >= 0 and weights[j] == 0.0:
        j -= 1
    if j >= 0:
        return j
    j = idx
    while j < cur - 1 and weights[j] == 0.0:
        j += 1
    return j
