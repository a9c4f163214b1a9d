# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: bit-identical to ``mapcells.kernels.pure``, much faster.

The heavy loops (cycle-lemma rotation, contour tables, closure chaining, CSR
assembly, BFS, cell tallies, polygon-gluing surveys) run without the GIL so
trial-level thread pools parallelise for real.
"""

import numpy as np

from libc.stdlib cimport free, malloc

BACKEND = "compiled"


def rotate_to_dyck(word):
    cdef signed char[::1] w = np.ascontiguousarray(word, dtype=np.int8)
    cdef Py_ssize_t m = w.shape[0]
    cdef Py_ssize_t i, cut = 0
    cdef long long total = 0, best = 1
    with nogil:
        for i in range(m):
            total += w[i]
            if total < best:
                best = total
                cut = i + 1
    out = np.empty(m - 1, dtype=np.int8)
    cdef signed char[::1] o = out
    cdef Py_ssize_t j = 0
    with nogil:
        for i in range(cut, m):
            if j < m - 1:
                o[j] = w[i]
            j += 1
        for i in range(cut):
            if j < m - 1:
                o[j] = w[i]
            j += 1
    return out


def tree_corner_tables(contour, increments):
    cdef signed char[::1] c = np.ascontiguousarray(contour, dtype=np.int8)
    cdef long long[::1] inc = np.ascontiguousarray(increments, dtype=np.int64)
    cdef Py_ssize_t n2 = c.shape[0]
    vertex_of = np.zeros(n2, dtype=np.int64)
    label_of = np.zeros(n2, dtype=np.int64)
    cdef long long[::1] vo = vertex_of
    cdef long long[::1] lo = label_of
    cdef long long *stack_v = <long long *> malloc((n2 // 2 + 2) * sizeof(long long))
    cdef long long *stack_l = <long long *> malloc((n2 // 2 + 2) * sizeof(long long))
    cdef Py_ssize_t top = 0, i
    cdef long long next_vertex = 1, edge_idx = 0
    if stack_v == NULL or stack_l == NULL:
        raise MemoryError
    try:
        with nogil:
            stack_v[0] = 0
            stack_l[0] = 0
            for i in range(n2):
                vo[i] = stack_v[top]
                lo[i] = stack_l[top]
                if c[i] == 1:
                    top += 1
                    stack_v[top] = next_vertex
                    stack_l[top] = stack_l[top - 1] + inc[edge_idx]
                    next_vertex += 1
                    edge_idx += 1
                else:
                    top -= 1
        return vertex_of, label_of, int(next_vertex)
    finally:
        free(stack_v)
        free(stack_l)


def closure_edges(vertex_of, label_of, n_vertices):
    cdef long long[::1] vo = np.ascontiguousarray(vertex_of, dtype=np.int64)
    cdef long long[::1] lo = np.ascontiguousarray(label_of, dtype=np.int64)
    cdef Py_ssize_t n2 = lo.shape[0]
    cdef long long center = n_vertices
    cdef long long lmin = lo[0], lmax = lo[0]
    cdef Py_ssize_t i
    cdef long long lab
    with nogil:
        for i in range(n2):
            if lo[i] < lmin:
                lmin = lo[i]
            if lo[i] > lmax:
                lmax = lo[i]
    cdef Py_ssize_t span = lmax - lmin + 1
    succ_arr = np.empty(n2, dtype=np.int64)
    cdef long long[::1] succ = succ_arr
    cdef long long *last_at = <long long *> malloc(span * sizeof(long long))
    if last_at == NULL:
        raise MemoryError
    edge_u = np.empty(n2, dtype=np.int64)
    edge_v = np.empty(n2, dtype=np.int64)
    cdef long long[::1] eu = edge_u
    cdef long long[::1] ev = edge_v
    cdef Py_ssize_t sweep
    try:
        with nogil:
            for i in range(span):
                last_at[i] = -1
            for sweep in range(2):
                for i in range(n2 - 1, -1, -1):
                    lab = lo[i] - lmin
                    if lab > 0:
                        succ[i] = last_at[lab - 1]
                    else:
                        succ[i] = -1
                    last_at[lab] = i
            for i in range(n2):
                eu[i] = vo[i]
                if succ[i] < 0:
                    ev[i] = center
                else:
                    ev[i] = vo[succ[i]]
        return edge_u, edge_v, int(center)
    finally:
        free(last_at)


def adjacency_csr(edge_u, edge_v, n_vertices):
    cdef long long[::1] eu = np.ascontiguousarray(edge_u, dtype=np.int64)
    cdef long long[::1] ev = np.ascontiguousarray(edge_v, dtype=np.int64)
    cdef Py_ssize_t m = eu.shape[0]
    cdef Py_ssize_t n = n_vertices
    indptr = np.zeros(n + 1, dtype=np.int64)
    cdef long long[::1] ip = indptr
    indices = np.empty(2 * m, dtype=np.int64)
    cdef long long[::1] idx = indices
    fill = np.empty(n, dtype=np.int64)
    cdef long long[::1] fl = fill
    cdef Py_ssize_t i
    cdef long long u, v
    with nogil:
        for i in range(m):
            ip[eu[i] + 1] += 1
            ip[ev[i] + 1] += 1
        for i in range(n):
            ip[i + 1] += ip[i]
        for i in range(n):
            fl[i] = ip[i]
        for i in range(m):
            u = eu[i]
            v = ev[i]
            idx[fl[u]] = v
            fl[u] += 1
            idx[fl[v]] = u
            fl[v] += 1
    return indptr, indices


def bfs_distances(indptr, indices, source):
    cdef long long[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef long long[::1] idx = np.ascontiguousarray(indices, dtype=np.int64)
    cdef Py_ssize_t n = ip.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    cdef long long[::1] d = dist
    queue = np.empty(n, dtype=np.int64)
    cdef long long[::1] q = queue
    cdef Py_ssize_t head = 0, tail = 1
    cdef long long u, v, du
    cdef Py_ssize_t k
    d[source] = 0
    q[0] = source
    with nogil:
        while head < tail:
            u = q[head]
            head += 1
            du = d[u]
            for k in range(ip[u], ip[u + 1]):
                v = idx[k]
                if d[v] < 0:
                    d[v] = du + 1
                    q[tail] = v
                    tail += 1
    return dist


def nearest_cell_counts(dists):
    cdef long long[:, ::1] dd = np.ascontiguousarray(dists, dtype=np.int64)
    cdef Py_ssize_t k = dd.shape[0], n = dd.shape[1]
    counts = np.zeros(k, dtype=np.int64)
    cdef long long[::1] cc = counts
    cdef long long ties = 0
    cdef Py_ssize_t v, i, arg
    cdef long long best, val
    cdef bint tied
    with nogil:
        for v in range(n):
            best = dd[0, v]
            arg = 0
            tied = False
            for i in range(1, k):
                val = dd[i, v]
                if val < best:
                    best = val
                    arg = i
                    tied = False
                elif val == best:
                    tied = True
            if tied:
                ties += 1
            else:
                cc[arg] += 1
    return counts, int(ties)


cdef long long _survey(Py_ssize_t n2, long long *partner, long long *seen,
                       long long *counts, long long *out_pairings,
                       bint collect_trivalent, long long stamp) nogil:
    """Iterative enumeration of pairings with per-leaf genus or cycle-type work.

    Uses an explicit stack of (a, b) matches; emulates the recursive matcher.
    Returns the number of collected trivalent pairings (if collecting).
    """
    cdef long long *stack_a = <long long *> malloc((n2 // 2 + 1) * sizeof(long long))
    cdef long long *stack_b = <long long *> malloc((n2 // 2 + 1) * sizeof(long long))
    cdef Py_ssize_t depth = 0
    cdef long long a, b, h, cycles, length
    cdef Py_ssize_t i
    cdef bint ok, descending = True
    cdef long long collected = 0
    if stack_a == NULL or stack_b == NULL:
        if stack_a != NULL:
            free(stack_a)
        if stack_b != NULL:
            free(stack_b)
        return -1
    while True:
        if descending:
            a = -1
            for i in range(n2):
                if partner[i] < 0:
                    a = i
                    break
            if a < 0:
                # leaf: analyse sigma = (partner[h] + 1) mod n2
                stamp += 1
                if collect_trivalent:
                    ok = True
                    for i in range(n2):
                        if seen[i] != stamp:
                            h = i
                            length = 0
                            while seen[h] != stamp:
                                seen[h] = stamp
                                h = (partner[h] + 1) % n2
                                length += 1
                            if length != 3:
                                ok = False
                    if ok:
                        for i in range(n2):
                            out_pairings[collected * n2 + i] = partner[i]
                        collected += 1
                else:
                    cycles = 0
                    for i in range(n2):
                        if seen[i] != stamp:
                            cycles += 1
                            h = i
                            while seen[h] != stamp:
                                seen[h] = stamp
                                h = (partner[h] + 1) % n2
                    counts[(1 + n2 // 2 - cycles) // 2] += 1
                descending = False
                continue
            b = a + 1
            while partner[b] >= 0:
                b += 1
            partner[a] = b
            partner[b] = a
            stack_a[depth] = a
            stack_b[depth] = b
            depth += 1
        else:
            # backtrack: advance the top match or pop
            if depth == 0:
                break
            depth -= 1
            a = stack_a[depth]
            b = stack_b[depth]
            partner[a] = -1
            partner[b] = -1
            b += 1
            while b < n2 and partner[b] >= 0:
                b += 1
            if b < n2:
                partner[a] = b
                partner[b] = a
                stack_a[depth] = a
                stack_b[depth] = b
                depth += 1
                descending = True
    free(stack_a)
    free(stack_b)
    return collected


def polygon_gluing_genus_counts(n):
    cdef Py_ssize_t n2 = 2 * n
    counts = np.zeros(n // 2 + 1, dtype=np.int64)
    cdef long long[::1] cc = counts
    cdef long long *partner = <long long *> malloc(n2 * sizeof(long long))
    cdef long long *seen = <long long *> malloc(n2 * sizeof(long long))
    cdef Py_ssize_t i
    cdef long long rc
    if partner == NULL or seen == NULL:
        raise MemoryError
    try:
        with nogil:
            for i in range(n2):
                partner[i] = -1
                seen[i] = 0
            rc = _survey(n2, partner, seen, &cc[0], NULL, False, 0)
        if rc < 0:
            raise MemoryError
        return counts
    finally:
        free(partner)
        free(seen)


def trivalent_one_face_pairings(n):
    cdef Py_ssize_t n2 = 2 * n
    if n2 % 3:
        return np.zeros((0, n2), dtype=np.int64)
    # upper bound on trivalent gluings: generous buffer sized by a first pass
    cdef long long capacity = 1
    cdef Py_ssize_t i
    for i in range(1, n + 1):
        capacity = capacity * (2 * i - 1)
        if capacity > 2_000_000:
            capacity = 2_000_000
            break
    buf = np.zeros((capacity, n2), dtype=np.int64)
    cdef long long[:, ::1] bb = buf
    cdef long long *partner = <long long *> malloc(n2 * sizeof(long long))
    cdef long long *seen = <long long *> malloc(n2 * sizeof(long long))
    cdef long long collected
    if partner == NULL or seen == NULL:
        raise MemoryError
    try:
        with nogil:
            for i in range(n2):
                partner[i] = -1
                seen[i] = 0
            collected = _survey(n2, partner, seen, NULL, &bb[0, 0], True, 0)
        if collected < 0:
            raise MemoryError
        return buf[:collected].copy()
    finally:
        free(partner)
        free(seen)
