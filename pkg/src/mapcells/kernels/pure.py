"""Pure-Python kernels: reference implementations of the hot loops.

Every function here is mirrored bit-for-bit by the compiled extension in
``_core.pyx``; the test suite asserts the two agree on identical inputs.  The
pure versions favour clarity and are entirely adequate at desk scale, but the
large Monte-Carlo runs and the n=9 polygon surveys want the compiled ones.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"


def rotate_to_dyck(word: np.ndarray) -> np.ndarray:
    """Cycle-lemma rotation: word has n (+1)s and n+1 (-1)s, total sum -1.

    Exactly one cyclic rotation keeps all proper prefix sums >= 0 until the
    final step; dropping its last letter gives a Dyck word, uniform over the
    Catalan family when the input word is a uniform arrangement.
    """
    total = 0
    best = 1
    cut = 0
    for i, step in enumerate(word):
        total += step
        if total < best:
            best = total
            cut = i + 1
    rotated = np.concatenate([word[cut:], word[:cut]])
    return rotated[:-1].copy()


def tree_corner_tables(contour: np.ndarray, increments: np.ndarray):
    """Vertex ids and labels along the contour of a plane tree.

    ``contour`` is a Dyck word of 2n steps (+1 down into a new edge, -1 back
    up); ``increments[j]`` is the label shift of the j-th edge in contour
    (discovery) order.  Corner i sits at the vertex visited after i steps.
    Returns (vertex_of_corner, label_of_corner, n_vertices) with the root
    vertex id 0 and label 0.
    """
    n2 = len(contour)
    vertex_of = np.zeros(n2, dtype=np.int64)
    label_of = np.zeros(n2, dtype=np.int64)
    stack_v = [0]
    stack_l = [0]
    next_vertex = 1
    edge_idx = 0
    for i in range(n2):
        vertex_of[i] = stack_v[-1]
        label_of[i] = stack_l[-1]
        if contour[i] == 1:
            lab = stack_l[-1] + int(increments[edge_idx])
            edge_idx += 1
            stack_v.append(next_vertex)
            stack_l.append(lab)
            next_vertex += 1
        else:
            stack_v.pop()
            stack_l.pop()
    return vertex_of, label_of, next_vertex


def closure_edges(vertex_of: np.ndarray, label_of: np.ndarray, n_vertices: int):
    """Chain every corner to the next corner (cyclically) with label one less.

    Corners at the global minimum label connect to a fresh vertex instead.
    Returns (edge_u, edge_v, center) where center = n_vertices is the new
    vertex id; one edge per corner.
    """
    n2 = len(label_of)
    lmin = int(label_of.min())
    lmax = int(label_of.max())
    span = lmax - lmin + 1
    last_at = [-1] * span
    succ = np.empty(n2, dtype=np.int64)
    # two reverse sweeps emulate the cyclic wrap-around
    for _ in range(2):
        for i in range(n2 - 1, -1, -1):
            lab = int(label_of[i]) - lmin
            succ[i] = last_at[lab - 1] if lab > 0 else -1
            last_at[lab] = i
    edge_u = np.empty(n2, dtype=np.int64)
    edge_v = np.empty(n2, dtype=np.int64)
    center = n_vertices
    for i in range(n2):
        edge_u[i] = vertex_of[i]
        edge_v[i] = center if succ[i] < 0 else vertex_of[succ[i]]
    return edge_u, edge_v, center


def adjacency_csr(edge_u: np.ndarray, edge_v: np.ndarray, n_vertices: int):
    """Undirected adjacency in CSR form (each edge appears in both lists)."""
    m = len(edge_u)
    deg = np.zeros(n_vertices, dtype=np.int64)
    for i in range(m):
        deg[edge_u[i]] += 1
        deg[edge_v[i]] += 1
    indptr = np.zeros(n_vertices + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    indices = np.empty(2 * m, dtype=np.int64)
    fill = indptr[:-1].copy()
    for i in range(m):
        u, v = edge_u[i], edge_v[i]
        indices[fill[u]] = v
        fill[u] += 1
        indices[fill[v]] = u
        fill[v] += 1
    return indptr, indices


def bfs_distances(indptr: np.ndarray, indices: np.ndarray, source: int) -> np.ndarray:
    """Graph distances from one source; unreachable vertices get -1."""
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    dist[source] = 0
    queue[0] = source
    head, tail = 0, 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] < 0:
                dist[v] = du + 1
                queue[tail] = v
                tail += 1
    return dist


def nearest_cell_counts(dists: np.ndarray):
    """Strict nearest-neighbour tallies from a (k, V) distance table.

    Returns (counts[k], ties) where counts[i] is the number of vertices
    strictly closer to source i than to every other source.
    """
    k, n = dists.shape
    counts = np.zeros(k, dtype=np.int64)
    ties = 0
    for v in range(n):
        best = dists[0, v]
        arg = 0
        tied = False
        for i in range(1, k):
            d = dists[i, v]
            if d < best:
                best = d
                arg = i
                tied = False
            elif d == best:
                tied = True
        if tied:
            ties += 1
        else:
            counts[arg] += 1
    return counts, ties


def polygon_gluing_genus_counts(n: int) -> np.ndarray:
    """Genus tallies over all (2n-1)!! pairings of the sides of a 2n-gon.

    The map glued from a pairing ``alpha`` has sigma = phi o alpha with phi the
    full cycle, so its vertex count is the cycle count of h -> alpha[h] + 1
    (mod 2n), and its genus is (1 + n - V) / 2.
    """
    n2 = 2 * n
    counts = np.zeros(n // 2 + 1, dtype=np.int64)
    partner = [-1] * n2
    seen = [0] * n2
    stamp = 0

    def rec(n_free: int):
        nonlocal stamp
        if n_free == 0:
            stamp += 1
            cycles = 0
            for start in range(n2):
                if seen[start] != stamp:
                    cycles += 1
                    h = start
                    while seen[h] != stamp:
                        seen[h] = stamp
                        h = (partner[h] + 1) % n2
            counts[(1 + n - cycles) // 2] += 1
            return
        a = 0
        while partner[a] >= 0:
            a += 1
        for b in range(a + 1, n2):
            if partner[b] < 0:
                partner[a], partner[b] = b, a
                rec(n_free - 2)
                partner[a] = partner[b] = -1

    rec(n2)
    return counts


def trivalent_one_face_pairings(n: int) -> np.ndarray:
    """Pairings of the 2n-gon whose glued map has every vertex of degree 3.

    Returns an array of shape (count, 2n); degree-3-everywhere forces
    2n = 3V, and one-face plus Euler pins the genus.
    """
    n2 = 2 * n
    if n2 % 3:
        return np.zeros((0, n2), dtype=np.int64)
    out: list[tuple[int, ...]] = []
    partner = [-1] * n2
    seen = [0] * n2
    stamp = 0

    def rec(n_free: int):
        nonlocal stamp
        if n_free == 0:
            stamp += 1
            ok = True
            for start in range(n2):
                if seen[start] != stamp:
                    h = start
                    length = 0
                    while seen[h] != stamp:
                        seen[h] = stamp
                        h = (partner[h] + 1) % n2
                        length += 1
                    if length != 3:
                        ok = False
            if ok:
                out.append(tuple(partner))
            return
        a = 0
        while partner[a] >= 0:
            a += 1
        for b in range(a + 1, n2):
            if partner[b] < 0:
                partner[a], partner[b] = b, a
                rec(n_free - 2)
                partner[a] = partner[b] = -1

    rec(n2)
    return np.array(out, dtype=np.int64) if out else np.zeros((0, n2), dtype=np.int64)
