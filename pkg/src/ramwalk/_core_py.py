"""Pure-Python (numpy) fallback for the compiled kernels in ``_core``.

Every function here mirrors its compiled counterpart operation for
operation: integer kernels are exactly equal, and the Jacobi rotations apply
the same IEEE double arithmetic in the same order, so results agree bitwise
with the extension (which is built with FMA contraction disabled).
"""

from __future__ import annotations

from collections import deque

import numpy as np


def jacobi_sweeps(a, v, want_vectors, eps, max_sweeps):
    """Run cyclic Jacobi sweeps in place on the symmetric matrix ``a``.

    Only the upper triangle of ``a`` is read or written; on return the
    diagonal holds the (unsorted) eigenvalues.  ``v`` accumulates the
    rotations column-wise when ``want_vectors`` is true.  Returns the number
    of sweeps performed, or -1 if the off-diagonal maximum is still above
    ``eps`` after ``max_sweeps`` sweeps.
    """
    n = a.shape[0]
    if n < 2:
        return 0
    iu = np.triu_indices(n, 1)
    for sweep in range(1, max_sweeps + 1):
        off = float(np.max(np.abs(a[iu])))
        if off <= eps:
            return sweep - 1
        # Threshold pass for the first three sweeps; order-independent so the
        # compiled path makes identical skip decisions.
        tresh = 0.2 * off / n if sweep < 4 else 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                apq = a[i, j]
                g = 100.0 * abs(apq)
                if (
                    sweep > 4
                    and abs(a[i, i]) + g == abs(a[i, i])
                    and abs(a[j, j]) + g == abs(a[j, j])
                ):
                    a[i, j] = 0.0
                elif abs(apq) > tresh:
                    h = a[j, j] - a[i, i]
                    if abs(h) + g == abs(h):
                        t = apq / h
                    else:
                        theta = 0.5 * h / apq
                        t = 1.0 / (abs(theta) + np.sqrt(1.0 + theta * theta))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / np.sqrt(1.0 + t * t)
                    s = t * c
                    zeta = s / (1.0 + c)
                    h = t * apq
                    a[i, i] -= h
                    a[j, j] += h
                    a[i, j] = 0.0
                    gk = a[:i, i].copy()
                    hk = a[:i, j].copy()
                    a[:i, i] = gk - s * (hk + gk * zeta)
                    a[:i, j] = hk + s * (gk - hk * zeta)
                    gk = a[i, i + 1 : j].copy()
                    hk = a[i + 1 : j, j].copy()
                    a[i, i + 1 : j] = gk - s * (hk + gk * zeta)
                    a[i + 1 : j, j] = hk + s * (gk - hk * zeta)
                    gk = a[i, j + 1 :].copy()
                    hk = a[j, j + 1 :].copy()
                    a[i, j + 1 :] = gk - s * (hk + gk * zeta)
                    a[j, j + 1 :] = hk + s * (gk - hk * zeta)
                    if want_vectors:
                        gk = v[:, i].copy()
                        hk = v[:, j].copy()
                        v[:, i] = gk - s * (hk + gk * zeta)
                        v[:, j] = hk + s * (gk - hk * zeta)
    return -1


def nb_walk_table(nbrs, p, src, t_max):
    """Exact counts of non-backtracking walks from ``src``, lengths 0..t_max.

    Returns an int64 array of shape (t_max + 1, n).  Callers must ensure the
    counts fit in int64 (see ``cheby.safe_walk_t_max``).
    """
    n = nbrs.shape[0]
    out = np.zeros((t_max + 1, n), dtype=np.int64)
    out[0, src] = 1
    if t_max == 0:
        return out
    out[1, nbrs[src]] = 1
    for s in range(1, t_max):
        coef = p + 1 if s == 1 else p
        out[s + 1] = out[s][nbrs].sum(axis=1, dtype=np.int64) - coef * out[s - 1]
    return out


def bfs_distances(nbrs, src):
    """Hop distances from ``src``; unreachable vertices get -1."""
    n = nbrs.shape[0]
    dist = np.full(n, -1, dtype=np.int32)
    dist[src] = 0
    frontier = np.array([src], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        nxt = np.unique(nbrs[frontier].ravel())
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = level
        frontier = nxt
    return dist


def girth_scan(nbrs):
    """Length of the shortest cycle, or 0 if the graph is acyclic.

    Truncated BFS from every vertex; a non-tree edge (u, w) closes a cycle of
    length <= dist[u] + dist[w] + 1, and scanning all sources attains the
    girth exactly.
    """
    n, d = nbrs.shape
    best = 0
    dist = np.empty(n, dtype=np.int32)
    parent = np.empty(n, dtype=np.int32)
    for src in range(n):
        if best == 3:
            break
        dist.fill(-1)
        parent.fill(-1)
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            du = int(dist[u])
            if best and 2 * du >= best:
                break
            for k in range(d):
                w = int(nbrs[u, k])
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    cand = du + int(dist[w]) + 1
                    if best == 0 or cand < best:
                        best = cand
    return best
