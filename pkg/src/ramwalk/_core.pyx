# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: cyclic Jacobi eigensolver, non-backtracking walk counts,
BFS distances, and girth scan.

Semantics match ``_core_py`` exactly; the module is built with
-ffp-contract=off so the rotation arithmetic stays bit-identical to the
fallback.  Long-running loops release the GIL.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def jacobi_sweeps(double[:, ::1] a, double[:, ::1] v, bint want_vectors,
                  double eps, int max_sweeps):
    """See ``_core_py.jacobi_sweeps``."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k
    cdef int sweep
    cdef double off, tresh, apq, g, h, t, theta, c, s, zeta, gk, hk
    if n < 2:
        return 0
    for sweep in range(1, max_sweeps + 1):
        off = 0.0
        with nogil:
            for i in range(n - 1):
                for j in range(i + 1, n):
                    if fabs(a[i, j]) > off:
                        off = fabs(a[i, j])
        if off <= eps:
            return sweep - 1
        tresh = 0.2 * off / n if sweep < 4 else 0.0
        with nogil:
            for i in range(n - 1):
                for j in range(i + 1, n):
                    apq = a[i, j]
                    g = 100.0 * fabs(apq)
                    if (sweep > 4
                            and fabs(a[i, i]) + g == fabs(a[i, i])
                            and fabs(a[j, j]) + g == fabs(a[j, j])):
                        a[i, j] = 0.0
                    elif fabs(apq) > tresh:
                        h = a[j, j] - a[i, i]
                        if fabs(h) + g == fabs(h):
                            t = apq / h
                        else:
                            theta = 0.5 * h / apq
                            t = 1.0 / (fabs(theta) + sqrt(1.0 + theta * theta))
                            if theta < 0.0:
                                t = -t
                        c = 1.0 / sqrt(1.0 + t * t)
                        s = t * c
                        zeta = s / (1.0 + c)
                        h = t * apq
                        a[i, i] -= h
                        a[j, j] += h
                        a[i, j] = 0.0
                        for k in range(i):
                            gk = a[k, i]
                            hk = a[k, j]
                            a[k, i] = gk - s * (hk + gk * zeta)
                            a[k, j] = hk + s * (gk - hk * zeta)
                        for k in range(i + 1, j):
                            gk = a[i, k]
                            hk = a[k, j]
                            a[i, k] = gk - s * (hk + gk * zeta)
                            a[k, j] = hk + s * (gk - hk * zeta)
                        for k in range(j + 1, n):
                            gk = a[i, k]
                            hk = a[j, k]
                            a[i, k] = gk - s * (hk + gk * zeta)
                            a[j, k] = hk + s * (gk - hk * zeta)
                        if want_vectors:
                            for k in range(n):
                                gk = v[k, i]
                                hk = v[k, j]
                                v[k, i] = gk - s * (hk + gk * zeta)
                                v[k, j] = hk + s * (gk - hk * zeta)
    return -1


def nb_walk_table(const int[:, ::1] nbrs, long long p, Py_ssize_t src, Py_ssize_t t_max):
    """See ``_core_py.nb_walk_table``."""
    cdef Py_ssize_t n = nbrs.shape[0]
    cdef Py_ssize_t d = nbrs.shape[1]
    cdef Py_ssize_t s, vtx, k
    cdef long long coef, acc
    out_arr = np.zeros((t_max + 1, n), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    out[0, src] = 1
    if t_max == 0:
        return out_arr
    with nogil:
        for k in range(d):
            out[1, nbrs[src, k]] = 1
        for s in range(1, t_max):
            coef = p + 1 if s == 1 else p
            for vtx in range(n):
                acc = 0
                for k in range(d):
                    acc += out[s, nbrs[vtx, k]]
                out[s + 1, vtx] = acc - coef * out[s - 1, vtx]
    return out_arr


def bfs_distances(const int[:, ::1] nbrs, Py_ssize_t src):
    """See ``_core_py.bfs_distances``."""
    cdef Py_ssize_t n = nbrs.shape[0]
    cdef Py_ssize_t d = nbrs.shape[1]
    cdef Py_ssize_t head, tail, u, k, w
    dist_arr = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] dist = dist_arr
    cdef int[::1] queue = queue_arr
    with nogil:
        dist[src] = 0
        queue[0] = <int> src
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(d):
                w = nbrs[u, k]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue[tail] = <int> w
                    tail += 1
    return dist_arr


def girth_scan(const int[:, ::1] nbrs):
    """See ``_core_py.girth_scan``."""
    cdef Py_ssize_t n = nbrs.shape[0]
    cdef Py_ssize_t d = nbrs.shape[1]
    cdef Py_ssize_t src, head, tail, u, k, w
    cdef int best = 0, du, cand
    dist_arr = np.empty(n, dtype=np.int32)
    parent_arr = np.empty(n, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] dist = dist_arr
    cdef int[::1] parent = parent_arr
    cdef int[::1] queue = queue_arr
    with nogil:
        for src in range(n):
            if best == 3:
                break
            for u in range(n):
                dist[u] = -1
                parent[u] = -1
            dist[src] = 0
            queue[0] = <int> src
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[u]
                if best != 0 and 2 * du >= best:
                    break
                for k in range(d):
                    w = nbrs[u, k]
                    if dist[w] < 0:
                        dist[w] = du + 1
                        parent[w] = <int> u
                        queue[tail] = <int> w
                        tail += 1
                    elif w != parent[u]:
                        cand = du + dist[w] + 1
                        if best == 0 or cand < best:
                            best = cand
    return best
