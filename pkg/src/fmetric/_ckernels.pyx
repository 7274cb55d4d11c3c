# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernels: minimum chain sums, the regularity triple scan and
brute-force chain enumeration.

Must stay bit-compatible with ``_pykernels``: same elimination order,
same tie breaking, same generator dispatch (libm arithmetic on both
sides).  The test suite enforces parity.
"""

from libc.math cimport log, INFINITY, NAN

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "c"


cdef inline double _gen_value(int gen_id, double t) noexcept nogil:
    if gen_id == 0:
        return log(t)
    elif gen_id == 1:
        return -1.0 / t
    return log(t) + t


def floyd_warshall(dist):
    """All-pairs minimum chain sums with a predecessor matrix.

    Returns (sums, pred) with pred[i, j] the predecessor of j on the
    minimal chain i -> j (-1 on the diagonal).  Strict-improvement
    updates with the intermediate index ascending keep ties on the chain
    through the lowest intermediate.
    """
    d_arr = np.array(dist, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] d = d_arr
    cdef Py_ssize_t n = d.shape[0]
    pred_arr = np.empty((n, n), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] pred = pred_arr
    cdef Py_ssize_t i, j, k
    cdef double via
    for i in range(n):
        for j in range(n):
            pred[i, j] = i
        pred[i, i] = -1
    with nogil:
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    via = d[i, k] + d[k, j]
                    if via < d[i, j]:
                        d[i, j] = via
                        pred[i, j] = pred[k, j]
    return d_arr, pred_arr


def regularity_violations(dist, double phi, double eps):
    """Ordered triples (x, y, z) with D[x,y] < phi, D[y,z] < phi, D[x,z] >= eps.

    Returned as an (m, 3) int64 array in lexicographic scan order.
    """
    d_arr = np.ascontiguousarray(dist, dtype=np.float64)
    cdef const double[:, ::1] d = d_arr
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t x, y, z
    out = []
    for x in range(n):
        for y in range(n):
            if d[x, y] >= phi:
                continue
            for z in range(n):
                if d[y, z] < phi and d[x, z] >= eps:
                    out.append((x, y, z))
    return np.array(out, dtype=np.int64).reshape(-1, 3)


def d3_bruteforce_scan(dist, int gen_id, double alpha, Py_ssize_t max_len, long long cap):
    """Enumerate chains and track the worst relaxed-triangle margin.

    Same contract and traversal order as the pure-Python kernel: one
    depth-first tree per start x, chains tested at endpoints v > x with
    D[x, v] > 0, margins f(chain sum) + alpha - f(D[x, v]) with zero sums
    counting as -inf.
    """
    if max_len < 2:
        raise ValueError(f"max_len must be >= 2, got {max_len}")
    d_arr = np.ascontiguousarray(dist, dtype=np.float64)
    cdef const double[:, ::1] d = d_arr
    cdef Py_ssize_t n = d.shape[0]
    fD_arr = np.full((n, n), NAN)
    cdef double[:, ::1] fD = fD_arr
    cdef Py_ssize_t x, v, depth, i
    for x in range(n):
        for v in range(n):
            if v != x and d[x, v] > 0.0:
                fD[x, v] = _gen_value(gen_id, d[x, v])
    pos_arr = np.zeros(max_len, dtype=np.int64)
    acc_arr = np.zeros(max_len, dtype=np.float64)
    cand_arr = np.zeros(max_len, dtype=np.int64)
    wchain_arr = np.zeros(max_len, dtype=np.int64)
    cdef cnp.int64_t[::1] pos = pos_arr
    cdef double[::1] acc = acc_arr
    cdef cnp.int64_t[::1] cand = cand_arr
    cdef cnp.int64_t[::1] wchain = wchain_arr
    cdef long long tested = 0
    cdef double worst = INFINITY
    cdef Py_ssize_t worst_x = -1, worst_y = -1, worst_len = 0
    cdef bint exceeded = False
    cdef double s, margin
    with nogil:
        for x in range(n):
            depth = 0
            pos[0] = x
            acc[0] = 0.0
            cand[0] = 0
            while depth >= 0:
                v = cand[depth] if depth < max_len - 1 else n
                while v < n and v == pos[depth]:
                    v += 1
                if v >= n:
                    depth -= 1
                    continue
                cand[depth] = v + 1
                s = acc[depth] + d[pos[depth], v]
                depth += 1
                pos[depth] = v
                acc[depth] = s
                cand[depth] = 0
                if v > x and d[x, v] > 0.0:
                    tested += 1
                    if tested > cap:
                        exceeded = True
                        break
                    if s > 0.0:
                        margin = _gen_value(gen_id, s) + alpha - fD[x, v]
                    else:
                        margin = -INFINITY
                    if margin < worst:
                        worst = margin
                        worst_x = x
                        worst_y = v
                        worst_len = depth + 1
                        for i in range(worst_len):
                            wchain[i] = pos[i]
            if exceeded:
                break
    chain = [int(wchain[i]) for i in range(worst_len)]
    return bool(exceeded), int(tested), float(worst), int(worst_x), int(worst_y), chain
