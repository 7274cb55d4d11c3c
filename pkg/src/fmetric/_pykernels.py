"""Pure-Python reference kernels.

Mirror of ``_ckernels``: same elimination order, same tie breaking, same
generator dispatch.  Outputs are bit-identical to the compiled kernels on
the same input (the test suite enforces parity); only speed differs.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

_NEG_INF = float("-inf")


def _gen_value(gen_id: int, t: float) -> float:
    if gen_id == 0:
        return math.log(t)
    if gen_id == 1:
        return -1.0 / t
    if gen_id == 2:
        return math.log(t) + t
    raise ValueError(f"unknown kernel generator id {gen_id}")


def floyd_warshall(dist):
    """All-pairs minimum chain sums with a predecessor matrix.

    Returns (sums, pred) where pred[i, j] is the predecessor of j on the
    minimal chain from i to j (-1 on the diagonal).  Updates only on
    strict improvement with the intermediate index ascending, so ties
    keep the chain through the lowest intermediate.
    """
    d = np.array(dist, dtype=np.float64, copy=True)
    n = d.shape[0]
    pred = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        pred[i, :] = i
        pred[i, i] = -1
    for k in range(n):
        # Row k and column k are fixed points of pass k (zero diagonal),
        # so this per-k vectorized update matches the scalar triple loop
        # bit for bit.
        via = d[:, k, None] + d[None, k, :]
        better = via < d
        d[better] = via[better]
        pred[better] = np.broadcast_to(pred[k, :], (n, n))[better]
    return d, pred


def regularity_violations(dist, phi: float, eps: float):
    """Ordered triples (x, y, z) with D[x,y] < phi, D[y,z] < phi, D[x,z] >= eps.

    Returned as an (m, 3) int64 array in lexicographic scan order.
    """
    rows = np.asarray(dist, dtype=np.float64).tolist()
    n = len(rows)
    out = []
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            if rx[y] >= phi:
                continue
            ry = rows[y]
            for z in range(n):
                if ry[z] < phi and rx[z] >= eps:
                    out.append((x, y, z))
    return np.array(out, dtype=np.int64).reshape(-1, 3)


def d3_bruteforce_scan(dist, gen_id: int, alpha: float, max_len: int, cap: int):
    """Enumerate chains and track the worst relaxed-triangle margin.

    Chains are sequences u_1..u_L (2 <= L <= max_len) with no immediate
    repetition; one depth-first tree per start x is walked once, and each
    chain ending at v > x with D[x, v] > 0 is tested (endpoint order x < v
    suffices by symmetry).  The margin of a chain is
    f(sum of edge weights) + alpha - f(D[x, v]); a zero chain sum counts
    as -inf, the 0+ limit of f.

    Returns (exceeded, tested, worst_margin, worst_x, worst_y, worst_chain).
    ``exceeded`` is set when ``tested`` passes ``cap`` and the scan stops.
    """
    if max_len < 2:
        raise ValueError(f"max_len must be >= 2, got {max_len}")
    rows = np.asarray(dist, dtype=np.float64).tolist()
    n = len(rows)
    # f at the direct distances; read only where D > 0
    fD = [[_gen_value(gen_id, rows[x][v]) if v != x and rows[x][v] > 0.0 else math.nan
           for v in range(n)] for x in range(n)]
    tested = 0
    worst = math.inf
    worst_x = worst_y = -1
    worst_chain: list[int] = []
    pos = [0] * max_len
    acc = [0.0] * max_len
    cand = [0] * max_len
    for x in range(n):
        fx = fD[x]
        rx = rows[x]
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
            prev = pos[depth]
            depth += 1
            pos[depth] = v
            s = acc[depth - 1] + rows[prev][v]
            acc[depth] = s
            cand[depth] = 0
            if v > x and rx[v] > 0.0:
                tested += 1
                if tested > cap:
                    return True, tested, worst, worst_x, worst_y, worst_chain
                if s > 0.0:
                    margin = _gen_value(gen_id, s) + alpha - fx[v]
                else:
                    margin = _NEG_INF
                if margin < worst:
                    worst = margin
                    worst_x = x
                    worst_y = v
                    worst_chain = pos[:depth + 1]
    return False, tested, worst, worst_x, worst_y, worst_chain
