"""Shared fixtures and independent oracles.

The oracles here use different algorithms than the package (exhaustive
itertools enumeration instead of dynamic programming or a shared DFS
tree), so every comparison runs two independent routes to the same
quantity.
"""

import itertools
import math

import numpy as np
import pytest

from fmetric import Generator, Witness, squared_space


@pytest.fixture
def sq3():
    return squared_space(3)


@pytest.fixture
def sq4():
    return squared_space(4)


@pytest.fixture
def w_log3():
    return Witness(Generator("log"), math.log(3.0))


def simple_path_min_sums(dist) -> np.ndarray:
    """Minimum chain sums by exhaustive simple-path enumeration.

    Nonnegative weights make simple paths sufficient; practical for
    n <= 7.  Sums are accumulated left to right, matching the kernels.
    """
    d = np.asarray(dist, dtype=np.float64)
    n = d.shape[0]
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            best = float(d[i, j])
            rest = [k for k in range(n) if k != i and k != j]
            for r in range(1, len(rest) + 1):
                for mid in itertools.permutations(rest, r):
                    path = (i, *mid, j)
                    s = 0.0
                    for a, b in zip(path, path[1:]):
                        s += float(d[a, b])
                    if s < best:
                        best = s
            out[i, j] = best
    return out


def chain_scan_oracle(dist, gen: Generator, alpha: float, max_len: int):
    """Chain enumeration via itertools.product.

    Mirrors the kernel contract (no immediate repetition, endpoints
    v > x with D[x, v] > 0, zero sums count as -inf) without sharing
    any traversal code with it.  Returns (tested, worst_margin,
    worst_pair).
    """
    d = np.asarray(dist, dtype=np.float64)
    n = d.shape[0]
    tested = 0
    worst = math.inf
    worst_pair = None
    for x in range(n):
        for length in range(2, max_len + 1):
            for tail in itertools.product(range(n), repeat=length - 1):
                chain = (x, *tail)
                if any(a == b for a, b in zip(chain, chain[1:])):
                    continue
                v = chain[-1]
                if v <= x or not d[x, v] > 0.0:
                    continue
                tested += 1
                s = 0.0
                for a, b in zip(chain, chain[1:]):
                    s += float(d[a, b])
                lhs = gen.value(float(d[x, v]))
                margin = (gen.value(s) if s > 0.0 else -math.inf) + alpha - lhs
                if margin < worst:
                    worst = margin
                    worst_pair = (x, v)
    return tested, worst, worst_pair
