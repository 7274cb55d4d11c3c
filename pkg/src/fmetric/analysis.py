"""Desk-scale exploration: balls, ball-nesting evidence, minimal slack
fitting and randomized counterexample search.

On a finite carrier both topologies are discrete, so the nesting table
is quantitative evidence about ball containment radii, not a proof of
topology equality in general.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (DEFAULT_TOL, AxiomReport, FiniteSpace, TriangleVerdict,
                   check_axioms, check_d1, is_metric, make_space,
                   min_chain_sums, space_from_dict, space_to_dict)
from .errors import NotFMetricError
from .generators import Generator, Witness
from .induced import InducedMetric


@dataclass(frozen=True)
class Ball:
    """Open ball {j : distance(center, j) < radius} under D or d."""

    center: int
    radius: float
    members: frozenset[int]
    under: str


@dataclass(frozen=True)
class NestingEntry:
    """Largest radii r' with B_d(x, r') inside B_D(x, r) and the reverse.

    When a ball already covers the whole space, r' is reported as r.
    """

    center: int
    r: float
    d_in_D: float
    D_in_d: float


def _matrix_for(obj, under: str) -> np.ndarray:
    if under == "D":
        return obj.base.dist if isinstance(obj, InducedMetric) else obj.dist
    if under == "d":
        if not isinstance(obj, InducedMetric):
            raise ValueError("selector 'd' needs an InducedMetric")
        return obj.d
    raise ValueError(f"invalid selector {under!r}; use 'D' or 'd'")


def ball(obj, center: int, radius: float, under: str = "D") -> Ball:
    """Open ball around ``center``; ``obj`` is a FiniteSpace or InducedMetric."""
    mat = _matrix_for(obj, under)
    n = mat.shape[0]
    if not 0 <= center < n:
        raise ValueError(f"center {center} out of range for {n} points")
    if not radius > 0:
        raise ValueError(f"radius must be > 0, got {radius!r}")
    members = frozenset(j for j in range(n) if mat[center, j] < radius)
    return Ball(center, float(radius), members, under)


def ball_nesting_evidence(space: FiniteSpace, im: InducedMetric) -> tuple[NestingEntry, ...]:
    """Containment radii for every center and every realized distance.

    For each center x and radius r: the largest r' with B_d(x, r')
    contained in B_D(x, r) is the smallest d-distance to a point outside
    the D-ball (strict balls, so that minimum itself is admissible), and
    symmetrically for the other direction.  On a validated finite space
    both directions are always positive.
    """
    if im.d.shape != space.dist.shape:
        raise ValueError("induced metric was not built from this space")
    n = space.n
    radii = sorted({float(v) for v in space.dist.ravel() if v > 0.0}
                   | {float(v) for v in im.d.ravel() if v > 0.0})
    entries = []
    for x in range(n):
        for r in radii:
            entries.append(NestingEntry(
                x, r,
                d_in_D=_largest_inside(im.d[x], space.dist[x], r),
                D_in_d=_largest_inside(space.dist[x], im.d[x], r)))
    return tuple(entries)


def _largest_inside(inner_row, outer_row, r: float) -> float:
    outside = [float(inner_row[j]) for j in range(len(inner_row)) if outer_row[j] >= r]
    return min(outside) if outside else r


def min_alpha(space: FiniteSpace, g: Generator) -> float:
    """Smallest slack alpha for which the chain inequality holds under g.

    Equals the largest f-gap between a direct distance and its minimal
    chain sum, clamped at zero.  Inherits the finite-carrier shortest
    path reduction.
    """
    if not check_d1(space).passed:
        raise NotFMetricError("min_alpha needs strictly positive off-diagonal "
                              "distances (D1)")
    sums = min_chain_sums(space)
    worst = 0.0
    for i in range(space.n):
        for j in range(i + 1, space.n):
            gap = g.value(float(space.dist[i, j])) - g.value(float(sums[i, j]))
            if gap > worst:
                worst = gap
    return worst


def squared_space(n: int) -> FiniteSpace:
    """The squared-integer exemplar: D[i, j] = (i - j)^2.

    Satisfies the relaxed chain inequality under log with alpha = ln(n-1)
    (unit steps give minimal chain sums |i - j|) while violating the plain
    triangle inequality for n >= 3.
    """
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    idx = np.arange(n, dtype=np.float64)
    return make_space((idx[:, None] - idx[None, :]) ** 2)


def random_space(n: int, scale: float = 1.0, seed=0) -> FiniteSpace:
    """Symmetric matrix with off-diagonal entries uniform in (0, scale].

    Deterministic for a fixed seed; ``seed`` may be an int or a sequence
    (used for counter-derived per-trial seeds).
    """
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    if not scale > 0:
        raise ValueError(f"scale must be > 0, got {scale!r}")
    rng = np.random.default_rng(seed)
    m = np.zeros((n, n))
    iu = np.triu_indices(n, k=1)
    m[iu] = scale * (1.0 - rng.random(len(iu[0])))
    m = m + m.T
    return make_space(m)


@dataclass(frozen=True)
class SearchHit:
    trial: int
    space: FiniteSpace
    axioms: AxiomReport
    metric: TriangleVerdict


@dataclass(frozen=True)
class SearchResult:
    """Spaces passing the axiom checks while failing the plain triangle
    inequality: witnesses that the relaxed inequality is strictly weaker."""

    generator: str
    alpha: float
    n: int
    seed: int
    trials: int
    hits: tuple[SearchHit, ...]


def search_fmetric_not_metric(g: Generator, alpha: float, n: int, trials: int,
                              seed: int = 0, scale: float = 1.0,
                              tol: float = DEFAULT_TOL) -> SearchResult:
    """Random search for F-metric-but-not-metric spaces.

    Trial 0 is the squared-integer template (a deterministic exhibit);
    the rest are uniform random with per-trial seeds derived by counter.
    Every hit re-validates by construction; an empty hit list is a valid
    result.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    w = Witness(g, alpha)
    hits = []
    for t in range(trials):
        space = squared_space(n) if t == 0 else random_space(n, scale, seed=(seed, t))
        report = check_axioms(space, w, tol)
        if not report.passed:
            continue
        triangle = is_metric(space, tol)
        if not triangle.passed:
            hits.append(SearchHit(t, space, report, triangle))
    return SearchResult(g.name, float(alpha), n, seed, trials, tuple(hits))


def search_result_to_dict(result: SearchResult) -> dict:
    return {
        "generator": result.generator,
        "alpha": result.alpha,
        "n": result.n,
        "seed": result.seed,
        "trials": result.trials,
        "hits": [{
            "trial": h.trial,
            "space": space_to_dict(h.space),
            "axioms_pass": h.axioms.passed,
            "triangle_violation": {
                "triple": list(h.metric.triple),
                "lhs": h.metric.lhs,
                "rhs": h.metric.rhs,
            },
        } for h in result.hits],
    }


def search_result_from_dict(doc: dict, tol: float = DEFAULT_TOL) -> SearchResult:
    """Deserialize a search result, re-validating every hit."""
    g = Generator(doc["generator"])
    w = Witness(g, float(doc["alpha"]))
    hits = []
    for h in doc["hits"]:
        space = space_from_dict(h["space"])
        report = check_axioms(space, w, tol)
        triangle = is_metric(space, tol)
        if not report.passed or triangle.passed:
            raise ValueError(f"hit at trial {h['trial']} failed revalidation")
        hits.append(SearchHit(int(h["trial"]), space, report, triangle))
    return SearchResult(doc["generator"], float(doc["alpha"]), int(doc["n"]),
                        int(doc["seed"]), int(doc["trials"]), tuple(hits))
