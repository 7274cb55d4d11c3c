"""The induced metric: minimum chain sums as a first-class object.

For a finite space passing the axiom checks, the chain-infimum distance
d(x, y) (all-pairs shortest paths over the loaded carrier) is a true
metric, with d <= D entrywise and f(D) <= f(d) + alpha per pair.  The
construction validates all of that and fails loudly if any part breaks,
since that would falsify the implementation, not the theory.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (DEFAULT_TOL, AxiomReport, FiniteSpace, check_axioms,
                   min_chain_sums, space_to_dict)
from .errors import NotFMetricError
from .generators import Generator, Witness


@dataclass(frozen=True, eq=False)
class InducedMetric:
    """Chain-infimum metric ``d`` over ``base``, validated under ``witness``."""

    base: FiniteSpace
    d: np.ndarray
    witness: Witness


@dataclass(frozen=True)
class PairRelation:
    """Per-pair comparison of D against the induced d."""

    pair: tuple[int, int]
    direct: float          # D[i, j]
    induced: float         # d[i, j]
    raw_ok: bool           # d <= D
    f_ok: bool             # f(D) <= f(d) + alpha
    f_margin: float        # f(d) + alpha - f(D)


@dataclass(frozen=True)
class CompareReport:
    passed: bool
    pairs: tuple[PairRelation, ...]


def _validate_metric(d: np.ndarray, tol: float) -> str | None:
    n = d.shape[0]
    if np.any(np.diag(d) != 0.0):
        return "nonzero diagonal"
    if not np.array_equal(d, d.T):
        return "asymmetric"
    for i in range(n):
        for j in range(n):
            if i != j and not d[i, j] > 0.0:
                return f"zero off-diagonal at ({i}, {j})"
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if d[x, z] > d[x, y] + d[y, z] + tol:
                    return f"triangle violated at ({x}, {y}, {z})"
    return None


def induced_metric(space: FiniteSpace, w: Witness, tol: float = DEFAULT_TOL) -> InducedMetric:
    """Build the induced metric; requires the base to pass the axiom checks.

    Post-validates all four metric axioms on the result (zero diagonal,
    symmetry, off-diagonal positivity, triangle inequality).
    """
    report = check_axioms(space, w, tol)
    if not report.passed:
        raise NotFMetricError(_refusal(report))
    d = min_chain_sums(space)
    defect = _validate_metric(d, tol)
    if defect is not None:
        raise RuntimeError(
            f"induced matrix failed metric validation ({defect}); "
            "this indicates an implementation bug")
    d.flags.writeable = False
    return InducedMetric(space, d, w)


def _refusal(report: AxiomReport) -> str:
    failed = [name for name, v in (("D1", report.d1), ("D2", report.d2), ("D3", report.d3))
              if not v.passed]
    return f"space is not an F-metric under this witness (failing: {', '.join(failed)})"


def compare(space: FiniteSpace, im: InducedMetric, tol: float = DEFAULT_TOL) -> CompareReport:
    """Per-pair relations between D and d: d <= D and f(D) <= f(d) + alpha.

    The two scales are reported separately: f nondecreasing does not let
    the f-scale bound be inverted into a raw-scale one.
    """
    if im.d.shape != space.dist.shape:
        raise ValueError(f"dimension mismatch: space is {space.dist.shape}, "
                         f"induced matrix is {im.d.shape}")
    f = im.witness.generator
    alpha = im.witness.alpha
    pairs = []
    passed = True
    for i in range(space.n):
        for j in range(i + 1, space.n):
            direct = float(space.dist[i, j])
            ind = float(im.d[i, j])
            raw_ok = ind <= direct
            f_margin = f.value(ind) + alpha - f.value(direct)
            f_ok = f_margin >= -tol
            passed = passed and raw_ok and f_ok
            pairs.append(PairRelation((i, j), direct, ind, raw_ok, f_ok, f_margin))
    return CompareReport(passed, tuple(pairs))


def induced_to_dict(im: InducedMetric) -> dict:
    """Space document of the induced matrix plus a derivation annotation."""
    doc = {"labels": list(im.base.labels),
           "matrix": [[float(v) for v in row] for row in im.d]}
    doc["derived_from"] = {"generator": im.witness.generator.name,
                           "alpha": float(im.witness.alpha)}
    return doc


def induced_from_dict(doc: dict) -> tuple[FiniteSpace, Witness]:
    """Re-read an induced-metric document as (space of d, witness)."""
    from .core import space_from_dict
    meta = doc.get("derived_from")
    if not isinstance(meta, dict) or "generator" not in meta or "alpha" not in meta:
        raise ValueError("missing derived_from annotation")
    space = space_from_dict({k: doc[k] for k in ("labels", "matrix")})
    return space, Witness(Generator(meta["generator"]), float(meta["alpha"]))
