"""Finite distance matrices and the F-metric axiom checks.

A finite space is a labeled point set with a symmetric nonnegative
distance matrix D.  The three axioms verified here are: off-diagonal
positivity (D1), symmetry (D2, enforced at load time) and the relaxed
chain inequality (D3): whenever D(x, y) > 0, f(D(x, y)) must not exceed
f(chain sum) + alpha for every chain joining x and y.

Because the carrier is finite and weights are nonnegative, the infimum
of chain sums is attained by a simple path, so (D3) reduces to a single
comparison per pair against the all-pairs minimum chain sum; every
report carries that reduction note.  An independent brute-force checker
enumerates chains explicitly and serves as the oracle route.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .errors import ChainBudgetError, SpaceFormatError
from .generators import KERNEL_IDS, Witness

# Asymmetries above this are load errors; below, the matrix is averaged.
SYMMETRY_TOL = 1e-9

# Comparison tolerance after f-evaluation ((D3)) and for raw-scale
# triangle checks; the CLI overrides it via FMETRIC_TOL.
DEFAULT_TOL = 1e-9

DEFAULT_CHAIN_CAP = 10_000_000

FINITE_CARRIER_NOTE = ("chain infimum computed as all-pairs shortest paths "
                       "on the finite loaded point set")


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """Labeled point set with a validated distance matrix.

    ``asymmetry`` records the largest |D[i,j] - D[j,i]| repaired by
    averaging at load time (0.0 for exactly symmetric input).
    """

    labels: tuple[str, ...]
    dist: np.ndarray
    asymmetry: float = 0.0

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


def make_space(matrix, labels=None) -> FiniteSpace:
    """Validate a raw matrix and wrap it as a FiniteSpace.

    Errors on non-square/non-finite/negative input, nonzero diagonal,
    duplicate labels and asymmetry beyond SYMMETRY_TOL; asymmetry below
    that is repaired by averaging with the transpose.
    """
    m = np.array(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise SpaceFormatError(f"matrix must be square, got shape {m.shape}")
    n = m.shape[0]
    if labels is None:
        labels = tuple(f"p{i}" for i in range(n))
    else:
        labels = tuple(str(lbl) for lbl in labels)
    if len(labels) != n:
        raise SpaceFormatError(f"{len(labels)} labels for a {n}x{n} matrix")
    if len(set(labels)) != n:
        raise SpaceFormatError("duplicate labels")
    if not np.all(np.isfinite(m)):
        raise SpaceFormatError("matrix entries must be finite")
    if np.any(m < 0):
        i, j = np.argwhere(m < 0)[0]
        raise SpaceFormatError(f"negative entry at ({i}, {j}): {m[i, j]}")
    if np.any(np.diag(m) != 0.0):
        i = int(np.argwhere(np.diag(m) != 0.0)[0][0])
        raise SpaceFormatError(f"nonzero diagonal at ({i}, {i}): {m[i, i]}")
    gap = float(np.max(np.abs(m - m.T))) if n else 0.0
    if gap > SYMMETRY_TOL:
        i, j = np.unravel_index(int(np.argmax(np.abs(m - m.T))), m.shape)
        raise SpaceFormatError(
            f"asymmetric: D[{i},{j}]={m[i, j]} vs D[{j},{i}]={m[j, i]}")
    if gap > 0.0:
        m = 0.5 * (m + m.T)
    m.flags.writeable = False
    return FiniteSpace(labels, m, gap)


def space_to_dict(space: FiniteSpace) -> dict:
    return {"labels": list(space.labels),
            "matrix": [[float(v) for v in row] for row in space.dist]}


def space_from_dict(doc) -> FiniteSpace:
    if not isinstance(doc, dict):
        raise SpaceFormatError(f"space document must be an object, got {type(doc).__name__}")
    missing = {"labels", "matrix"} - doc.keys()
    if missing:
        raise SpaceFormatError(f"space document missing keys: {sorted(missing)}")
    return make_space(doc["matrix"], doc["labels"])


def _sniff_format(path: Path, fmt: str | None) -> str:
    if fmt is not None:
        if fmt not in ("json", "csv"):
            raise SpaceFormatError(f"unknown space format {fmt!r}")
        return fmt
    return "csv" if path.suffix.lower() in (".csv", ".tsv") else "json"


def load_space(path, fmt: str | None = None) -> FiniteSpace:
    """Load a space document (JSON schema or separated-values table).

    The format is taken from ``fmt`` or sniffed from the suffix
    (.csv/.tsv, everything else JSON).
    """
    path = Path(path)
    fmt = _sniff_format(path, fmt)
    text = path.read_text()
    if fmt == "json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpaceFormatError(f"{path}: invalid JSON: {exc}") from exc
        return space_from_dict(doc)
    rows = list(csv.reader(text.splitlines()))
    if not rows:
        raise SpaceFormatError(f"{path}: empty table")
    labels = rows[0]
    try:
        matrix = [[float(cell) for cell in row] for row in rows[1:]]
    except ValueError as exc:
        raise SpaceFormatError(f"{path}: non-numeric matrix cell: {exc}") from exc
    if any(len(row) != len(labels) for row in matrix) or len(matrix) != len(labels):
        raise SpaceFormatError(f"{path}: table is not a square matrix with a label header")
    return make_space(matrix, labels)


def save_space(space: FiniteSpace, path, fmt: str | None = None) -> None:
    """Write a space document; floats use repr so load/save round-trips bit-exactly."""
    path = Path(path)
    if _sniff_format(path, fmt) == "json":
        path.write_text(json.dumps(space_to_dict(space), indent=2, sort_keys=True) + "\n")
        return
    lines = [",".join(_csv_cell(lbl) for lbl in space.labels)]
    for row in space.dist:
        lines.append(",".join(repr(float(v)) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _csv_cell(text: str) -> str:
    if any(c in text for c in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class D1Verdict:
    """Off-diagonal positivity; ``pair`` is the first off-diagonal zero."""

    passed: bool
    pair: tuple[int, int] | None = None


@dataclass(frozen=True)
class D2Verdict:
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class D3Verdict:
    """Relaxed chain inequality at the minimal chain sums.

    On failure: ``pair`` is the first violating pair in scan order,
    ``chain`` the reconstructed minimal chain, ``lhs`` = f(D(x, y)) and
    ``rhs`` = f(min chain sum) + alpha.  ``violations`` counts all
    violating pairs.
    """

    passed: bool
    pair: tuple[int, int] | None = None
    chain: tuple[int, ...] = ()
    lhs: float | None = None
    rhs: float | None = None
    violations: int = 0
    note: str = FINITE_CARRIER_NOTE


@dataclass(frozen=True)
class BruteForceVerdict:
    """Chain-enumeration verdict; evidence is the worst-margin chain."""

    passed: bool
    pair: tuple[int, int] | None = None
    chain: tuple[int, ...] = ()
    lhs: float | None = None
    rhs: float | None = None
    chains_tested: int = 0


@dataclass(frozen=True)
class TriangleVerdict:
    """Plain triangle inequality; ``triple`` is the first (x, y, z) with
    D[x,z] > D[x,y] + D[y,z]."""

    passed: bool
    triple: tuple[int, int, int] | None = None
    lhs: float | None = None
    rhs: float | None = None


@dataclass(frozen=True)
class AxiomReport:
    d1: D1Verdict
    d2: D2Verdict
    d3: D3Verdict

    @property
    def passed(self) -> bool:
        return self.d1.passed and self.d2.passed and self.d3.passed


# ---------------------------------------------------------------------------
# checks


def min_chain_paths(space: FiniteSpace):
    """Minimum chain sums plus the predecessor matrix for path evidence."""
    return kernels.floyd_warshall(space.dist)


def min_chain_sums(space: FiniteSpace) -> np.ndarray:
    """Entry (i, j) is the minimum over all chains i -> j of the edge sum.

    The infimum over the unbounded chain family is attained: weights are
    nonnegative, so revisiting a point never decreases a sum and simple
    paths suffice.
    """
    sums, _ = kernels.floyd_warshall(space.dist)
    return sums


def reconstruct_chain(pred, i: int, j: int) -> tuple[int, ...]:
    """Minimal chain i -> j from a predecessor matrix (lowest-intermediate ties)."""
    if i == j:
        return (int(i),)
    rev = [int(j)]
    k = int(j)
    while k != i:
        k = int(pred[i][k])
        rev.append(k)
        if len(rev) > len(pred) + 1:
            raise RuntimeError("predecessor matrix contains a cycle")
    return tuple(reversed(rev))


def check_d1(space: FiniteSpace) -> D1Verdict:
    """Off-diagonal entries must be strictly positive (zero diagonal is a
    load-time invariant)."""
    d = space.dist
    for i in range(space.n):
        for j in range(i + 1, space.n):
            if d[i, j] == 0.0:
                return D1Verdict(False, (i, j))
    return D1Verdict(True)


def check_d2(space: FiniteSpace) -> D2Verdict:
    """Symmetry holds by construction; reported explicitly for traceability."""
    if space.asymmetry > 0.0:
        return D2Verdict(True, f"symmetrized at load (max asymmetry {space.asymmetry:g})")
    return D2Verdict(True, "symmetry enforced at load")


def check_d3(space: FiniteSpace, w: Witness, tol: float = DEFAULT_TOL) -> D3Verdict:
    """Relaxed chain inequality, checked at the minimal chain sums.

    f nondecreasing makes the quantification over all chains equivalent
    to the comparison at the minimal sum.  Pairs with D(x, y) = 0 are
    skipped (their premise is false; D1 flags them separately).  A zero
    minimal sum counts as f = -inf, the 0+ limit.
    """
    sums, pred = kernels.floyd_warshall(space.dist)
    f = w.generator
    first = None
    violations = 0
    for i in range(space.n):
        for j in range(i + 1, space.n):
            dij = float(space.dist[i, j])
            if dij <= 0.0:
                continue
            s = float(sums[i, j])
            lhs = f.value(dij)
            rhs = (f.value(s) if s > 0.0 else -math.inf) + w.alpha
            if lhs > rhs + tol:
                violations += 1
                if first is None:
                    first = ((i, j), reconstruct_chain(pred, i, j), lhs, rhs)
    if first is None:
        return D3Verdict(True)
    pair, chain, lhs, rhs = first
    return D3Verdict(False, pair, chain, lhs, rhs, violations)


def check_d3_bruteforce(space: FiniteSpace, w: Witness, max_len: int,
                        cap: int = DEFAULT_CHAIN_CAP,
                        tol: float = DEFAULT_TOL) -> BruteForceVerdict:
    """Independent (D3) oracle: enumerate every chain of length <= max_len
    without immediate repetition and test the inequality on each.

    Agrees with check_d3 whenever max_len >= n, since the minimal sum is
    attained by a simple path.  Intended for small spaces (n <= 8); the
    enumeration stops with ChainBudgetError beyond ``cap`` chains.
    """
    if max_len < 2:
        raise ValueError(f"max_len must be >= 2, got {max_len}")
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    gen_id = KERNEL_IDS.get(w.generator.name)
    if gen_id is None:
        raise ValueError(f"no kernel dispatch for generator {w.generator.name!r}")
    exceeded, tested, margin, wx, wy, wchain = kernels.d3_bruteforce_scan(
        space.dist, gen_id, w.alpha, max_len, cap)
    if exceeded:
        raise ChainBudgetError(
            f"chain enumeration exceeded the cap of {cap} chains "
            f"(n={space.n}, max_len={max_len})")
    if tested == 0 or wx < 0:
        return BruteForceVerdict(True, chains_tested=tested)
    lhs = w.generator.value(float(space.dist[wx, wy]))
    rhs = margin + lhs
    passed = margin >= -tol
    return BruteForceVerdict(passed, (wx, wy), tuple(wchain), lhs, rhs, tested)


def check_axioms(space: FiniteSpace, w: Witness, tol: float = DEFAULT_TOL) -> AxiomReport:
    """Aggregate (D1), (D2), (D3) into one report."""
    return AxiomReport(check_d1(space), check_d2(space), check_d3(space, w, tol))


def is_metric(space: FiniteSpace, tol: float = DEFAULT_TOL) -> TriangleVerdict:
    """Plain triangle inequality over all ordered triples.

    Distinguishes true metrics from the strictly larger class the relaxed
    chain inequality admits.
    """
    d = space.dist
    n = space.n
    for x in range(n):
        for y in range(n):
            if y == x:
                continue
            for z in range(n):
                if z == x or z == y:
                    continue
                lhs = float(d[x, z])
                rhs = float(d[x, y] + d[y, z])
                if lhs > rhs + tol:
                    return TriangleVerdict(False, (x, y, z), lhs, rhs)
    return TriangleVerdict(True)
