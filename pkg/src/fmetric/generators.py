"""Generator functions and witnesses for F-metric verification.

A generator is a nondecreasing function f on (0, inf) that diverges to
-inf as t -> 0+.  A witness pairs a generator with a slack alpha >= 0;
the pair is the object a distance matrix is verified against.  The v1
catalog is fixed (``log``, ``neg_inverse``, ``log_plus_linear``); all
three are strictly increasing with closed-form inverses, which the test
suite uses as oracles.

The divergence condition is stated over sequences (f(t_n) -> -inf iff
t_n -> 0), but for a nondecreasing f it is equivalent to the one-sided
limit f(t) -> -inf as t -> 0+: if t_n stayed above some t0 > 0, then
f(t_n) >= f(t0) could not sink to -inf.  ``check_f2`` therefore probes
only the 0+ divergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DeltaExtractionError, GeneratorDomainError, UnknownGeneratorError

# Smallest argument probed when hunting for divergence; stays clear of
# subnormals so -1/t cannot overflow.
UNDERFLOW_FLOOR = 1e-300

# Default tolerance for floating-point ties in the monotonicity check.
F1_TIE_TOL = 1e-12

_CATALOG = {
    "log": math.log,
    "neg_inverse": lambda t: -1.0 / t,
    "log_plus_linear": lambda t: math.log(t) + t,
}

# Dispatch ids for the kernels; order is fixed, see _pykernels/_ckernels.
KERNEL_IDS = {"log": 0, "neg_inverse": 1, "log_plus_linear": 2}

CATALOG_NAMES = tuple(sorted(_CATALOG))


@dataclass(frozen=True)
class Generator:
    """A catalog generator, identified by name.

    ``params`` is reserved for parameterized generators; the v1 catalog
    takes none.
    """

    name: str
    params: tuple[float, ...] = ()

    def __post_init__(self):
        if self.name not in _CATALOG:
            raise UnknownGeneratorError(
                f"unknown generator {self.name!r}; catalog: {', '.join(CATALOG_NAMES)}")
        object.__setattr__(self, "params", tuple(self.params))

    def value(self, t: float) -> float:
        """Evaluate f(t).  Raises GeneratorDomainError for t <= 0."""
        if not t > 0:
            raise GeneratorDomainError(
                f"generator {self.name!r} is undefined at t={t!r}; domain is (0, inf)")
        return _CATALOG[self.name](t)

    def __call__(self, t: float) -> float:
        return self.value(t)


def get_generator(name: str) -> Generator:
    """Resolve a CLI/config generator name to a catalog entry."""
    return Generator(str(name))


@dataclass(frozen=True)
class Witness:
    """A (generator, alpha) pair certifying a distance matrix."""

    generator: Generator
    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (math.isfinite(a) and a >= 0.0):
            raise ValueError(f"alpha must be finite and >= 0, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)


@dataclass(frozen=True)
class F1Verdict:
    """Monotonicity check result; ``violation`` is (s, t, f(s), f(t))."""

    passed: bool
    violation: tuple[float, float, float, float] | None = None


@dataclass(frozen=True)
class F2WitnessPoint:
    target: float
    t: float
    value: float  # f(t), strictly below target


@dataclass(frozen=True)
class F2Verdict:
    """Divergence check result, one witness point per target.

    On failure ``failure`` holds (target, smallest t probed, f(t)).
    """

    passed: bool
    witnesses: tuple[F2WitnessPoint, ...] = ()
    failure: tuple[float, float, float] | None = None


def check_f1(g: Generator, grid, tol: float = F1_TIE_TOL) -> F1Verdict:
    """Verify f is nondecreasing on a strictly ascending positive grid.

    Equality is allowed; only decreases beyond ``tol`` (relative once
    |f| exceeds 1) count as violations.
    """
    grid = [float(t) for t in grid]
    if not grid:
        raise ValueError("grid must be non-empty")
    if any(t <= 0 for t in grid):
        raise ValueError("grid entries must be > 0")
    if any(s >= t for s, t in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly ascending")
    prev_t = grid[0]
    prev_f = g.value(prev_t)
    for t in grid[1:]:
        ft = g.value(t)
        allowance = tol * max(1.0, abs(prev_f), abs(ft))
        if prev_f > ft + allowance:
            return F1Verdict(False, (prev_t, t, prev_f, ft))
        prev_t, prev_f = t, ft
    return F1Verdict(True)


def check_f2(g: Generator, targets, t_hi: float) -> F2Verdict:
    """Find, per target y, a t in (0, t_hi) with f(t) < y.

    Probes t_hi/2, t_hi/4, ... down to the underflow floor.  Failing to
    cross a target means divergence was not observed; the verdict then
    carries the smallest t probed and f at it.
    """
    if not t_hi > 0:
        raise ValueError(f"t_hi must be > 0, got {t_hi!r}")
    witnesses = []
    for y in targets:
        y = float(y)
        t = 0.5 * t_hi
        while t >= UNDERFLOW_FLOOR:
            ft = g.value(t)
            if ft < y:
                witnesses.append(F2WitnessPoint(y, t, ft))
                break
            t *= 0.5
        else:
            return F2Verdict(False, tuple(witnesses), (y, 2.0 * t, g.value(2.0 * t)))
    return F2Verdict(True, tuple(witnesses))


def delta_below(g: Generator, y: float, search_hi: float, tol: float = 1e-9) -> float:
    """Largest (up to tol) delta such that 0 < t < delta implies f(t) < y.

    Bisects the monotone f over (0, search_hi].  The returned value is the
    certified-below bracket end, so the strict guarantee f(t) < y holds for
    every t <= delta; it sits within a relative ``tol`` of the true
    boundary.  On a plateau of f the left edge is returned, which is
    conservative.  Raises DeltaExtractionError when f never drops below y
    above the underflow floor.
    """
    if not search_hi > 0:
        raise ValueError(f"search_hi must be > 0, got {search_hi!r}")
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol!r}")
    y = float(y)
    if g.value(search_hi) < y:
        return float(search_hi)
    # geometric shrink until f drops below y
    hi = float(search_hi)
    lo = 0.5 * hi
    while True:
        if lo < UNDERFLOW_FLOOR:
            raise DeltaExtractionError(
                f"no delta found for {g.name!r}: f({2.0 * lo!r}) = "
                f"{g.value(2.0 * lo)!r} >= {y!r} down to the underflow floor")
        flo = g.value(lo)
        if flo < y:
            break
        hi = lo
        lo *= 0.5
    # invariant: f(lo) < y <= f(hi)
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if g.value(mid) < y:
            lo = mid
        else:
            hi = mid
    return lo
