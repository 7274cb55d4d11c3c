"""Uniform-regularity certificates in the sense of Chittenden's
metrization theorem.

A distance function F is uniformly regular when for every eps > 0 there
is a phi(eps) > 0 such that F(x, y) < phi(eps) and F(y, z) < phi(eps)
force F(x, z) < eps.  Together with the identity and symmetry axioms,
uniform regularity makes the space metrizable (Chittenden, 1917).

For an F-metric witness (f, alpha) the certificate is constructive:
extract delta > 0 with f(t) < f(eps) - alpha for all t < delta (possible
since f diverges at 0+) and take phi(eps) = delta / 2.  Two hops below
phi then sum below delta, so f(D(x, z)) <= f(sum) + alpha < f(eps),
hence D(x, z) < eps; the x = z case is vacuous since D(x, z) = 0.  This
module builds the eps -> phi(eps) table and scans finite spaces for
violating triples (there are none on a valid F-metric space).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .core import DEFAULT_TOL, AxiomReport, FiniteSpace, check_axioms
from .errors import WitnessMismatchError
from .generators import Witness, delta_below


@dataclass(frozen=True)
class CertEntry:
    """One certificate row; phi is delta / 2 exactly."""

    epsilon: float
    delta: float
    phi: float


@dataclass(frozen=True)
class RegularityCertificate:
    """eps -> phi(eps) table, entries ascending in eps."""

    witness: Witness
    entries: tuple[CertEntry, ...]


@dataclass(frozen=True)
class EpsilonScan:
    """Violating triples for one certificate entry (scan order, ordered
    triples (x, y, z))."""

    epsilon: float
    phi: float
    violations: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class RegularityReport:
    passed: bool
    scans: tuple[EpsilonScan, ...]

    @property
    def total_violations(self) -> int:
        return sum(len(s.violations) for s in self.scans)


@dataclass(frozen=True)
class ChittendenReport:
    """Composite metrizability report: identity (i), symmetry (ii) and
    uniform regularity (iii) on a finite sample.

    ``refused`` marks inputs that fail the axiom precondition; no
    certificate is built for those.
    """

    refused: bool
    axioms: AxiomReport
    certificate: RegularityCertificate | None = None
    regularity: RegularityReport | None = None

    @property
    def passed(self) -> bool:
        if self.refused or self.certificate is None or self.regularity is None:
            return False
        return self.axioms.passed and self.regularity.passed

    @property
    def summary(self) -> str:
        if self.passed:
            return "metrizability certificate valid on this finite sample"
        if self.refused:
            return "refused: space fails the axiom checks under this witness"
        return "uniform regularity violated (implementation or input defect)"


def phi_certificate(w: Witness, epsilons, tol: float = DEFAULT_TOL) -> RegularityCertificate:
    """Build the eps -> phi(eps) table for a witness.

    Per eps: delta = delta_below(f, f(eps) - alpha, search_hi=eps) and
    phi = delta / 2.  Searching up to eps suffices because
    f(eps) >= f(eps) - alpha, so the boundary sits at or below eps.
    Raises DeltaExtractionError if the generator fails the divergence
    condition numerically.
    """
    eps_list = sorted(float(e) for e in epsilons)
    if not eps_list:
        raise ValueError("epsilons must be non-empty")
    if eps_list[0] <= 0:
        raise ValueError(f"epsilons must be > 0, got {eps_list[0]!r}")
    f = w.generator
    entries = []
    for eps in eps_list:
        y = f.value(eps) - w.alpha
        delta = delta_below(f, y, search_hi=eps, tol=tol)
        entries.append(CertEntry(eps, delta, delta / 2.0))
    return RegularityCertificate(w, tuple(entries))


def verify_uniform_regularity(space: FiniteSpace, w: Witness,
                              cert: RegularityCertificate) -> RegularityReport:
    """Scan all ordered triples against every certificate entry.

    A triple (x, y, z) violates the eps entry when D[x,y] < phi,
    D[y,z] < phi and D[x,z] >= eps.  x = z never violates (D[x,z] = 0).
    On a space passing the axiom checks under the same witness the scan
    finds nothing; any hit falsifies the implementation.
    """
    if cert.witness != w:
        raise WitnessMismatchError(
            f"certificate was built for ({cert.witness.generator.name}, "
            f"alpha={cert.witness.alpha!r}) but verification requested "
            f"({w.generator.name}, alpha={w.alpha!r})")
    scans = []
    for entry in cert.entries:
        hits = kernels.regularity_violations(space.dist, entry.phi, entry.epsilon)
        triples = tuple((int(x), int(y), int(z)) for x, y, z in hits)
        scans.append(EpsilonScan(entry.epsilon, entry.phi, triples))
    passed = all(not s.violations for s in scans)
    return RegularityReport(passed, tuple(scans))


def chittenden_report(space: FiniteSpace, w: Witness, epsilons,
                      tol: float = DEFAULT_TOL) -> ChittendenReport:
    """Bundle the three metrization conditions for one space and witness.

    Condition (i) is the off-diagonal positivity check, (ii) the symmetry
    check, (iii) the certificate plus the triple scan.  Spaces failing
    the axiom precondition are refused rather than scanned.
    """
    axioms = check_axioms(space, w, tol)
    if not axioms.passed:
        return ChittendenReport(True, axioms)
    cert = phi_certificate(w, epsilons, tol)
    reg = verify_uniform_regularity(space, w, cert)
    return ChittendenReport(False, axioms, cert, reg)


def certificate_to_dict(cert: RegularityCertificate) -> dict:
    return {"generator": cert.witness.generator.name,
            "alpha": float(cert.witness.alpha),
            "entries": [{"epsilon": e.epsilon, "delta": e.delta, "phi": e.phi}
                        for e in cert.entries]}


def certificate_from_dict(doc: dict) -> RegularityCertificate:
    from .generators import Generator
    w = Witness(Generator(doc["generator"]), float(doc["alpha"]))
    entries = tuple(CertEntry(float(e["epsilon"]), float(e["delta"]), float(e["phi"]))
                    for e in doc["entries"])
    for e in entries:
        if e.phi != e.delta / 2.0:
            raise ValueError(f"certificate entry at eps={e.epsilon!r} has phi != delta/2")
    return RegularityCertificate(w, entries)
