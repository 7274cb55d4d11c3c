"""Exception types shared across the package."""


class FMetricError(Exception):
    """Base class for all package-specific errors."""


class UnknownGeneratorError(FMetricError, ValueError):
    """Generator name not present in the catalog."""


class GeneratorDomainError(FMetricError, ValueError):
    """Generator evaluated outside its domain (0, inf)."""


class DeltaExtractionError(FMetricError, RuntimeError):
    """Divergence not observed: no t with f(t) < y above the underflow floor."""


class SpaceFormatError(FMetricError, ValueError):
    """Distance-matrix document violates the schema."""


class ChainBudgetError(FMetricError, RuntimeError):
    """Brute-force chain enumeration exceeded its budget cap."""


class NotFMetricError(FMetricError, ValueError):
    """Operation requires a space that passes the axiom checks."""


class WitnessMismatchError(FMetricError, ValueError):
    """Certificate witness differs from the verification witness."""
