"""Computational toolkit for finite F-metric spaces.

Verifies the F-metric axioms on finite distance matrices, computes the
induced chain-infimum metric, and builds and checks the uniform-regularity
certificate behind their metrizability.  Hot kernels run in a compiled
extension when available (see ``fmetric.kernels.BACKEND``), with a
bit-compatible pure-Python fallback.
"""

from .analysis import (Ball, SearchResult, ball, ball_nesting_evidence,
                       min_alpha, random_space, search_fmetric_not_metric,
                       squared_space)
from .chittenden import (RegularityCertificate, chittenden_report,
                         phi_certificate, verify_uniform_regularity)
from .core import (AxiomReport, FiniteSpace, check_axioms, check_d1, check_d2,
                   check_d3, check_d3_bruteforce, is_metric, load_space,
                   make_space, min_chain_sums, save_space, space_from_dict,
                   space_to_dict)
from .errors import (ChainBudgetError, DeltaExtractionError, FMetricError,
                     GeneratorDomainError, NotFMetricError, SpaceFormatError,
                     UnknownGeneratorError, WitnessMismatchError)
from .generators import (Generator, Witness, check_f1, check_f2, delta_below,
                         get_generator)
from .induced import InducedMetric, compare, induced_metric, induced_to_dict
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "AxiomReport", "BACKEND", "Ball", "ChainBudgetError",
    "DeltaExtractionError", "FMetricError", "FiniteSpace", "Generator",
    "GeneratorDomainError", "InducedMetric", "NotFMetricError",
    "RegularityCertificate", "SearchResult", "SpaceFormatError",
    "UnknownGeneratorError", "Witness", "WitnessMismatchError", "ball",
    "ball_nesting_evidence", "chittenden_report", "check_axioms", "check_d1",
    "check_d2", "check_d3", "check_d3_bruteforce", "check_f1", "check_f2",
    "compare", "delta_below", "get_generator", "induced_metric",
    "induced_to_dict", "is_metric", "load_space", "make_space", "min_alpha",
    "min_chain_sums", "phi_certificate", "random_space", "save_space",
    "search_fmetric_not_metric", "space_from_dict", "space_to_dict",
    "squared_space", "verify_uniform_regularity",
]
