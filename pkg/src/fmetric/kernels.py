"""Kernel backend selection.

Prefers the compiled extension and falls back to the pure-Python
implementation when the extension is absent or when the environment
variable ``FMETRIC_PURE_PYTHON`` is set (any non-empty value).  Both
backends are bit-compatible; ``BACKEND`` reports which one is active.
"""

import os

if os.environ.get("FMETRIC_PURE_PYTHON"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
floyd_warshall = _impl.floyd_warshall
regularity_violations = _impl.regularity_violations
d3_bruteforce_scan = _impl.d3_bruteforce_scan
