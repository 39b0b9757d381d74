"""Dispatch to the kernel backend chosen by ``TELEGATE_BACKEND``.

Both backends are importable directly (``telegate._numpy_kernels`` and
``telegate._numba_kernels``) for cross-checking and benchmarking.
"""

from ._backend import requested_backend

BACKEND = requested_backend()

if BACKEND == "numba":
    from ._numba_kernels import (
        apply_1q,
        apply_operator,
        bell_sample,
        fidelity_purity,
        marginals,
    )
else:
    from ._numpy_kernels import (  # noqa: F401
        apply_1q,
        apply_operator,
        bell_sample,
        fidelity_purity,
        marginals,
    )

from ._numpy_kernels import BELL_MATRIX  # noqa: E402,F401

__all__ = [
    "BACKEND",
    "BELL_MATRIX",
    "apply_1q",
    "apply_operator",
    "bell_sample",
    "fidelity_purity",
    "marginals",
]
