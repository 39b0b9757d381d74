"""Kernel backend selection.

The hot loops (shot batches, single-qubit gate application, Bell projection,
one-qubit marginals) exist twice: numba-compiled loops and vectorized numpy.
``TELEGATE_BACKEND`` picks one at import time:

    TELEGATE_BACKEND=numba   compiled kernels (default when numba imports)
    TELEGATE_BACKEND=numpy   pure-numpy fallback

``NUMBA_DISABLE_JIT=1`` also forces the numpy path, since running the numba
loops uncompiled would only be slow.
"""

import logging
import os

logger = logging.getLogger(__name__)

ENV_FLAG = "TELEGATE_BACKEND"
BACKENDS = ("numba", "numpy")


def numba_available():
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return os.environ.get("NUMBA_DISABLE_JIT", "0") != "1"


def requested_backend():
    name = os.environ.get(ENV_FLAG, "").strip().lower()
    if not name:
        return "numba" if numba_available() else "numpy"
    if name not in BACKENDS:
        raise ValueError(f"{ENV_FLAG} must be one of {BACKENDS}, got {name!r}")
    if name == "numba" and not numba_available():
        logger.warning("numba requested but unavailable; using numpy kernels")
        return "numpy"
    return name
