"""Kernel backend selection.

The hot inner loops (implicit matrix-vector products for power iteration)
exist twice: a numba-jitted gather loop and a pure-numpy fallback that
materializes the dense matrix. ``CAYLEYLAB_BACKEND`` picks one:

    auto   (default) numba when importable, numpy otherwise
    numba  require numba, fail loudly if missing
    numpy  force the fallback
"""
from __future__ import annotations

import os

ENV_VAR = "CAYLEYLAB_BACKEND"


def _resolve() -> str:
    mode = os.environ.get(ENV_VAR, "auto").strip().lower()
    if mode not in ("auto", "numba", "numpy"):
        raise ValueError(f"{ENV_VAR} must be one of auto|numba|numpy, got {mode!r}")
    if mode == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if mode == "numba":
            raise
        return "numpy"
    return "numba"


ACTIVE = _resolve()


def active_backend() -> str:
    """The backend currently in use ('numba' or 'numpy')."""
    return ACTIVE
