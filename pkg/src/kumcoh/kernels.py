"""Backend selection for the modular elimination kernels.

The compiled extension is used when it imports; otherwise the numpy
implementation in ``_modring`` takes over.  Set ``KUMCOH_PURE=1`` to force
the fallback.
"""

from __future__ import annotations

import os

from . import _modring
from ._modring import local_snf, ring_tables

try:
    if os.environ.get("KUMCOH_PURE"):
        raise ImportError("pure backend requested")
    from ._ckernels import howell_rows  # type: ignore[attr-defined]

    BACKEND = "cython"
except ImportError:
    howell_rows = _modring.howell_rows
    BACKEND = "python"

__all__ = ["BACKEND", "howell_rows", "local_snf", "ring_tables"]
