"""Min-sum decoding of a :class:`SparseParityMatrix`.

The compiled kernel (``scldpc._kernels``) is used when it was built;
otherwise, or when ``SCLDPC_PURE_PYTHON=1`` is set, the numpy fallback in
``scldpc._kernels_py`` runs instead. ``BACKEND`` names the active one.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _kernels_py
from .codeconstruct import SparseParityMatrix

# Magnitude cap for variable-to-check messages. Messages grow at most by a
# factor (gamma - 1) per iteration, so this stays inactive for channel LLRs
# up to 1e3 even for gamma = 6 and 50 iterations.
MSG_CLIP = 1.0e60

if os.environ.get("SCLDPC_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    _BACKENDS["cython"] = _compiled


@dataclass
class DecodeResult:
    hard_bits: np.ndarray
    iterations_used: int
    converged: bool


def _kernel(backend):
    name = backend or BACKEND
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(_BACKENDS)}") from None


def syndrome(H: SparseParityMatrix, bits, backend: str | None = None) -> np.ndarray:
    bits = np.ascontiguousarray(bits, dtype=np.uint8)
    if bits.size != H.cols:
        raise ValueError(f"expected {H.cols} bits, got {bits.size}")
    return _kernel(backend).syndrome(H.row_ptr, H.col_idx, bits)


def min_sum_decode(H: SparseParityMatrix, llr, max_iterations: int = 50,
                   backend: str | None = None) -> DecodeResult:
    """Flooding min-sum with a syndrome check before the first and after every iteration.

    Positive LLR favours bit 0; a total LLR of exactly zero decides 0.
    ``iterations_used`` is 0 when the channel decisions already satisfy H.
    """
    llr = np.ascontiguousarray(llr, dtype=np.float64)
    if llr.shape != (H.cols,):
        raise ValueError(f"expected {H.cols} LLRs, got shape {llr.shape}")
    if max_iterations < 0:
        raise ValueError("max_iterations must be non-negative")
    hard = np.zeros(H.cols, dtype=np.uint8)
    it, ok = _kernel(backend).minsum(
        H.row_ptr, H.col_idx, H.col_ptr, H.edge_of_csc, llr, int(max_iterations), MSG_CLIP, hard
    )
    return DecodeResult(hard, int(it), bool(ok))
