"""Spatially-coupled circulant-based LDPC codes for channels with SNR variation."""

from .codeconstruct import (
    SCCodeSpec,
    SparseParityMatrix,
    assemble_sc,
    build_block_matrix,
    design_rate,
    split_components,
)
from .decoder import BACKEND, DecodeResult, min_sum_decode, syndrome
from .presets import PRESETS, get_preset

__all__ = [
    "BACKEND",
    "DecodeResult",
    "PRESETS",
    "SCCodeSpec",
    "SparseParityMatrix",
    "assemble_sc",
    "build_block_matrix",
    "design_rate",
    "get_preset",
    "min_sum_decode",
    "split_components",
    "syndrome",
]

__version__ = "0.1.0"
