"""Embedded reference codes.

``block-code-1`` is the (3, 17) array code with ``f_ij = i*j`` over z = 17.
``sc-code-1``/``sc-code-2`` couple it with memory 1 and 2 (L = 30);
``sc-code-3`` is the gamma = 6 code over z = 61 with optimized powers.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .codeconstruct import SCCodeSpec, block_spec

_PM_SC1 = [
    [0, 0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1, 1, 1, 1],
    [1, 1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 1, 0, 0],
    [1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 1],
]

_PM_SC2 = [
    [0, 1, 0, 2, 2, 1, 2, 0, 0, 1, 0, 1, 1, 2, 1, 2, 2],
    [1, 0, 2, 1, 0, 2, 1, 1, 1, 2, 2, 0, 2, 0, 0, 0, 1],
    [2, 2, 1, 0, 1, 0, 0, 2, 2, 0, 1, 2, 0, 1, 2, 1, 0],
]

_PM_SC3 = [
    [1, 1, 2, 1, 0, 1, 2, 2, 0, 2, 1, 0, 2, 0, 0, 1, 1, 2, 1, 0, 1, 2, 2, 0, 2, 1, 0, 2, 0],
    [1, 2, 1, 0, 1, 2, 1, 0, 2, 2, 0, 2, 0, 1, 0, 1, 2, 1, 0, 1, 2, 1, 0, 2, 2, 0, 2, 0, 1],
    [2, 1, 0, 2, 1, 2, 0, 2, 1, 0, 2, 1, 0, 0, 1, 2, 1, 0, 2, 1, 2, 0, 2, 1, 0, 2, 1, 0, 0],
    [2, 0, 1, 1, 2, 0, 2, 1, 2, 0, 0, 0, 1, 2, 1, 2, 0, 1, 1, 2, 0, 2, 1, 2, 0, 0, 0, 1, 2],
    [0, 2, 2, 2, 2, 0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 0, 2, 2, 2, 2, 0, 0, 0, 0, 1, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 2, 2, 2],
]

_CP_SC3 = [
    [4, 55, 59, 49, 10, 4, 59, 14, 17, 44, 12, 58, 55, 27, 11, 15, 16, 15, 7, 0, 36, 0, 0, 22, 41, 0, 0, 0, 24],
    [20, 28, 28, 3, 15, 5, 54, 7, 8, 9, 49, 11, 12, 13, 14, 15, 16, 59, 18, 52, 30, 21, 22, 23, 24, 25, 26, 50, 34],
    [0, 14, 4, 6, 8, 10, 11, 14, 16, 18, 20, 22, 12, 19, 32, 30, 1, 34, 36, 38, 40, 42, 44, 46, 48, 42, 26, 54, 56],
    [8, 3, 6, 9, 12, 15, 57, 32, 24, 27, 24, 55, 57, 39, 42, 45, 48, 51, 17, 57, 60, 2, 5, 8, 11, 14, 17, 20, 23],
    [0, 4, 8, 8, 16, 20, 24, 28, 32, 4, 40, 44, 18, 52, 56, 60, 27, 7, 11, 15, 19, 23, 27, 31, 17, 39, 5, 47, 51],
    [0, 5, 10, 17, 20, 25, 30, 37, 40, 13, 50, 55, 57, 4, 3, 14, 19, 36, 49, 28, 20, 47, 49, 31, 59, 3, 8, 13, 18],
]


def _array_code_powers(gamma: int, kappa: int) -> np.ndarray:
    i, j = np.meshgrid(np.arange(gamma), np.arange(kappa), indexing="ij")
    return i * j


def _build() -> dict[str, SCCodeSpec]:
    cp1 = _array_code_powers(3, 17) % 17
    return {
        "block-code-1": block_spec(3, 17, 17, cp1, name="block-code-1"),
        "sc-code-1": SCCodeSpec(3, 17, 17, 1, 30, _PM_SC1, cp1, name="sc-code-1"),
        "sc-code-2": SCCodeSpec(3, 17, 17, 2, 30, _PM_SC2, cp1, name="sc-code-2"),
        "sc-code-3": SCCodeSpec(6, 29, 61, 2, 6, _PM_SC3, _CP_SC3, name="sc-code-3"),
    }


PRESETS: dict[str, SCCodeSpec] = _build()


def get_preset(name: str) -> SCCodeSpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def preset_checksum(spec: SCCodeSpec) -> str:
    """SHA-256 over the canonical JSON of a spec (used to pin embedded data)."""
    return hashlib.sha256(spec.to_json().encode()).hexdigest()
