"""Tensor-structured helpers acting on flat length-d**n amplitude buffers.

Everything here avoids materializing d**n x d**n operators: single-qudit
matrices are contracted against one index of the reshaped amplitude tensor,
and basis permutations are expressed as flat-index arithmetic.
"""

from __future__ import annotations

import numpy as np


def apply_at(
    amps: np.ndarray, d: int, n: int, wire: int, matrix: np.ndarray
) -> np.ndarray:
    """Apply a d x d matrix to one qudit; O(d**(n+1)) time."""
    arr = amps.reshape((d,) * n)
    arr = np.moveaxis(np.tensordot(matrix, arr, axes=(1, wire)), 0, wire)
    return arr.reshape(-1)


def apply_everywhere(
    amps: np.ndarray, d: int, n: int, matrix: np.ndarray
) -> np.ndarray:
    """Apply the same d x d matrix to every qudit in sequence."""
    arr = amps.reshape((d,) * n)
    for wire in range(n):
        arr = np.moveaxis(np.tensordot(matrix, arr, axes=(1, wire)), 0, wire)
    return arr.reshape(-1)


def wire_stride(d: int, n: int, wire: int) -> int:
    """Flat-index stride of a wire under the big-endian convention."""
    return d ** (n - 1 - wire)


def wire_digits(d: int, n: int, wire: int) -> np.ndarray:
    """Digit at `wire` of every flat index 0..d**n-1."""
    return (np.arange(d**n) // wire_stride(d, n, wire)) % d
