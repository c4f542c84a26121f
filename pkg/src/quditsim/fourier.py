"""Fourier duality between the q- and k-representations.

Conventions: omega = exp(2*pi*i/d) is the principal d-th root of unity and
the single-qudit matrix F[q, k] = omega**(q*k) / sqrt(d) maps k-rep
amplitudes to q-rep amplitudes; the opposite direction uses F's conjugate
transpose. The n-qudit transform factorizes as one F per qudit because the
planewave phase exp(2*pi*i*(sum k_j*q_j)/d) is insensitive to reducing the
exponent sum mod d.
"""

from __future__ import annotations

import numpy as np

from ._tensor import apply_everywhere
from .groups import DigitLabel, QuditSystem, enumerate_labels
from .states import Representation, StateVector

ORACLE_DIM_CAP = 4096


def single_qudit_fourier(d: int) -> np.ndarray:
    """The d x d transform matrix with entries omega**(q*k) / sqrt(d)."""
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    exponents = np.outer(np.arange(d), np.arange(d)) % d
    return np.exp(2j * np.pi * exponents / d) / np.sqrt(d)


def to_q_rep(phi: StateVector) -> StateVector:
    """Transform a k-rep state to the q-representation (F on every qudit)."""
    if phi.rep is not Representation.K:
        raise ValueError(f"expected a k-rep state, got {phi.rep.value}-rep")
    d, n = phi.system.d, phi.system.n
    amps = apply_everywhere(phi.amplitudes, d, n, single_qudit_fourier(d))
    return StateVector(phi.system, Representation.Q, amps)


def to_k_rep(psi: StateVector) -> StateVector:
    """Transform a q-rep state to the k-representation (F dagger per qudit)."""
    if psi.rep is not Representation.Q:
        raise ValueError(f"expected a q-rep state, got {psi.rep.value}-rep")
    d, n = psi.system.d, psi.system.n
    f_dag = single_qudit_fourier(d).conj().T
    amps = apply_everywhere(psi.amplitudes, d, n, f_dag)
    return StateVector(psi.system, Representation.K, amps)


def planewave(k: DigitLabel) -> StateVector:
    """q-representation of the basis functional k.

    Amplitude at q is exp(2*pi*i*(k.q mod d)/d) / sqrt(d**n); equals
    to_q_rep(basis_state(k, K)) up to floating rounding.
    """
    d, n = k.system.d, k.system.n
    phase = np.zeros((d,) * n, dtype=np.int64)
    digit = np.arange(d)
    for wire, kj in enumerate(k.digits):
        shape = [1] * n
        shape[wire] = d
        phase = phase + kj * digit.reshape(shape)
    amps = np.exp(2j * np.pi * (phase % d) / d).reshape(-1) / np.sqrt(d**n)
    return StateVector(k.system, Representation.Q, amps)


def dense_fourier_oracle(system: QuditSystem) -> np.ndarray:
    """Full d**n x d**n matrix with entry[q][k] = omega**(k.q) / sqrt(d**n).

    Brute-force evaluation of the defining formula, independent of the
    per-qudit factorized path; intended for tests, so the dimension is
    capped at ORACLE_DIM_CAP.
    """
    if system.dim > ORACLE_DIM_CAP:
        raise ValueError(
            f"oracle dimension {system.dim} exceeds the cap {ORACLE_DIM_CAP}"
        )
    digits = np.array([lab.digits for lab in enumerate_labels(system)])
    exponents = (digits @ digits.T) % system.d
    return np.exp(2j * np.pi * exponents / system.d) / np.sqrt(system.dim)
