"""Observables, expectations, entropies, and basis partitions.

The wavenumber observable on one qudit is diag(0..d-1) in the k-rep; its
q-rep form is the conjugation F diag F_dagger, whose eigenvectors are the
single-qudit planewaves. Expectations contract the d x d observable against
one digit index of the state, so no d**n x d**n operator is ever built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from ._tensor import apply_at
from .fourier import single_qudit_fourier, to_k_rep
from .gates import translation_gate_matrix
from .groups import DigitLabel, dot_mod, enumerate_labels
from .states import Representation, StateVector, probabilities


@dataclass(frozen=True, eq=False)
class SingleQuditObservable:
    """Hermitian d x d matrix together with the representation it acts in."""

    d: int
    matrix: np.ndarray
    basis_tag: Representation


@dataclass(frozen=True)
class Partition:
    """The d classes of basis labels induced by one functional label.

    classes[v] lists, in index order, every q with k.q = v (mod d).
    """

    functional: DigitLabel
    classes: tuple[tuple[DigitLabel, ...], ...]


@dataclass(frozen=True)
class EntropyReport:
    """Shannon entropies of the measurement distributions in both reps."""

    h_q: float
    h_k: float
    sum: float
    log_base: str = "e"


def k_observable_in_k_rep(d: int) -> SingleQuditObservable:
    """diag(0, 1, ..., d-1) acting on k-rep amplitudes."""
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    return SingleQuditObservable(
        d, np.diag(np.arange(d, dtype=np.complex128)), Representation.K
    )


def k_observable_in_q_rep(d: int) -> SingleQuditObservable:
    """The wavenumber observable conjugated into the q-representation."""
    f = single_qudit_fourier(d)
    matrix = f @ k_observable_in_k_rep(d).matrix @ f.conj().T
    return SingleQuditObservable(d, matrix, Representation.Q)


def q_observable(d: int) -> SingleQuditObservable:
    """diag(0, 1, ..., d-1) acting on q-rep amplitudes."""
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    return SingleQuditObservable(
        d, np.diag(np.arange(d, dtype=np.complex128)), Representation.Q
    )


def _require_q_rep(state: StateVector) -> None:
    if state.rep is not Representation.Q:
        raise ValueError(f"expected a q-rep state, got {state.rep.value}-rep")


def expect_k(state: StateVector) -> np.ndarray:
    """Per-qudit expectation of the wavenumber observable.

    Note this is the arithmetic mean of a cyclic quantity; see
    k_distributions for the full per-qudit distribution.
    """
    _require_q_rep(state)
    d, n = state.system.d, state.system.n
    kq = k_observable_in_q_rep(d).matrix
    out = np.empty(n)
    for wire in range(n):
        out[wire] = np.vdot(
            state.amplitudes, apply_at(state.amplitudes, d, n, wire, kq)
        ).real
    return out


def expect_q(state: StateVector) -> np.ndarray:
    """Per-qudit expectation of the digit value: sum over q of |psi(q)|^2 * q_j."""
    _require_q_rep(state)
    d, n = state.system.d, state.system.n
    probs = probabilities(state).reshape((d,) * n)
    values = np.arange(d)
    out = np.empty(n)
    for wire in range(n):
        axes = tuple(a for a in range(n) if a != wire)
        out[wire] = float(probs.sum(axis=axes) @ values)
    return out


def k_distributions(state: StateVector) -> np.ndarray:
    """(n, d) array: row j is the marginal distribution of k_j."""
    _require_q_rep(state)
    d, n = state.system.d, state.system.n
    probs = probabilities(to_k_rep(state)).reshape((d,) * n)
    out = np.empty((n, d))
    for wire in range(n):
        axes = tuple(a for a in range(n) if a != wire)
        out[wire] = probs.sum(axis=axes)
    return out


def commutator_qk(d: int) -> tuple[np.ndarray, float]:
    """[Q, K] in the q-representation and its Frobenius norm (always > 0)."""
    qq = q_observable(d).matrix
    kq = k_observable_in_q_rep(d).matrix
    comm = qq @ kq - kq @ qq
    return comm, float(np.linalg.norm(comm))


def shannon_entropy(probs: np.ndarray, base: float | None = None) -> float:
    """-sum p log p with 0 log 0 = 0; natural log unless a base is given."""
    p = np.asarray(probs, dtype=float)
    p = p[p > 0]
    h = float(-(p * np.log(p)).sum()) + 0.0  # avoid -0.0 for point masses
    if base is not None:
        h /= math.log(base)
    return h


def entropies(state: StateVector, base: float | None = None) -> EntropyReport:
    """Entropy of the q-distribution and of the dual k-distribution."""
    _require_q_rep(state)
    h_q = shannon_entropy(probabilities(state), base)
    h_k = shannon_entropy(probabilities(to_k_rep(state)), base)
    label = "e" if base is None else format(base, "g")
    return EntropyReport(h_q=h_q, h_k=h_k, sum=h_q + h_k, log_base=label)


def translation_operator_k_rep(d: int, q: int) -> np.ndarray:
    """diag(exp(-2*pi*i*m*q/d)) for m = 0..d-1: the shift gate in the k-rep."""
    if not 0 <= q < d:
        raise ValueError(f"shift {q} outside [0, {d})")
    phases = (np.arange(d) * q) % d
    return np.diag(np.exp(-2j * np.pi * phases / d))


def verify_translation_identity(d: int, q: int) -> float:
    """Max-entry deviation between the conjugated k-rep shift and the q-rep one.

    The exponential of the wavenumber observable is computed exactly by
    conjugating the diagonal k-rep form with F; the result should be the
    cyclic shift-by-q permutation (deviation < 1e-10 is the contract).
    """
    f = single_qudit_fourier(d)
    conjugated = f @ translation_operator_k_rep(d, q) @ f.conj().T
    return float(np.max(np.abs(conjugated - translation_gate_matrix(d, q))))


def partition(k: DigitLabel) -> Partition:
    """Split all basis labels into d classes by the value of k.q mod d."""
    classes: list[list[DigitLabel]] = [[] for _ in range(k.system.d)]
    for q in enumerate_labels(k.system):
        classes[dot_mod(k, q)].append(q)
    return Partition(k, tuple(tuple(c) for c in classes))


def partition_to_dict(part: Partition) -> dict[str, Any]:
    """JSON-ready form: {"k": [digits], "classes": [[label strings], ...]}."""
    return {
        "k": list(part.functional.digits),
        "classes": [[q.ket() for q in cls] for cls in part.classes],
    }


def entropy_to_dict(report: EntropyReport) -> dict[str, Any]:
    """JSON-ready form: {"h_q", "h_k", "sum", "log_base"}."""
    return {
        "h_q": report.h_q,
        "h_k": report.h_k,
        "sum": report.sum,
        "log_base": report.log_base,
    }
