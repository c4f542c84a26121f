"""Dense complex state vectors over the d**n basis, tagged q-rep or k-rep."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence

import numpy as np

from .groups import DigitLabel, QuditSystem, label_to_index

NORM_TOL = 1e-10


class Representation(Enum):
    """Which dual representation the amplitudes are expressed in."""

    Q = "q"
    K = "k"


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized amplitude vector of length d**n in a fixed representation.

    Construction copies the amplitudes into an owned read-only complex128
    buffer and rejects vectors whose squared norm deviates from 1 by more
    than NORM_TOL; amplitudes are stored exactly as given, never rescaled.
    """

    system: QuditSystem
    rep: Representation
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.system.dim,):
            raise ValueError(
                f"expected {self.system.dim} amplitudes, got shape {amps.shape}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(
                f"state is not normalized: sum |a|^2 = {norm_sq!r}"
                f" (deviation {norm_sq - 1.0:+.3e})"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)


def basis_state(label: DigitLabel, rep: Representation) -> StateVector:
    """Unit amplitude at the label's index, zero elsewhere."""
    amps = np.zeros(label.system.dim, dtype=np.complex128)
    amps[label_to_index(label)] = 1.0
    return StateVector(label.system, rep, amps)


def from_amplitudes(
    system: QuditSystem, rep: Representation, amplitudes: Sequence[complex]
) -> StateVector:
    """Build a state from explicit amplitudes, validating length and norm."""
    return StateVector(system, rep, np.asarray(amplitudes))


def _require_compatible(f: StateVector, g: StateVector) -> None:
    if f.system != g.system:
        raise ValueError(f"state systems differ: {f.system} vs {g.system}")
    if f.rep is not g.rep:
        raise ValueError(
            f"representations differ: {f.rep.value}-rep vs {g.rep.value}-rep;"
            " transform one side first"
        )


def inner_product(f: StateVector, g: StateVector) -> complex:
    """<f|g> = sum of conj(f_i) * g_i; both states must share system and rep."""
    _require_compatible(f, g)
    return complex(np.vdot(f.amplitudes, g.amplitudes))


def tensor_product(f: StateVector, g: StateVector) -> StateVector:
    """Combined state on n_f + n_g qudits; f's qudits are most significant."""
    if f.system.d != g.system.d:
        raise ValueError(
            f"qudit dimensions differ: d={f.system.d} vs d={g.system.d}"
        )
    if f.rep is not g.rep:
        raise ValueError(
            f"representations differ: {f.rep.value}-rep vs {g.rep.value}-rep"
        )
    joined = QuditSystem(f.system.n + g.system.n, f.system.d)
    return StateVector(joined, f.rep, np.kron(f.amplitudes, g.amplitudes))


def probabilities(state: StateVector) -> np.ndarray:
    """Elementwise |amplitude|^2 in index order."""
    return np.abs(state.amplitudes) ** 2


def fidelity(f: StateVector, g: StateVector) -> float:
    """|<f|g>|^2."""
    return abs(inner_product(f, g)) ** 2


def random_state(
    system: QuditSystem, rep: Representation, rng: np.random.Generator
) -> StateVector:
    """Haar-like random state: normalized complex Gaussian amplitudes."""
    amps = rng.standard_normal(system.dim) + 1j * rng.standard_normal(system.dim)
    return StateVector(system, rep, amps / np.linalg.norm(amps))


def state_to_dict(state: StateVector) -> dict[str, Any]:
    """JSON-ready form: {"n", "d", "rep", "amplitudes": [[re, im], ...]}."""
    return {
        "n": state.system.n,
        "d": state.system.d,
        "rep": state.rep.value,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }


def state_from_dict(doc: Any) -> StateVector:
    """Parse and validate the JSON state format."""
    if not isinstance(doc, dict):
        raise ValueError("state document must be a JSON object")
    for key in ("n", "d", "rep", "amplitudes"):
        if key not in doc:
            raise ValueError(f"state document missing field {key!r}")
    if not isinstance(doc["n"], int) or not isinstance(doc["d"], int):
        raise ValueError("state fields 'n' and 'd' must be integers")
    system = QuditSystem(doc["n"], doc["d"])
    try:
        rep = Representation(doc["rep"])
    except ValueError:
        raise ValueError(f"unknown representation tag {doc['rep']!r}") from None
    pairs = doc["amplitudes"]
    if not isinstance(pairs, list) or len(pairs) != system.dim:
        raise ValueError(
            f"expected {system.dim} amplitude pairs,"
            f" got {len(pairs) if isinstance(pairs, list) else type(pairs).__name__}"
        )
    amps = np.empty(system.dim, dtype=np.complex128)
    for i, pair in enumerate(pairs):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ValueError(f"amplitude {i} must be a [re, im] pair")
        amps[i] = complex(float(pair[0]), float(pair[1]))
    return StateVector(system, rep, amps)
