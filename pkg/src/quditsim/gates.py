"""Structured qudit gates and circuits.

All arithmetic gates (translations, controlled adds, doubly controlled adds)
are basis permutations and are applied as flat-index arithmetic in O(d**n);
full gate matrices exist only inside the test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Union

import numpy as np

from ._tensor import apply_at, wire_digits, wire_stride
from .groups import QuditSystem
from .states import Representation, StateVector

UNITARY_TOL = 1e-10
ORACLE_DIM_CAP = 4096


@dataclass(frozen=True)
class Translation:
    """Advance the target qudit's value by a constant amount, modulo d."""

    target: int
    amount: int


@dataclass(frozen=True)
class ControlledAdd:
    """Add multiplier * (control digit) to the target digit, modulo d."""

    control: int
    target: int
    multiplier: int

    def __post_init__(self) -> None:
        if self.control == self.target:
            raise ValueError("control and target must be distinct wires")


@dataclass(frozen=True)
class DoublyControlledAdd:
    """Add the product of the two control digits to the target digit, mod d."""

    k_control: int
    j_control: int
    target: int

    def __post_init__(self) -> None:
        wires = (self.k_control, self.j_control, self.target)
        if len(set(wires)) != 3:
            raise ValueError(f"wires must be distinct, got {wires}")


@dataclass(frozen=True, eq=False)
class SingleQuditUnitary:
    """Apply an arbitrary d x d unitary to the target qudit."""

    target: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix must be square, got shape {m.shape}")
        dev = np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0])))
        if dev > UNITARY_TOL:
            raise ValueError(f"matrix is not unitary (deviation {dev:.3e})")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


Gate = Union[Translation, ControlledAdd, DoublyControlledAdd, SingleQuditUnitary]


def _gate_wires(gate: Gate) -> tuple[int, ...]:
    if isinstance(gate, Translation):
        return (gate.target,)
    if isinstance(gate, ControlledAdd):
        return (gate.control, gate.target)
    if isinstance(gate, DoublyControlledAdd):
        return (gate.k_control, gate.j_control, gate.target)
    if isinstance(gate, SingleQuditUnitary):
        return (gate.target,)
    raise TypeError(f"unknown gate type {type(gate).__name__}")


@dataclass(frozen=True)
class Circuit:
    """Ordered gate sequence over a fixed qudit system."""

    system: QuditSystem
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        n, d = self.system.n, self.system.d
        for i, gate in enumerate(self.gates):
            for wire in _gate_wires(gate):
                if not 0 <= wire < n:
                    raise ValueError(f"gate {i}: wire {wire} outside [0, {n})")
            if isinstance(gate, Translation) and not 0 <= gate.amount < d:
                raise ValueError(f"gate {i}: amount {gate.amount} outside [0, {d})")
            if isinstance(gate, ControlledAdd) and not 0 <= gate.multiplier < d:
                raise ValueError(
                    f"gate {i}: multiplier {gate.multiplier} outside [0, {d})"
                )
            if isinstance(gate, SingleQuditUnitary) and gate.matrix.shape != (d, d):
                raise ValueError(
                    f"gate {i}: matrix shape {gate.matrix.shape} != ({d}, {d})"
                )


@dataclass(frozen=True)
class FunctionalCircuitLayout:
    """Wire roles in the functional-creation circuit over 2m+1 qudits."""

    source_wires: tuple[int, ...]
    handler_wires: tuple[int, ...]
    holder_wire: int


def translation_gate_matrix(d: int, amount: int) -> np.ndarray:
    """Permutation matrix sending |c> to |c + amount mod d>."""
    if not 0 <= amount < d:
        raise ValueError(f"amount {amount} outside [0, {d})")
    m = np.zeros((d, d), dtype=np.complex128)
    m[(np.arange(d) + amount) % d, np.arange(d)] = 1.0
    return m


def _require_q_rep(state: StateVector) -> None:
    if state.rep is not Representation.Q:
        raise ValueError(f"gates act on q-rep states, got {state.rep.value}-rep")


def _require_wire(system: QuditSystem, wire: int) -> None:
    if not 0 <= wire < system.n:
        raise ValueError(f"wire {wire} outside [0, {system.n})")


def apply_translation(state: StateVector, target: int, amount: int) -> StateVector:
    """Shift the target digit by `amount` mod d (cyclic index roll)."""
    _require_q_rep(state)
    _require_wire(state.system, target)
    d, n = state.system.d, state.system.n
    if not 0 <= amount < d:
        raise ValueError(f"amount {amount} outside [0, {d})")
    arr = state.amplitudes.reshape((d,) * n)
    out = np.roll(arr, amount, axis=target).reshape(-1)
    return StateVector(state.system, Representation.Q, out)


def _permute_target_digit(
    state: StateVector, target: int, new_target_digit: np.ndarray
) -> StateVector:
    """Move each amplitude to the index whose target digit is replaced."""
    d, n = state.system.d, state.system.n
    stride = wire_stride(d, n, target)
    old = wire_digits(d, n, target)
    dest = np.arange(state.system.dim) + (new_target_digit - old) * stride
    out = np.empty_like(state.amplitudes)
    out[dest] = state.amplitudes
    return StateVector(state.system, Representation.Q, out)


def apply_controlled_add(
    state: StateVector, control: int, target: int, multiplier: int
) -> StateVector:
    """target digit += multiplier * control digit (mod d); control unchanged."""
    _require_q_rep(state)
    if control == target:
        raise ValueError("control and target must be distinct wires")
    _require_wire(state.system, control)
    _require_wire(state.system, target)
    d, n = state.system.d, state.system.n
    if not 0 <= multiplier < d:
        raise ValueError(f"multiplier {multiplier} outside [0, {d})")
    new_target = (
        wire_digits(d, n, target) + multiplier * wire_digits(d, n, control)
    ) % d
    return _permute_target_digit(state, target, new_target)


def apply_doubly_controlled_add(
    state: StateVector, k_control: int, j_control: int, target: int
) -> StateVector:
    """target digit += (k_control digit) * (j_control digit), mod d."""
    _require_q_rep(state)
    if len({k_control, j_control, target}) != 3:
        raise ValueError(
            f"wires must be distinct, got {(k_control, j_control, target)}"
        )
    for wire in (k_control, j_control, target):
        _require_wire(state.system, wire)
    d, n = state.system.d, state.system.n
    new_target = (
        wire_digits(d, n, target)
        + wire_digits(d, n, k_control) * wire_digits(d, n, j_control)
    ) % d
    return _permute_target_digit(state, target, new_target)


def _apply_gate(state: StateVector, gate: Gate) -> StateVector:
    if isinstance(gate, Translation):
        return apply_translation(state, gate.target, gate.amount)
    if isinstance(gate, ControlledAdd):
        return apply_controlled_add(state, gate.control, gate.target, gate.multiplier)
    if isinstance(gate, DoublyControlledAdd):
        return apply_doubly_controlled_add(
            state, gate.k_control, gate.j_control, gate.target
        )
    if isinstance(gate, SingleQuditUnitary):
        _require_q_rep(state)
        d, n = state.system.d, state.system.n
        amps = apply_at(state.amplitudes, d, n, gate.target, gate.matrix)
        return StateVector(state.system, Representation.Q, amps)
    raise TypeError(f"unknown gate type {type(gate).__name__}")


def run_circuit(circuit: Circuit, state: StateVector) -> StateVector:
    """Apply the gates in order; normalization is revalidated after each gate."""
    if state.system != circuit.system:
        raise ValueError(
            f"state system {state.system} does not match circuit system"
            f" {circuit.system}"
        )
    _require_q_rep(state)
    for gate in circuit.gates:
        state = _apply_gate(state, gate)
    return state


def build_functional_circuit(
    m: int, d: int
) -> tuple[Circuit, FunctionalCircuitLayout]:
    """Circuit over 2m+1 wires accumulating sum_l handler_l * source_l on the holder.

    Wire order: handlers 0..m-1, sources m..2m-1, holder 2m. With basis
    handlers |k>, basis sources |q>, and the holder at |0>, the holder ends
    in |k.q mod d>; a non-zero holder simply offsets the result. The gates
    commute, so their order does not affect the outcome.
    """
    if m < 1:
        raise ValueError(f"need at least one source qudit, got m={m}")
    system = QuditSystem(2 * m + 1, d)
    handlers = tuple(range(m))
    sources = tuple(range(m, 2 * m))
    holder = 2 * m
    gates = tuple(
        DoublyControlledAdd(k_control=handlers[i], j_control=sources[i], target=holder)
        for i in range(m)
    )
    return Circuit(system, gates), FunctionalCircuitLayout(sources, handlers, holder)


def circuit_unitary_oracle(circuit: Circuit) -> np.ndarray:
    """Dense unitary of the circuit, column by column from basis-state runs.

    Test oracle only; the dimension is capped at ORACLE_DIM_CAP.
    """
    dim = circuit.system.dim
    if dim > ORACLE_DIM_CAP:
        raise ValueError(f"oracle dimension {dim} exceeds the cap {ORACLE_DIM_CAP}")
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(dim):
        e = np.zeros(dim, dtype=np.complex128)
        e[col] = 1.0
        start = StateVector(circuit.system, Representation.Q, e)
        matrix[:, col] = run_circuit(circuit, start).amplitudes
    return matrix


def circuit_to_dict(circuit: Circuit) -> dict[str, Any]:
    """JSON-ready form: {"n", "d", "gates": [{"kind", ...}, ...]}."""
    gates: list[dict[str, Any]] = []
    for gate in circuit.gates:
        if isinstance(gate, Translation):
            gates.append(
                {"kind": "translation", "target": gate.target, "amount": gate.amount}
            )
        elif isinstance(gate, ControlledAdd):
            gates.append(
                {
                    "kind": "cadd",
                    "control": gate.control,
                    "target": gate.target,
                    "multiplier": gate.multiplier,
                }
            )
        elif isinstance(gate, DoublyControlledAdd):
            gates.append(
                {
                    "kind": "ccadd",
                    "k_control": gate.k_control,
                    "j_control": gate.j_control,
                    "target": gate.target,
                }
            )
        elif isinstance(gate, SingleQuditUnitary):
            gates.append(
                {
                    "kind": "unitary",
                    "target": gate.target,
                    "matrix": [
                        [[float(x.real), float(x.imag)] for x in row]
                        for row in gate.matrix
                    ],
                }
            )
        else:
            raise TypeError(f"unknown gate type {type(gate).__name__}")
    return {"n": circuit.system.n, "d": circuit.system.d, "gates": gates}


def _gate_field(doc: dict[str, Any], index: int, key: str) -> Any:
    if key not in doc:
        raise ValueError(f"gate {index}: missing field {key!r}")
    return doc[key]


def circuit_from_dict(doc: Any) -> Circuit:
    """Parse and validate the JSON circuit format."""
    if not isinstance(doc, dict):
        raise ValueError("circuit document must be a JSON object")
    for key in ("n", "d", "gates"):
        if key not in doc:
            raise ValueError(f"circuit document missing field {key!r}")
    if not isinstance(doc["n"], int) or not isinstance(doc["d"], int):
        raise ValueError("circuit fields 'n' and 'd' must be integers")
    system = QuditSystem(doc["n"], doc["d"])
    if not isinstance(doc["gates"], list):
        raise ValueError("circuit field 'gates' must be a list")
    gates: list[Gate] = []
    for i, g in enumerate(doc["gates"]):
        if not isinstance(g, dict):
            raise ValueError(f"gate {i} must be a JSON object")
        kind = _gate_field(g, i, "kind")
        if kind == "translation":
            gates.append(
                Translation(
                    target=int(_gate_field(g, i, "target")),
                    amount=int(_gate_field(g, i, "amount")),
                )
            )
        elif kind == "cadd":
            gates.append(
                ControlledAdd(
                    control=int(_gate_field(g, i, "control")),
                    target=int(_gate_field(g, i, "target")),
                    multiplier=int(_gate_field(g, i, "multiplier")),
                )
            )
        elif kind == "ccadd":
            gates.append(
                DoublyControlledAdd(
                    k_control=int(_gate_field(g, i, "k_control")),
                    j_control=int(_gate_field(g, i, "j_control")),
                    target=int(_gate_field(g, i, "target")),
                )
            )
        elif kind == "unitary":
            rows = _gate_field(g, i, "matrix")
            matrix = np.array(
                [[complex(re, im) for re, im in row] for row in rows],
                dtype=np.complex128,
            )
            gates.append(
                SingleQuditUnitary(
                    target=int(_gate_field(g, i, "target")), matrix=matrix
                )
            )
        else:
            raise ValueError(f"gate {i}: unknown kind {kind!r}")
    return Circuit(system, tuple(gates))
