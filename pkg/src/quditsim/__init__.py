"""Simulator for n-qudit systems with dual q/k representations."""

from .analysis import (
    EntropyReport,
    Partition,
    SingleQuditObservable,
    commutator_qk,
    entropies,
    entropy_to_dict,
    expect_k,
    expect_q,
    k_distributions,
    k_observable_in_k_rep,
    k_observable_in_q_rep,
    partition,
    partition_to_dict,
    q_observable,
    shannon_entropy,
    translation_operator_k_rep,
    verify_translation_identity,
)
from .fourier import (
    dense_fourier_oracle,
    planewave,
    single_qudit_fourier,
    to_k_rep,
    to_q_rep,
)
from .gates import (
    Circuit,
    ControlledAdd,
    DoublyControlledAdd,
    FunctionalCircuitLayout,
    SingleQuditUnitary,
    Translation,
    apply_controlled_add,
    apply_doubly_controlled_add,
    apply_translation,
    build_functional_circuit,
    circuit_from_dict,
    circuit_to_dict,
    circuit_unitary_oracle,
    run_circuit,
    translation_gate_matrix,
)
from .groups import (
    DigitLabel,
    QuditSystem,
    add_mod,
    dot_mod,
    enumerate_labels,
    index_to_label,
    is_prime,
    label_to_index,
)
from .states import (
    Representation,
    StateVector,
    basis_state,
    fidelity,
    from_amplitudes,
    inner_product,
    probabilities,
    random_state,
    state_from_dict,
    state_to_dict,
    tensor_product,
)
from .verification import run_verification

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "ControlledAdd",
    "DigitLabel",
    "DoublyControlledAdd",
    "EntropyReport",
    "FunctionalCircuitLayout",
    "Partition",
    "QuditSystem",
    "Representation",
    "SingleQuditObservable",
    "SingleQuditUnitary",
    "StateVector",
    "Translation",
    "add_mod",
    "apply_controlled_add",
    "apply_doubly_controlled_add",
    "apply_translation",
    "basis_state",
    "build_functional_circuit",
    "circuit_from_dict",
    "circuit_to_dict",
    "circuit_unitary_oracle",
    "commutator_qk",
    "dense_fourier_oracle",
    "dot_mod",
    "entropies",
    "entropy_to_dict",
    "enumerate_labels",
    "expect_k",
    "expect_q",
    "fidelity",
    "from_amplitudes",
    "index_to_label",
    "inner_product",
    "is_prime",
    "k_distributions",
    "k_observable_in_k_rep",
    "k_observable_in_q_rep",
    "label_to_index",
    "partition",
    "partition_to_dict",
    "planewave",
    "probabilities",
    "q_observable",
    "random_state",
    "run_circuit",
    "run_verification",
    "shannon_entropy",
    "single_qudit_fourier",
    "state_from_dict",
    "state_to_dict",
    "tensor_product",
    "to_k_rep",
    "to_q_rep",
    "translation_gate_matrix",
    "translation_operator_k_rep",
    "verify_translation_identity",
]
