"""Folded-spectrum VQE toolkit: molecular excited states on simulated qubits."""

__version__ = "0.1.0"

from .paulis import (  # noqa: F401
    PauliTerm,
    PauliSum,
    pauli_mul,
    sum_simplify,
    sum_product,
    to_dense,
    expectation_dense,
)
