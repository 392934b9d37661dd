"""Folded-spectrum operator (H - omega)^2 and the dense diagonalization oracle.

Squaring the Hamiltonian is the expensive part of a fold and is independent
of omega, so H^2 is computed once and cached; refolding at a new omega only
updates the affine part -2*omega*H + omega^2*I.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, HermiticityError
from .paulis import DEFAULT_TOL, DENSE_MAX_QUBITS, PauliSum, sum_product, to_dense

__all__ = ["FoldedOperator", "fold", "exact_spectrum"]


@dataclass(frozen=True)
class FoldedOperator:
    base: PauliSum
    omega: float
    folded: PauliSum
    squared: PauliSum

    def refold(self, omega: float) -> "FoldedOperator":
        """New fold around a different target energy, reusing the cached H^2."""
        return _assemble(self.base, self.squared, float(omega))


def _assemble(h: PauliSum, squared: PauliSum, omega: float) -> FoldedOperator:
    shifted = squared + (-2.0 * omega) * h + PauliSum.identity(h.n_qubits, omega * omega)
    return FoldedOperator(base=h, omega=omega, folded=shifted, squared=squared)


def fold(h: PauliSum, omega: float, tol: float = DEFAULT_TOL) -> FoldedOperator:
    """Build (H - omega)^2 as a reduced Pauli sum.

    The term pattern is independent of omega; only coefficients (and in
    particular the identity coefficient) change with the target energy.
    """
    if not h.is_hermitian(1e-10):
        raise HermiticityError("folded-spectrum input must be Hermitian")
    squared = sum_product(h, h, tol=tol)
    return _assemble(h, squared, float(omega))


def exact_spectrum(h: PauliSum, eigenvectors: bool = False):
    """Full dense eigendecomposition; the FCI oracle for small registers."""
    if h.n_qubits > DENSE_MAX_QUBITS:
        raise CapacityError(
            f"exact spectrum limited to {DENSE_MAX_QUBITS} qubits, got {h.n_qubits}"
        )
    dense = to_dense(h)
    if np.max(np.abs(dense - dense.conj().T)) > 1e-9:
        raise HermiticityError("operator is not Hermitian")
    if eigenvectors:
        return np.linalg.eigh(dense)
    return np.linalg.eigvalsh(dense)
