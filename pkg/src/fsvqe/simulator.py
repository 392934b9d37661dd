"""Statevector and density-matrix simulation with a tunable noise model.

Basis convention: qubit 0 is the most significant bit of the state index,
so outcome bitstrings read left to right as qubit 0, 1, ...

The noise model applies, after each ideal gate, a depolarizing channel on
the gate's qubits (rate p1 or p2) followed by thermal relaxation for the
gate duration: amplitude damping with 1 - exp(-t/T1), then pure dephasing
completing the total coherence decay to exp(-t/T2).  Readout error flips
each measured bit independently with probability p_spam.  Idle qubits do
not relax (durations are tied to gates, not wall-clock scheduling).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import product

import numpy as np

from .circuits import BoundCircuit
from .errors import CapacityError, NoiseModelError
from .paulis import PauliSum, expectation_dense

__all__ = [
    "QuantumState",
    "NoiseModel",
    "Counts",
    "run_pure",
    "run_noisy",
    "sample",
    "scale_noise",
    "make_rng",
    "IBM_LIKE_NOISE",
    "T1_IDEAL_US",
    "T2_IDEAL_US",
]

MAX_PURE_QUBITS = 20
MAX_MIXED_QUBITS = 10

T1_IDEAL_US = 2000.0
T2_IDEAL_US = 1000.0


def make_rng(seed) -> np.random.Generator:
    """Counter-based generator so experiment outputs are bit-reproducible."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


# ---------------------------------------------------------------------------
# states
# ---------------------------------------------------------------------------

@dataclass
class QuantumState:
    kind: str  # "pure" | "mixed"
    data: np.ndarray

    @property
    def n_qubits(self) -> int:
        return int(round(math.log2(self.data.shape[0])))

    def validate(self):
        if self.kind == "pure":
            if abs(np.linalg.norm(self.data) - 1.0) > 1e-10:
                raise ValueError("statevector norm deviates from 1")
        elif self.kind == "mixed":
            rho = self.data
            if abs(np.trace(rho).real - 1.0) > 1e-8:
                raise ValueError("density matrix trace deviates from 1")
            if np.max(np.abs(rho - rho.conj().T)) > 1e-8:
                raise ValueError("density matrix is not Hermitian")
            if np.linalg.eigvalsh(rho).min() < -1e-8:
                raise ValueError("density matrix has a negative eigenvalue")
        else:
            raise ValueError(f"unknown state kind {self.kind!r}")
        return self

    def probabilities(self) -> np.ndarray:
        if self.kind == "pure":
            return np.abs(self.data) ** 2
        return np.real(np.diag(self.data)).clip(min=0.0)

    def purity(self) -> float:
        if self.kind == "pure":
            return 1.0
        return float(np.real(np.trace(self.data @ self.data)))

    def expectation(self, observable: PauliSum, atol: float = 1e-9) -> float:
        return expectation_dense(observable, self.data, atol=atol)

    def as_density(self) -> np.ndarray:
        if self.kind == "mixed":
            return self.data
        return np.outer(self.data, self.data.conj())


def _initial_index(init, n_qubits: int) -> int:
    if init is None:
        return 0
    if isinstance(init, str):
        if len(init) != n_qubits or set(init) - {"0", "1"}:
            raise ValueError(f"bad initial bitstring {init!r}")
        return int(init, 2)
    return int(init)


# ---------------------------------------------------------------------------
# noise model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NoiseModel:
    t1_us: float
    t2_us: float
    t_gate1_ns: float
    t_gate2_ns: float
    p1: float
    p2: float
    p_spam: float

    def __post_init__(self):
        if self.t2_us > 2 * self.t1_us + 1e-12:
            raise NoiseModelError("T2 must not exceed 2*T1")
        for name in ("p1", "p2", "p_spam"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise NoiseModelError(f"{name}={v} outside [0, 1]")
        if min(self.t1_us, self.t2_us) <= 0 or min(self.t_gate1_ns, self.t_gate2_ns) < 0:
            raise NoiseModelError("times must be positive (gate times >= 0)")

    def is_trivial(self) -> bool:
        return (
            self.p1 == 0.0
            and self.p2 == 0.0
            and self.t_gate1_ns == 0.0
            and self.t_gate2_ns == 0.0
        )

    def relaxation(self, t_gate_ns: float) -> tuple[float, float]:
        """(amplitude-damping gamma, phase-flip probability) for one gate."""
        t_us = t_gate_ns * 1e-3
        gamma = 1.0 - math.exp(-t_us / self.t1_us)
        # dephasing completes the coherence decay from sqrt(1-gamma) to e^{-t/T2}
        residual = math.exp(-t_us / self.t2_us + 0.5 * t_us / self.t1_us)
        q = 0.5 * (1.0 - residual)
        return gamma, q


IBM_LIKE_NOISE = NoiseModel(
    t1_us=290.0,
    t2_us=145.0,
    t_gate1_ns=35.0,
    t_gate2_ns=300.0,
    p1=1e-4,
    p2=1e-3,
    p_spam=1e-2,
)


def scale_noise(base: NoiseModel, lam: float) -> NoiseModel:
    """Interpolate between the noiseless device (lam=0) and ``base`` (lam=1).

    T1 and T2 scale exponentially from their ideal plateaus (2000 us and
    1000 us); every other parameter scales linearly from zero.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must lie in [0, 1]")
    return NoiseModel(
        t1_us=T1_IDEAL_US * (base.t1_us / T1_IDEAL_US) ** lam,
        t2_us=T2_IDEAL_US * (base.t2_us / T2_IDEAL_US) ** lam,
        t_gate1_ns=lam * base.t_gate1_ns,
        t_gate2_ns=lam * base.t_gate2_ns,
        p1=lam * base.p1,
        p2=lam * base.p2,
        p_spam=lam * base.p_spam,
    )


# ---------------------------------------------------------------------------
# gate application primitives
# ---------------------------------------------------------------------------

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


def _gate_matrix(kind: str, angle: float | None) -> np.ndarray:
    if kind == "x":
        return _X
    if kind == "h":
        return _H
    if kind == "rx":
        c, s = math.cos(angle / 2), math.sin(angle / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    if kind == "rz":
        return np.array([[np.exp(-0.5j * angle), 0], [0, np.exp(0.5j * angle)]])
    raise ValueError(f"no matrix for gate kind {kind!r}")


_CNOT4 = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
).reshape(2, 2, 2, 2)


def _apply_axis(tensor: np.ndarray, U: np.ndarray, axis: int) -> np.ndarray:
    out = np.tensordot(U, tensor, axes=([1], [axis]))
    return np.moveaxis(out, 0, axis)


def _apply_two_axes(tensor, U4, ax1, ax2):
    out = np.tensordot(U4, tensor, axes=([2, 3], [ax1, ax2]))
    return np.moveaxis(out, (0, 1), (ax1, ax2))


def _evolve_pure(psi: np.ndarray, ops, n: int) -> np.ndarray:
    t = psi.reshape((2,) * n)
    for kind, qubits, angle in ops:
        if kind == "cnot":
            t = _apply_two_axes(t, _CNOT4, qubits[0], qubits[1])
        else:
            t = _apply_axis(t, _gate_matrix(kind, angle), qubits[0])
    return t.reshape(-1)


def _unitary_mixed(t, U, qubits, n):
    if len(qubits) == 1:
        t = _apply_axis(t, U, qubits[0])
        return _apply_axis(t, U.conj(), n + qubits[0])
    t = _apply_two_axes(t, U, qubits[0], qubits[1])
    return _apply_two_axes(t, U.conj(), n + qubits[0], n + qubits[1])


def _kraus_mixed(t, kraus, q, n):
    acc = None
    for K in kraus:
        term = _apply_axis(t, K, q)
        term = _apply_axis(term, K.conj(), n + q)
        acc = term if acc is None else acc + term
    return acc


def _depolarize(t, qubits, p, n):
    if p == 0.0:
        return t
    row = list(range(n))
    col = list(range(n, 2 * n))
    for q in qubits:
        col[q] = row[q]
    keep_rows = [i for i in range(n) if i not in qubits]
    keep_cols = [n + i for i in range(n) if i not in qubits]
    reduced = np.einsum(t, row + col, keep_rows + keep_cols)
    out = np.zeros_like(t)
    k = len(qubits)
    view = np.moveaxis(
        out,
        [q for q in qubits] + [n + q for q in qubits],
        list(range(2 * k)),
    )
    for bits in product((0, 1), repeat=k):
        view[bits + bits] = reduced / (2**k)
    return (1.0 - p) * t + p * out


def _relax(t, qubits, gamma, q_flip, n):
    if gamma > 0.0:
        k0 = np.array([[1, 0], [0, math.sqrt(1 - gamma)]], dtype=complex)
        k1 = np.array([[0, math.sqrt(gamma)], [0, 0]], dtype=complex)
        for q in qubits:
            t = _kraus_mixed(t, (k0, k1), q, n)
    if q_flip > 0.0:
        z = np.diag([1.0, -1.0]).astype(complex)
        for q in qubits:
            tz = _apply_axis(t, z, q)
            tz = _apply_axis(tz, z, n + q)
            t = (1.0 - q_flip) * t + q_flip * tz
    return t


def _evolve_mixed(rho: np.ndarray, ops, n: int, noise: NoiseModel) -> np.ndarray:
    t = rho.reshape((2,) * (2 * n))
    for kind, qubits, angle in ops:
        U = _CNOT4 if kind == "cnot" else _gate_matrix(kind, angle)
        t = _unitary_mixed(t, U, qubits, n)
        if kind == "cnot":
            t = _depolarize(t, qubits, noise.p2, n)
            gamma, qf = noise.relaxation(noise.t_gate2_ns)
        else:
            t = _depolarize(t, qubits, noise.p1, n)
            gamma, qf = noise.relaxation(noise.t_gate1_ns)
        t = _relax(t, qubits, gamma, qf, n)
    dim = 1 << n
    return t.reshape(dim, dim)


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------

def run_pure(circuit: BoundCircuit, init=None) -> QuantumState:
    """Exact statevector after applying the bound circuit to a basis state."""
    n = circuit.n_qubits
    if n > MAX_PURE_QUBITS:
        raise CapacityError(f"statevector backend limited to {MAX_PURE_QUBITS} qubits")
    psi = np.zeros(1 << n, dtype=complex)
    psi[_initial_index(init, n)] = 1.0
    psi = _evolve_pure(psi, circuit.ops, n)
    return QuantumState("pure", psi)


def continue_pure(state: QuantumState, ops) -> QuantumState:
    """Apply further gates to an existing pure state (post-rotations)."""
    psi = _evolve_pure(state.data.copy(), ops, state.n_qubits)
    return QuantumState("pure", psi)


def run_noisy(circuit: BoundCircuit, noise: NoiseModel, init=None) -> QuantumState:
    """Density-matrix evolution under the per-gate noise channels."""
    n = circuit.n_qubits
    if n > MAX_MIXED_QUBITS:
        raise CapacityError(f"density backend limited to {MAX_MIXED_QUBITS} qubits")
    dim = 1 << n
    rho = np.zeros((dim, dim), dtype=complex)
    idx = _initial_index(init, n)
    rho[idx, idx] = 1.0
    rho = _evolve_mixed(rho, circuit.ops, n, noise)
    return QuantumState("mixed", rho)


def continue_noisy(state: QuantumState, ops, noise: NoiseModel) -> QuantumState:
    rho = _evolve_mixed(state.data.copy(), ops, state.n_qubits, noise)
    return QuantumState("mixed", rho)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

@dataclass
class Counts:
    shots: int
    histogram: dict[str, int]

    def __post_init__(self):
        if sum(self.histogram.values()) != self.shots:
            raise ValueError("histogram does not sum to the shot count")

    @property
    def n_qubits(self) -> int:
        return len(next(iter(self.histogram)))

    def distribution(self, n_qubits: int | None = None) -> np.ndarray:
        n = n_qubits if n_qubits is not None else self.n_qubits
        out = np.zeros(1 << n)
        for bits, c in self.histogram.items():
            out[int(bits, 2)] = c / self.shots
        return out


def apply_readout_flips(probs: np.ndarray, p_spam: float, n: int) -> np.ndarray:
    """Push a probability vector through the independent-flip readout channel."""
    if p_spam == 0.0:
        return probs
    A = np.array([[1 - p_spam, p_spam], [p_spam, 1 - p_spam]])
    t = probs.reshape((2,) * n)
    for q in range(n):
        t = _apply_axis(t, A, q)
    return t.reshape(-1).real


def sample(
    state: QuantumState,
    shots: int,
    noise: NoiseModel | None = None,
    rng=None,
) -> Counts:
    """Multinomial draw from the Born distribution, with optional readout error."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = make_rng(rng if rng is not None else 0)
    n = state.n_qubits
    probs = state.probabilities().astype(float)
    probs = np.maximum(probs, 0.0)
    probs /= probs.sum()
    if noise is not None and noise.p_spam > 0.0:
        probs = apply_readout_flips(probs, noise.p_spam, n)
        probs = np.maximum(probs, 0.0)
        probs /= probs.sum()
    draws = rng.multinomial(shots, probs)
    hist = {
        format(idx, f"0{n}b"): int(c) for idx, c in enumerate(draws) if c > 0
    }
    return Counts(shots=shots, histogram=hist)
