"""Gate-level circuits: Pauli gadgets, the UCC ansatz, and reference states.

The gate set is {X, H, RX, RZ, CNOT}.  Rotation gates follow the standard
convention R_a(phi) = exp(-i phi/2 * a).  A rotation angle is either fixed
or bound to a named slot theta_i through a fixed multiplier, so one ansatz
parameter can drive several gadget angles; binding applies the global
parameter scale c on top (angle = multiplier * c * theta_raw).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .errors import UnboundParameterError
from .fermion import FermionOperator, jordan_wigner
from .paulis import PauliSum, PauliTerm

__all__ = [
    "Gate",
    "ParametricCircuit",
    "Excitation",
    "pauli_gadget",
    "ucc_excitations",
    "build_ucc_ansatz",
    "reference_circuit",
    "fold_circuit",
    "DEFAULT_PARAM_SCALE",
]

DEFAULT_PARAM_SCALE = 2.0

_ROTATIONS = ("rx", "rz")
_KINDS = ("x", "h", "rx", "rz", "cnot")


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None     # fixed radians, exclusive with slot
    slot: str | None = None        # named parameter
    multiplier: float = 1.0        # angle = multiplier * (scale * theta_slot)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "cnot":
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError("cnot needs distinct control and target")
        elif len(self.qubits) != 1:
            raise ValueError(f"{self.kind} is a single-qubit gate")
        if self.kind in _ROTATIONS:
            if (self.angle is None) == (self.slot is None):
                raise ValueError("rotation carries exactly one of angle/slot")
        elif self.angle is not None or self.slot is not None:
            raise ValueError(f"{self.kind} takes no angle")

    def dagger(self) -> "Gate":
        if self.kind in _ROTATIONS:
            if self.slot is not None:
                return replace(self, multiplier=-self.multiplier)
            return replace(self, angle=-self.angle)
        return self  # x, h, cnot are self-inverse

    def bound_angle(self, values: dict[str, float], scale: float) -> float | None:
        if self.kind not in _ROTATIONS:
            return None
        if self.slot is None:
            return self.angle
        if self.slot not in values:
            raise UnboundParameterError(f"slot {self.slot!r} has no value")
        return self.multiplier * scale * values[self.slot]


@dataclass
class ParametricCircuit:
    """Ordered gate list over named angle slots with a parameter scale."""

    n_qubits: int
    gates: list[Gate] = field(default_factory=list)
    params: list[str] = field(default_factory=list)
    scale: float = DEFAULT_PARAM_SCALE

    def __post_init__(self):
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits:
                raise ValueError("gate qubit index outside the register")
        referenced = {g.slot for g in self.gates if g.slot is not None}
        missing = referenced - set(self.params)
        if missing:
            raise ValueError(f"gates reference undeclared slots {sorted(missing)}")

    @property
    def n_params(self) -> int:
        return len(self.params)

    def gate_count(self) -> int:
        return len(self.gates)

    def cnot_count(self) -> int:
        return sum(1 for g in self.gates if g.kind == "cnot")

    def extended(self, gates: Iterable[Gate]) -> "ParametricCircuit":
        return ParametricCircuit(
            self.n_qubits, self.gates + list(gates), list(self.params), self.scale
        )

    def bind(self, theta: Sequence[float]) -> "BoundCircuit":
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (len(self.params),):
            raise ValueError(
                f"expected {len(self.params)} parameters, got {theta.shape}"
            )
        values = dict(zip(self.params, theta))
        ops = []
        for g in self.gates:
            ops.append((g.kind, g.qubits, g.bound_angle(values, self.scale)))
        return BoundCircuit(self.n_qubits, ops)

    def to_json_dict(self) -> dict:
        records = []
        for g in self.gates:
            rec: dict = {"kind": g.kind, "qubits": list(g.qubits)}
            if g.kind in _ROTATIONS:
                if g.slot is not None:
                    rec["slot"] = g.slot
                    rec["multiplier"] = g.multiplier
                else:
                    rec["angle"] = g.angle
            records.append(rec)
        return {
            "n_qubits": self.n_qubits,
            "params": list(self.params),
            "scale": self.scale,
            "gates": records,
        }


@dataclass(frozen=True)
class BoundCircuit:
    """Fully resolved gate list: (kind, qubits, angle or None)."""

    n_qubits: int
    ops: list[tuple[str, tuple[int, ...], float | None]]

    def gate_count(self) -> int:
        return len(self.ops)

    def dagger(self) -> "BoundCircuit":
        out = []
        for kind, qubits, angle in reversed(self.ops):
            out.append((kind, qubits, -angle if kind in _ROTATIONS else angle))
        return BoundCircuit(self.n_qubits, out)


@dataclass(frozen=True)
class Excitation:
    """Spin-conserving excitation from the HF reference."""

    rank: int
    occupied: tuple[int, ...]
    virtual: tuple[int, ...]
    slot: str

    def __post_init__(self):
        if self.rank not in (1, 2):
            raise ValueError("rank must be 1 or 2")
        if set(self.occupied) & set(self.virtual):
            raise ValueError("occupied and virtual index sets overlap")
        if list(self.occupied) != sorted(self.occupied) or list(
            self.virtual
        ) != sorted(self.virtual):
            raise ValueError("index tuples must be ascending")

    def generator(self, n_spin_orbitals: int) -> FermionOperator:
        """Anti-Hermitian generator T - T^dagger at unit amplitude."""
        op = FermionOperator(n_spin_orbitals)
        if self.rank == 1:
            (i,), (a,) = self.occupied, self.virtual
            op.add_term(1.0, [(a, True), (i, False)])
            op.add_term(-1.0, [(i, True), (a, False)])
        else:
            (i, j), (a, b) = self.occupied, self.virtual
            op.add_term(1.0, [(a, True), (b, True), (i, False), (j, False)])
            op.add_term(-1.0, [(j, True), (i, True), (b, False), (a, False)])
        return op


def pauli_gadget(term: PauliTerm, slot: str | None = None, *,
                 angle: float | None = None, multiplier: float = 1.0) -> list[Gate]:
    """Gate sequence implementing exp(-i(theta/2) P) for one Pauli string.

    Basis-in layer (H on X qubits, RX(+pi/2) on Y qubits), CNOT ladder onto
    the last active qubit, RZ(theta) there, then the mirrored ladder and
    inverse basis layer.  Identity qubits are untouched.
    """
    if term.is_identity():
        raise ValueError("gadget for the identity string is a global phase only")
    active = [q for q in range(term.n_qubits) if (term.x | term.z) >> q & 1]
    ops = term.ops
    basis_in: list[Gate] = []
    basis_out: list[Gate] = []
    for q in active:
        if ops[q] == "X":
            basis_in.append(Gate("h", (q,)))
            basis_out.append(Gate("h", (q,)))
        elif ops[q] == "Y":
            basis_in.append(Gate("rx", (q,), angle=np.pi / 2))
            basis_out.append(Gate("rx", (q,), angle=-np.pi / 2))
    ladder = [Gate("cnot", (active[k], active[k + 1])) for k in range(len(active) - 1)]
    target = active[-1]
    if slot is not None:
        rz = Gate("rz", (target,), slot=slot, multiplier=multiplier)
    else:
        if angle is None:
            raise ValueError("provide a slot or a fixed angle")
        rz = Gate("rz", (target,), angle=angle * multiplier)
    return basis_in + ladder + [rz] + ladder[::-1] + basis_out


def ucc_excitations(
    n_electrons: int, n_spin_orbitals: int, rank_max: int = 2
) -> list[Excitation]:
    """Spin-conserving singles and doubles in the universal ordering.

    Iterates the HF-occupied indices j upward; for each j first all singles
    out of j, then all doubles whose lowest occupied index is j (so each
    double appears exactly once).  Blocked spin-orbital convention: indices
    below n_spin_orbitals/2 are alpha, the rest beta.
    """
    if n_electrons > n_spin_orbitals:
        raise ValueError("more electrons than spin orbitals")
    if n_electrons % 2 or n_spin_orbitals % 2:
        raise ValueError("closed-shell blocked reference needs even counts")
    if rank_max < 1 or rank_max > 2:
        raise ValueError("rank_max must be 1 or 2")
    n_spatial = n_spin_orbitals // 2
    n_occ = n_electrons // 2
    spin = lambda so: 0 if so < n_spatial else 1
    occupied = list(range(n_occ)) + list(range(n_spatial, n_spatial + n_occ))
    occ_set = set(occupied)
    virtual = [q for q in range(n_spin_orbitals) if q not in occ_set]
    out: list[Excitation] = []
    counter = 0
    for j in occupied:
        for a in virtual:
            if spin(a) == spin(j):
                out.append(Excitation(1, (j,), (a,), f"t{counter}"))
                counter += 1
        if rank_max < 2:
            continue
        for j2 in occupied:
            if j2 <= j:
                continue
            for va in virtual:
                for vb in virtual:
                    if vb <= va:
                        continue
                    if sorted((spin(j), spin(j2))) != sorted((spin(va), spin(vb))):
                        continue
                    out.append(Excitation(2, (j, j2), (va, vb), f"t{counter}"))
                    counter += 1
    return out


def build_ucc_ansatz(
    excitations: Sequence[Excitation],
    reference: ParametricCircuit,
    scale: float = DEFAULT_PARAM_SCALE,
) -> ParametricCircuit:
    """Reference gates followed by one Pauli-gadget block per excitation.

    Each excitation contributes the gadgets of JW(T - T^dagger); the strings
    within one block mutually commute, so a single first-order step is exact
    per block.  All gadgets of a block share the excitation's slot; the JW
    coefficient enters through per-gadget angle multipliers.
    """
    n = reference.n_qubits
    gates = list(reference.gates)
    params: list[str] = []
    for exc in excitations:
        image = jordan_wigner(exc.generator(n))
        params.append(exc.slot)
        for term in image.terms():
            # term.coeff = i*r with r real; exp(theta * i*r*P) = exp(-i(-2r*theta)/2 P)
            if abs(term.coeff.real) > 1e-12:
                raise ValueError("excitation generator is not anti-Hermitian")
            gates.extend(
                pauli_gadget(term, slot=exc.slot, multiplier=-2.0 * term.coeff.imag)
            )
    return ParametricCircuit(n, gates, params, scale)


def reference_circuit(
    determinants: Sequence[str],
    n_qubits: int,
    relative_sign: int = 1,
) -> ParametricCircuit:
    """Prepare a single determinant or an equal two-determinant superposition.

    Determinants are occupation bitstrings with qubit 0 leftmost.  A single
    determinant becomes X gates on its occupied qubits; two determinants
    become X on the common occupations, an H (plus Z for a negative relative
    sign) on the first differing qubit, a CNOT cascade through the remaining
    differing qubits, and X corrections, yielding
    (|d1> + sign*|d2>)/sqrt(2).
    """
    dets = [d.strip() for d in determinants]
    if not 1 <= len(dets) <= 2:
        raise ValueError("one or two determinants supported")
    for d in dets:
        if len(d) != n_qubits or set(d) - {"0", "1"}:
            raise ValueError(f"bad determinant {d!r}")
    if relative_sign not in (1, -1):
        raise ValueError("relative_sign must be +1 or -1")

    if len(dets) == 1:
        gates = [Gate("x", (q,)) for q, c in enumerate(dets[0]) if c == "1"]
        return ParametricCircuit(n_qubits, gates, [])

    d1, d2 = dets
    if d1.count("1") != d2.count("1"):
        raise ValueError("determinants carry different particle numbers")
    differing = [q for q in range(n_qubits) if d1[q] != d2[q]]
    if len(differing) < 2:
        raise ValueError("superposed determinants must differ on >= 2 qubits")
    common = [q for q in range(n_qubits) if d1[q] == d2[q] == "1"]

    gates = [Gate("x", (q,)) for q in common]
    pivot = differing[0]
    gates.append(Gate("h", (pivot,)))
    if relative_sign == -1:
        # RZ(pi) = -i Z phases the |1> branch; the global -i is irrelevant
        gates.append(Gate("rz", (pivot,), angle=np.pi))
    for q in differing[1:]:
        gates.append(Gate("cnot", (pivot, q)))
    # map the |00..> / |11..> branches onto d1 / d2 on the differing qubits
    for q in differing:
        if d1[q] == "1":
            gates.append(Gate("x", (q,)))
    return ParametricCircuit(n_qubits, gates, [])


def fold_circuit(circuit: BoundCircuit, gamma: int) -> BoundCircuit:
    """Unitary folding: C (C^dagger C)^((gamma-1)/2), gamma odd.

    Logically the identity transformation; on noisy hardware the gate count
    grows by exactly gamma, scaling the effective gate noise.
    """
    if gamma < 1 or gamma % 2 == 0:
        raise ValueError("folding factor must be an odd integer >= 1")
    ops = list(circuit.ops)
    inverse = circuit.dagger().ops
    out = list(ops)
    for _ in range((gamma - 1) // 2):
        out.extend(inverse)
        out.extend(ops)
    return BoundCircuit(circuit.n_qubits, out)
