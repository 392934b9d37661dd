"""Second-quantized operators, FCIDUMP ingestion, and the qubit mapping.

Spin-orbital convention: blocked, all alpha then all beta; spin-orbital
``p + sigma * n_spatial`` for spatial orbital ``p`` and spin ``sigma``
(0 = alpha, 1 = beta).  The closed-shell Hartree-Fock determinant occupies
the first n_electrons/2 spin orbitals of each block, e.g. |1010> for H2 in
a minimal basis.

The qubit mapping sends a_j^dagger to Z_0 .. Z_{j-1} (X_j - iY_j)/2 and
a_j to Z_0 .. Z_{j-1} (X_j + iY_j)/2, so qubit |1> marks an occupied
spin orbital.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

from .errors import DimensionMismatchError, FcidumpError
from .paulis import DEFAULT_TOL, PauliSum

__all__ = [
    "FermionOperator",
    "IntegralData",
    "MOFrame",
    "parse_fcidump",
    "build_hamiltonian",
    "jordan_wigner",
    "mo_phase_align",
    "hartree_fock_bitstring",
    "number_operator",
]

LadderOp = tuple[int, bool]  # (spin-orbital index, is_creation)


@dataclass
class FermionOperator:
    """Sum of products of fermionic ladder operators.

    ``terms`` maps an ordered ladder-op sequence to its coefficient; terms
    merge only when the sequences are identical (no normal ordering).
    """

    n_spin_orbitals: int
    terms: dict[tuple[LadderOp, ...], complex] = field(default_factory=dict)

    def add_term(self, coeff: complex, ladder_ops: Iterable[LadderOp]):
        ops = tuple((int(i), bool(c)) for i, c in ladder_ops)
        for idx, _ in ops:
            if not 0 <= idx < self.n_spin_orbitals:
                raise ValueError(f"orbital index {idx} out of range")
        self.terms[ops] = self.terms.get(ops, 0j) + complex(coeff)

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "FermionOperator") -> "FermionOperator":
        if self.n_spin_orbitals != other.n_spin_orbitals:
            raise DimensionMismatchError("spin-orbital counts differ")
        out = FermionOperator(self.n_spin_orbitals, dict(self.terms))
        for ops, c in other.terms.items():
            out.terms[ops] = out.terms.get(ops, 0j) + c
        return out


@dataclass
class IntegralData:
    """Molecular integrals in the MO basis, chemists' notation for h2."""

    n_spatial_orbitals: int
    n_electrons: int
    nuclear_repulsion: float
    h1: np.ndarray
    h2: np.ndarray
    ms2: int = 0

    def validate(self, atol: float = 1e-8):
        h1, h2 = self.h1, self.h2
        n = self.n_spatial_orbitals
        if h1.shape != (n, n) or h2.shape != (n, n, n, n):
            raise DimensionMismatchError("integral tensor shapes inconsistent")
        if np.max(np.abs(h1 - h1.T)) > atol:
            raise FcidumpError("one-body integrals are not symmetric")
        for perm in [(1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1)]:
            if np.max(np.abs(h2 - h2.transpose(perm))) > atol:
                raise FcidumpError("two-body integrals break 8-fold symmetry")
        return self


@dataclass
class MOFrame:
    """MO coefficients plus the AO overlap at one geometry."""

    coeffs: np.ndarray  # AO x MO
    overlap: np.ndarray  # AO x AO

    def validate(self, atol: float = 1e-8):
        gram = self.coeffs.T @ self.overlap @ self.coeffs
        if np.max(np.abs(gram - np.eye(gram.shape[0]))) > atol:
            raise ValueError("MO coefficients are not S-orthonormal")
        return self


def parse_fcidump(stream: TextIO | str) -> IntegralData:
    """Parse a Knowles-Handy FCIDUMP into symmetry-completed integrals."""
    if isinstance(stream, str):
        lines = stream.splitlines()
    else:
        lines = stream.read().splitlines()

    header_fields: dict[str, int] = {}
    body_start = None
    header_text = ""
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        header_text += " " + stripped
        if stripped.endswith(("&END", "/", "$END")):
            body_start = lineno
            break
    if body_start is None:
        raise FcidumpError("no &END/'/' header terminator found", line=len(lines))

    cleaned = (
        header_text.replace("&FCI", " ")
        .replace("&END", " ")
        .replace("$END", " ")
        .replace("/", " ")
        .replace(",", " ")
    )
    tokens = cleaned.split()
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if "=" in tok:
            key, _, val = tok.partition("=")
            if not val:
                i += 1
                val = tokens[i]
            key = key.upper()
            if key in ("NORB", "NELEC", "MS2"):
                try:
                    header_fields[key] = int(val)
                except ValueError:
                    raise FcidumpError(f"bad header value {tok!r}", line=1) from None
        i += 1
    for required in ("NORB", "NELEC"):
        if required not in header_fields:
            raise FcidumpError(f"missing {required} in header", line=1)

    norb = header_fields["NORB"]
    nelec = header_fields["NELEC"]
    if norb <= 0 or nelec < 0:
        raise FcidumpError("NORB/NELEC out of range", line=1)
    h1 = np.zeros((norb, norb))
    h2 = np.zeros((norb, norb, norb, norb))
    e_core = 0.0

    for lineno in range(body_start, len(lines)):
        stripped = lines[lineno].strip()
        if not stripped:
            continue
        parts = stripped.split()
        if len(parts) != 5:
            raise FcidumpError(
                f"expected 'value i j k l', got {stripped!r}", line=lineno + 1
            )
        try:
            val = float(parts[0].replace("D", "E").replace("d", "e"))
            i, j, k, l = (int(p) for p in parts[1:])
        except ValueError:
            raise FcidumpError(f"unparsable record {stripped!r}", line=lineno + 1) from None
        if min(i, j, k, l) < 0 or max(i, j, k, l) > norb:
            raise FcidumpError(f"orbital index out of range in {stripped!r}", line=lineno + 1)
        if i == j == k == l == 0:
            e_core = val
        elif k == l == 0:
            if i == 0 or j == 0:
                raise FcidumpError(f"bad one-body indices in {stripped!r}", line=lineno + 1)
            h1[i - 1, j - 1] = val
            h1[j - 1, i - 1] = val
        else:
            if min(i, j, k, l) == 0:
                raise FcidumpError(f"bad two-body indices in {stripped!r}", line=lineno + 1)
            a, b, c, d = i - 1, j - 1, k - 1, l - 1
            for p, q in ((a, b), (b, a)):
                for r, s in ((c, d), (d, c)):
                    h2[p, q, r, s] = val
                    h2[r, s, p, q] = val

    data = IntegralData(norb, nelec, e_core, h1, h2, header_fields.get("MS2", 0))
    return data.validate()


def spin_orbital_index(spatial: int, spin: int, n_spatial: int) -> int:
    return spatial + spin * n_spatial


def spin_of(so_index: int, n_spin_orbitals: int) -> int:
    return 0 if so_index < n_spin_orbitals // 2 else 1


def hartree_fock_bitstring(n_electrons: int, n_spin_orbitals: int) -> str:
    """Closed-shell HF occupation in the blocked convention."""
    if n_electrons % 2:
        raise ValueError("closed-shell reference needs an even electron count")
    n_spatial = n_spin_orbitals // 2
    n_occ = n_electrons // 2
    block = "1" * n_occ + "0" * (n_spatial - n_occ)
    return block + block


def build_hamiltonian(data: IntegralData) -> FermionOperator:
    """Electronic Hamiltonian over 2*norb spin orbitals.

    H = E_nuc + sum_pq h_pq a^+_p a_q
        + 1/2 sum_pqrs (pq|rs) sum_st a^+_{p,s} a^+_{r,t} a_{s',t} a_{q,s}
    with (pq|rs) the chemists'-notation MO integrals.
    """
    n_spatial = data.n_spatial_orbitals
    n_so = 2 * n_spatial
    op = FermionOperator(n_so)
    if data.nuclear_repulsion != 0.0:
        op.add_term(data.nuclear_repulsion, ())

    h1, h2 = data.h1, data.h2
    for p in range(n_spatial):
        for q in range(n_spatial):
            if h1[p, q] == 0.0:
                continue
            for s in (0, 1):
                op.add_term(
                    h1[p, q],
                    [
                        (spin_orbital_index(p, s, n_spatial), True),
                        (spin_orbital_index(q, s, n_spatial), False),
                    ],
                )
    for p in range(n_spatial):
        for q in range(n_spatial):
            for r in range(n_spatial):
                for s in range(n_spatial):
                    val = h2[p, q, r, s]
                    if val == 0.0:
                        continue
                    for s1 in (0, 1):
                        for s2 in (0, 1):
                            i = spin_orbital_index(p, s1, n_spatial)
                            j = spin_orbital_index(r, s2, n_spatial)
                            k = spin_orbital_index(s, s2, n_spatial)
                            l = spin_orbital_index(q, s1, n_spatial)
                            if i == j or k == l:
                                continue  # a^+a^+ or aa on the same index
                            op.add_term(
                                0.5 * val,
                                [(i, True), (j, True), (k, False), (l, False)],
                            )
    return op


def _ladder_pauli(n_qubits: int, index: int, creation: bool) -> PauliSum:
    z_chain = (1 << index) - 1
    x_mask = 1 << index
    sign = -1.0 if creation else 1.0
    return PauliSum(
        n_qubits,
        {
            (x_mask, z_chain): 0.5,
            (x_mask, z_chain | x_mask): sign * 0.5j,
        },
    )


def jordan_wigner(op: FermionOperator, tol: float = DEFAULT_TOL) -> PauliSum:
    """Map a fermionic operator to a Pauli sum on n_spin_orbitals qubits."""
    n = op.n_spin_orbitals
    total: dict[tuple[int, int], complex] = {}
    cache: dict[LadderOp, PauliSum] = {}
    for ladder_ops, coeff in op.terms.items():
        acc = PauliSum.identity(n, coeff)
        for lop in ladder_ops:
            factor = cache.get(lop)
            if factor is None:
                factor = _ladder_pauli(n, lop[0], lop[1])
                cache[lop] = factor
            acc = acc @ factor
        for term in acc:
            key = (term.x, term.z)
            total[key] = total.get(key, 0j) + term.coeff
    return PauliSum(n, total, tol=tol)


def number_operator(n_spin_orbitals: int) -> FermionOperator:
    op = FermionOperator(n_spin_orbitals)
    for j in range(n_spin_orbitals):
        op.add_term(1.0, [(j, True), (j, False)])
    return op


def mo_phase_align(prev: MOFrame, next_coeffs: np.ndarray) -> np.ndarray:
    """Sign-fix MO columns of the next geometry against the previous frame.

    Computes P = C_prev^T S_prev C_next and flips every column of C_next
    whose diagonal element is negative.  Warns when an overlap magnitude
    drops below 0.5 (geometry step too large for unambiguous alignment).
    """
    next_coeffs = np.asarray(next_coeffs, dtype=float)
    if next_coeffs.shape[0] != prev.coeffs.shape[0]:
        raise DimensionMismatchError("AO dimensions differ between frames")
    P = prev.coeffs.T @ prev.overlap @ next_coeffs
    diag = np.diag(P)
    if np.min(np.abs(diag)) < 0.5:
        warnings.warn(
            "MO alignment ambiguous: |diagonal overlap| < 0.5; "
            "geometry step may be too large",
            stacklevel=2,
        )
    signs = np.where(diag < 0, -1.0, 1.0)
    return next_coeffs * signs[np.newaxis, :]


def apply_mo_signs(data: IntegralData, signs: np.ndarray) -> IntegralData:
    """Propagate MO sign flips into the integral tensors."""
    s = np.asarray(signs, dtype=float)
    h1 = data.h1 * np.outer(s, s)
    h2 = data.h2 * np.einsum("i,j,k,l->ijkl", s, s, s, s)
    return IntegralData(
        data.n_spatial_orbitals,
        data.n_electrons,
        data.nuclear_repulsion,
        h1,
        h2,
        data.ms2,
    )
