"""Bit-level Pauli-string algebra.

Pauli strings are stored symplectically as two n-bit integer masks: an
X-part and a Z-part, with bit q of each mask describing qubit q.  The
(x, z) bit pair encodes a single-qubit operator as

    (0,0) -> I    (1,0) -> X    (1,1) -> Y    (0,1) -> Z

and the full string is ``i**popcount(x & z) * X^x * Z^z`` so that products
reduce to XOR plus a popcount phase bookkeeping step.  Coefficients stay
complex throughout; Hermiticity is only asserted when an expectation value
is requested.

Text serialization is one term per line, ``<re> <im> <opsstring>`` with the
ops string over IXYZ and qubit 0 leftmost.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import CapacityError, DimensionMismatchError, HermiticityError

__all__ = [
    "PauliTerm",
    "PauliSum",
    "pauli_mul",
    "sum_simplify",
    "sum_product",
    "to_dense",
    "expectation_dense",
    "DEFAULT_TOL",
    "DENSE_MAX_QUBITS",
]

DEFAULT_TOL = 1e-12
DENSE_MAX_QUBITS = 14

_I_POW = (1 + 0j, 1j, -1 + 0j, -1j)
_XZ_OF_LETTER = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_LETTER_OF_XZ = {v: k for k, v in _XZ_OF_LETTER.items()}


def _ops_string(n_qubits: int, x: int, z: int) -> str:
    return "".join(
        _LETTER_OF_XZ[((x >> q) & 1, (z >> q) & 1)] for q in range(n_qubits)
    )


def _index_mask(mask: int, n_qubits: int) -> int:
    """Map a qubit-indexed mask (bit q = qubit q) to basis-index bit order
    (qubit 0 = most significant bit, matching the leftmost-qubit-0 strings)."""
    out = 0
    for q in range(n_qubits):
        if (mask >> q) & 1:
            out |= 1 << (n_qubits - 1 - q)
    return out


def _product_key_phase(x1: int, z1: int, x2: int, z2: int) -> tuple[int, int, complex]:
    x3 = x1 ^ x2
    z3 = z1 ^ z2
    e = (
        (x1 & z1).bit_count()
        + (x2 & z2).bit_count()
        - (x3 & z3).bit_count()
        + 2 * (z1 & x2).bit_count()
    ) & 3
    return x3, z3, _I_POW[e]


@dataclass(frozen=True)
class PauliTerm:
    """One weighted Pauli string: ``coeff * P(x, z)`` on ``n_qubits`` qubits."""

    n_qubits: int
    x: int
    z: int
    coeff: complex = 1.0 + 0j

    def __post_init__(self):
        if self.n_qubits <= 0:
            raise ValueError("n_qubits must be positive")
        top = 1 << self.n_qubits
        if not (0 <= self.x < top and 0 <= self.z < top):
            raise ValueError("mask bits outside the qubit register")

    @classmethod
    def from_ops(cls, ops: str, coeff: complex = 1.0) -> "PauliTerm":
        x = z = 0
        for q, letter in enumerate(ops):
            try:
                xb, zb = _XZ_OF_LETTER[letter]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {letter!r}") from None
            x |= xb << q
            z |= zb << q
        return cls(len(ops), x, z, complex(coeff))

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliTerm":
        return cls(n_qubits, 0, 0, complex(coeff))

    @property
    def ops(self) -> str:
        return _ops_string(self.n_qubits, self.x, self.z)

    @property
    def weight(self) -> int:
        """Number of non-identity positions."""
        return (self.x | self.z).bit_count()

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def with_coeff(self, coeff: complex) -> "PauliTerm":
        return PauliTerm(self.n_qubits, self.x, self.z, complex(coeff))

    def __mul__(self, other):
        if isinstance(other, PauliTerm):
            return pauli_mul(self, other)
        return self.with_coeff(self.coeff * other)

    __rmul__ = __mul__

    def __repr__(self):
        return f"PauliTerm({self.coeff!r}, {self.ops!r})"


def pauli_mul(a: PauliTerm, b: PauliTerm) -> PauliTerm:
    """Product of two Pauli terms with the accumulated phase in the coefficient."""
    if a.n_qubits != b.n_qubits:
        raise DimensionMismatchError(
            f"cannot multiply terms on {a.n_qubits} and {b.n_qubits} qubits"
        )
    x3, z3, phase = _product_key_phase(a.x, a.z, b.x, b.z)
    return PauliTerm(a.n_qubits, x3, z3, a.coeff * b.coeff * phase)


def terms_anticommute(a: PauliTerm, b: PauliTerm) -> bool:
    """True when the strings anticommute (odd number of clashing positions)."""
    if a.n_qubits != b.n_qubits:
        raise DimensionMismatchError("qubit counts differ")
    return bool(((a.x & b.z) ^ (a.z & b.x)).bit_count() & 1)


class PauliSum:
    """Immutable weighted sum of Pauli strings with like terms merged.

    Terms are keyed by their (x, z) masks; construction merges duplicates
    and drops coefficients with magnitude <= ``tol``.
    """

    __slots__ = ("n_qubits", "_terms")

    def __init__(
        self,
        n_qubits: int,
        terms: Mapping[tuple[int, int], complex] | None = None,
        tol: float = DEFAULT_TOL,
    ):
        if n_qubits <= 0:
            raise ValueError("n_qubits must be positive")
        merged: dict[tuple[int, int], complex] = {}
        if terms:
            for key, c in terms.items():
                c = complex(c)
                if key in merged:
                    merged[key] += c
                else:
                    merged[key] = c
            merged = {k: c for k, c in merged.items() if abs(c) > tol}
        object.__setattr__(self, "n_qubits", n_qubits)
        object.__setattr__(self, "_terms", merged)

    def __setattr__(self, *_):
        raise AttributeError("PauliSum is immutable")

    @classmethod
    def from_terms(cls, terms: Iterable[PauliTerm], tol: float = DEFAULT_TOL) -> "PauliSum":
        terms = list(terms)
        if not terms:
            raise ValueError("cannot infer qubit count from an empty term list")
        n = terms[0].n_qubits
        acc: dict[tuple[int, int], complex] = {}
        for t in terms:
            if t.n_qubits != n:
                raise DimensionMismatchError("terms act on different qubit counts")
            key = (t.x, t.z)
            acc[key] = acc.get(key, 0j) + t.coeff
        return cls(n, acc, tol)

    @classmethod
    def zero(cls, n_qubits: int) -> "PauliSum":
        return cls(n_qubits)

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliSum":
        return cls(n_qubits, {(0, 0): complex(coeff)})

    # -- inspection ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[PauliTerm]:
        for (x, z), c in self._terms.items():
            yield PauliTerm(self.n_qubits, x, z, c)

    def terms(self) -> list[PauliTerm]:
        """Terms in canonical order (lexicographic by ops string)."""
        items = sorted(
            self._terms.items(),
            key=lambda kv: _ops_string(self.n_qubits, kv[0][0], kv[0][1]),
        )
        return [PauliTerm(self.n_qubits, x, z, c) for (x, z), c in items]

    def coefficient(self, ops: str) -> complex:
        t = PauliTerm.from_ops(ops)
        if t.n_qubits != self.n_qubits:
            raise DimensionMismatchError("ops string length differs from register")
        return self._terms.get((t.x, t.z), 0j)

    @property
    def identity_coefficient(self) -> complex:
        return self._terms.get((0, 0), 0j)

    def max_abs_imag(self) -> float:
        return max((abs(c.imag) for c in self._terms.values()), default=0.0)

    def is_hermitian(self, atol: float = 1e-10) -> bool:
        return self.max_abs_imag() <= atol

    # -- arithmetic ---------------------------------------------------------

    def _binary(self, other: "PauliSum", sign: float) -> "PauliSum":
        if self.n_qubits != other.n_qubits:
            raise DimensionMismatchError("qubit counts differ")
        acc = dict(self._terms)
        for key, c in other._terms.items():
            acc[key] = acc.get(key, 0j) + sign * c
        return PauliSum(self.n_qubits, acc)

    def __add__(self, other: "PauliSum") -> "PauliSum":
        return self._binary(other, 1.0)

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self._binary(other, -1.0)

    def __mul__(self, scalar) -> "PauliSum":
        scalar = complex(scalar)
        return PauliSum(
            self.n_qubits, {k: scalar * c for k, c in self._terms.items()}
        )

    __rmul__ = __mul__

    def __matmul__(self, other: "PauliSum") -> "PauliSum":
        return sum_product(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.n_qubits == other.n_qubits and self._terms == other._terms

    def __repr__(self):
        return f"PauliSum(n_qubits={self.n_qubits}, n_terms={len(self)})"

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        lines = [
            f"{t.coeff.real:.17g} {t.coeff.imag:.17g} {t.ops}" for t in self.terms()
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str) -> "PauliSum":
        acc: dict[tuple[int, int], complex] = {}
        n = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected '<re> <im> <ops>'")
            re_s, im_s, ops = parts
            t = PauliTerm.from_ops(ops, complex(float(re_s), float(im_s)))
            if n is None:
                n = t.n_qubits
            elif t.n_qubits != n:
                raise DimensionMismatchError(f"line {lineno}: register size changed")
            key = (t.x, t.z)
            acc[key] = acc.get(key, 0j) + t.coeff
        if n is None:
            raise ValueError("no terms found")
        return cls(n, acc)


def sum_simplify(s: PauliSum, tol: float = DEFAULT_TOL) -> PauliSum:
    """Drop terms with |coeff| <= tol (like terms are already merged)."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return PauliSum(s.n_qubits, s._terms, tol=tol)


def sum_product(a: PauliSum, b: PauliSum, tol: float = DEFAULT_TOL) -> PauliSum:
    """Fully reduced Pauli expansion of the operator product a*b."""
    if a.n_qubits != b.n_qubits:
        raise DimensionMismatchError("qubit counts differ")
    acc: dict[tuple[int, int], complex] = {}
    b_items = list(b._terms.items())
    for (x1, z1), c1 in a._terms.items():
        for (x2, z2), c2 in b_items:
            x3 = x1 ^ x2
            z3 = z1 ^ z2
            e = (
                (x1 & z1).bit_count()
                + (x2 & z2).bit_count()
                - (x3 & z3).bit_count()
                + 2 * (z1 & x2).bit_count()
            ) & 3
            key = (x3, z3)
            acc[key] = acc.get(key, 0j) + c1 * c2 * _I_POW[e]
    return PauliSum(a.n_qubits, acc, tol=tol)


def _term_action(n: int, x: int, z: int, coeff: complex, cols: np.ndarray):
    """Columnwise action of coeff*P(x,z): returns (rows, values) with
    P|col> = value[col] * |rows[col]> in basis-index space."""
    xi = _index_mask(x, n)
    zi = _index_mask(z, n)
    rows = cols ^ xi
    signs = 1 - 2 * (np.bitwise_count(cols & zi).astype(np.int64) & 1)
    vals = (coeff * _I_POW[(x & z).bit_count() & 3]) * signs
    return rows, vals


def to_dense(s: PauliSum) -> np.ndarray:
    """Dense 2^n x 2^n matrix of the sum (n <= DENSE_MAX_QUBITS)."""
    n = s.n_qubits
    if n > DENSE_MAX_QUBITS:
        raise CapacityError(
            f"dense form limited to {DENSE_MAX_QUBITS} qubits, got {n}"
        )
    dim = 1 << n
    cols = np.arange(dim, dtype=np.int64)
    out = np.zeros((dim, dim), dtype=np.complex128)
    for (x, z), c in s._terms.items():
        rows, vals = _term_action(n, x, z, c, cols)
        out[rows, cols] += vals
    return out


def expectation_dense(s: PauliSum, state, atol: float = 1e-9) -> float:
    """<psi|S|psi> for a statevector or Tr(rho S) for a density matrix.

    Raises HermiticityError when the imaginary part exceeds ``atol``.
    """
    data = np.asarray(getattr(state, "data", state))
    n = s.n_qubits
    dim = 1 << n
    if data.ndim == 1:
        if data.shape[0] != dim:
            raise DimensionMismatchError("state dimension does not match operator")
        cols = np.arange(dim, dtype=np.int64)
        conj = data.conj()
        acc = 0j
        for (x, z), c in s._terms.items():
            rows, vals = _term_action(n, x, z, c, cols)
            acc += np.sum(conj[rows] * vals * data[cols])
    elif data.ndim == 2:
        if data.shape != (dim, dim):
            raise DimensionMismatchError("state dimension does not match operator")
        cols = np.arange(dim, dtype=np.int64)
        acc = 0j
        for (x, z), c in s._terms.items():
            rows, vals = _term_action(n, x, z, c, cols)
            acc += np.sum(data[cols, rows] * vals)
    else:
        raise ValueError("state must be a vector or a square matrix")
    if abs(acc.imag) > atol:
        raise HermiticityError(
            f"expectation has imaginary part {acc.imag:.3e} (operator not Hermitian?)"
        )
    return float(acc.real)
