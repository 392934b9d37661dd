import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fsvqe.errors import CapacityError, DimensionMismatchError, HermiticityError
from fsvqe.paulis import (
    PauliSum,
    PauliTerm,
    expectation_dense,
    pauli_mul,
    sum_product,
    sum_simplify,
    to_dense,
)

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0, -1.0]).astype(complex)
MATS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def dense_of_ops(ops, coeff=1.0):
    out = np.array([[coeff]], dtype=complex)
    for letter in ops:
        out = np.kron(out, MATS[letter])
    return out


def random_sum(rng, n_qubits, n_terms):
    terms = []
    for _ in range(n_terms):
        ops = "".join(rng.choice(list("IXYZ")) for _ in range(n_qubits))
        coeff = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        terms.append(PauliTerm.from_ops(ops, coeff))
    return PauliSum.from_terms(terms)


class TestPauliTerm:
    def test_ops_roundtrip(self):
        t = PauliTerm.from_ops("IXYZ", 2.0 - 1.0j)
        assert t.ops == "IXYZ"
        assert t.n_qubits == 4
        assert t.coeff == 2.0 - 1.0j
        assert t.weight == 3

    def test_x_times_y_is_iz(self):
        p = pauli_mul(PauliTerm.from_ops("X"), PauliTerm.from_ops("Y"))
        assert p.ops == "Z"
        assert p.coeff == 1j

    def test_string_squares_to_identity(self):
        t = PauliTerm.from_ops("XZ")
        p = pauli_mul(t, t)
        assert p.ops == "II"
        assert p.coeff == 1.0 + 0j

    def test_xy_times_yx(self):
        # (0.5*XY)*(2*YX) = 1*ZZ: phases (i)(-i) cancel
        p = pauli_mul(PauliTerm.from_ops("XY", 0.5), PauliTerm.from_ops("YX", 2.0))
        assert p.ops == "ZZ"
        assert np.isclose(p.coeff, 1.0)
        expect = dense_of_ops("XY", 0.5) @ dense_of_ops("YX", 2.0)
        assert np.allclose(dense_of_ops(p.ops, p.coeff), expect)

    def test_mismatched_registers_raise(self):
        with pytest.raises(DimensionMismatchError):
            pauli_mul(PauliTerm.from_ops("X"), PauliTerm.from_ops("XX"))

    @given(st.integers(1, 4), st.integers(0, 2**8 - 1), st.integers(0, 2**8 - 1))
    def test_mul_matches_dense(self, n, seed_a, seed_b):
        rng = np.random.default_rng(seed_a * 257 + seed_b)
        letters = list("IXYZ")
        ops_a = "".join(rng.choice(letters) for _ in range(n))
        ops_b = "".join(rng.choice(letters) for _ in range(n))
        a = PauliTerm.from_ops(ops_a, complex(rng.normal(), rng.normal()))
        b = PauliTerm.from_ops(ops_b, complex(rng.normal(), rng.normal()))
        p = pauli_mul(a, b)
        lhs = dense_of_ops(p.ops, p.coeff)
        rhs = dense_of_ops(a.ops, a.coeff) @ dense_of_ops(b.ops, b.coeff)
        assert np.allclose(lhs, rhs, atol=1e-12)

    def test_anti_commutation_sign(self):
        # a*b = +/- b*a with sign set by the parity of clashing positions
        rng = np.random.default_rng(7)
        letters = list("IXYZ")
        for _ in range(200):
            n = rng.integers(1, 6)
            a = PauliTerm.from_ops("".join(rng.choice(letters) for _ in range(n)))
            b = PauliTerm.from_ops("".join(rng.choice(letters) for _ in range(n)))
            ab = pauli_mul(a, b)
            ba = pauli_mul(b, a)
            clashes = sum(
                1
                for la, lb in zip(a.ops, b.ops)
                if la != "I" and lb != "I" and la != lb
            )
            sign = -1 if clashes % 2 else 1
            assert ab.ops == ba.ops
            assert np.isclose(ab.coeff, sign * ba.coeff)


class TestPauliSum:
    def test_like_terms_merge(self):
        s = PauliSum.from_terms([PauliTerm.from_ops("X"), PauliTerm.from_ops("X")])
        assert len(s) == 1
        assert s.coefficient("X") == 2.0

    def test_exact_cancellation_empties(self):
        s = PauliSum.from_terms(
            [PauliTerm.from_ops("X"), PauliTerm.from_ops("X", -1.0)]
        )
        assert len(s) == 0

    def test_simplify_drops_small_and_is_idempotent(self):
        s = PauliSum.from_terms(
            [PauliTerm.from_ops("X", 1e-13), PauliTerm.from_ops("Z", 0.5)]
        )
        t = sum_simplify(s, 1e-12)
        assert len(t) == 1
        assert sum_simplify(t, 1e-12) == t

    def test_simplify_never_grows(self):
        rng = np.random.default_rng(3)
        s = random_sum(rng, 3, 12)
        assert len(sum_simplify(s, 1e-3)) <= len(s)

    def test_zz_product_is_identity(self):
        a = PauliSum.from_terms([PauliTerm.from_ops("Z")])
        s = sum_product(a, a)
        assert len(s) == 1
        assert s.coefficient("I") == 1.0

    def test_product_matches_dense_random(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            a = random_sum(rng, 3, rng.integers(1, 6))
            b = random_sum(rng, 3, rng.integers(1, 6))
            prod = sum_product(a, b)
            assert np.allclose(to_dense(prod), to_dense(a) @ to_dense(b), atol=1e-10)

    def test_product_dimension_error(self):
        with pytest.raises(DimensionMismatchError):
            sum_product(PauliSum.identity(1), PauliSum.identity(2))

    def test_hermitian_square_is_psd_with_real_coeffs(self):
        rng = np.random.default_rng(5)
        terms = []
        for _ in range(6):
            ops = "".join(rng.choice(list("IXYZ")) for _ in range(3))
            terms.append(PauliTerm.from_ops(ops, rng.uniform(-1, 1)))
        h = PauliSum.from_terms(terms)
        sq = sum_product(h, h)
        assert sq.max_abs_imag() < 1e-12
        evals = np.linalg.eigvalsh(to_dense(sq))
        assert evals.min() > -1e-9

    def test_serialization_roundtrip(self):
        rng = np.random.default_rng(13)
        s = random_sum(rng, 4, 9)
        t = PauliSum.from_text(s.to_text())
        assert t == s

    def test_text_format(self):
        s = PauliSum.from_terms([PauliTerm.from_ops("XZ", 0.5 + 0.25j)])
        assert s.to_text() == "0.5 0.25 XZ\n"


class TestDense:
    def test_z_dense(self):
        s = PauliSum.from_terms([PauliTerm.from_ops("Z")])
        assert np.allclose(to_dense(s), np.diag([1, -1]))

    def test_x_dense(self):
        s = PauliSum.from_terms([PauliTerm.from_ops("X")])
        assert np.allclose(to_dense(s), X)

    def test_qubit0_is_leftmost_factor(self):
        s = PauliSum.from_terms([PauliTerm.from_ops("ZI")])
        assert np.allclose(to_dense(s), np.kron(Z, I2))

    def test_capacity_error(self):
        with pytest.raises(CapacityError):
            to_dense(PauliSum.identity(15))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_dense_matches_kron_oracle(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 5))
        s = random_sum(rng, n, int(rng.integers(1, 6)))
        oracle = sum(
            (dense_of_ops(t.ops, t.coeff) for t in s.terms()),
            start=np.zeros((2**n, 2**n), dtype=complex),
        )
        assert np.allclose(to_dense(s), oracle, atol=1e-12)


class TestExpectation:
    def test_z_on_zero_state(self):
        s = PauliSum.from_terms([PauliTerm.from_ops("Z")])
        psi = np.array([1, 0], dtype=complex)
        assert expectation_dense(s, psi) == pytest.approx(1.0)

    def test_z_on_plus_state(self):
        s = PauliSum.from_terms([PauliTerm.from_ops("Z")])
        psi = np.array([1, 1], dtype=complex) / np.sqrt(2)
        assert expectation_dense(s, psi) == pytest.approx(0.0, abs=1e-12)

    def test_density_matrix_matches_vector(self):
        rng = np.random.default_rng(23)
        s = random_sum(rng, 3, 5)
        s = s + PauliSum.from_terms([t.with_coeff(t.coeff.conjugate()) for t in s])
        psi = rng.normal(size=8) + 1j * rng.normal(size=8)
        psi /= np.linalg.norm(psi)
        rho = np.outer(psi, psi.conj())
        assert expectation_dense(s, rho) == pytest.approx(
            expectation_dense(s, psi), abs=1e-10
        )

    def test_non_hermitian_raises(self):
        s = PauliSum.from_terms([PauliTerm.from_ops("X", 1j)])
        psi = np.array([1, 1], dtype=complex) / np.sqrt(2)
        with pytest.raises(HermiticityError):
            expectation_dense(s, psi)

    def test_expectation_matches_dense_oracle(self):
        rng = np.random.default_rng(29)
        for _ in range(20):
            s = random_sum(rng, 3, 6)
            dag = PauliSum.from_terms(
                [t.with_coeff(t.coeff.conjugate()) for t in s]
            )
            herm = sum_product(s, dag)  # s * s^dagger is Hermitian and PSD
            psi = rng.normal(size=8) + 1j * rng.normal(size=8)
            psi /= np.linalg.norm(psi)
            want = np.vdot(psi, to_dense(herm) @ psi)
            assert expectation_dense(herm, psi) == pytest.approx(
                want.real, abs=1e-9
            )
