import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qswitch.errors import ContractError
from qswitch.operators import (
    BitVector,
    BoolFn,
    PlayerInput,
    apply_cnot,
    apply_diag,
    apply_hadamard,
    apply_u,
    apply_x,
    basis_state,
    dense_matrix,
    input_set_size,
    random_state,
)
from qswitch.game import enumerate_inputs

from .conftest import H2 as H2_MAT, PX as PX_MAT, PZ as PZ_MAT, diag_oracle, pauli_x_oracle, u_oracle


@st.composite
def player_inputs(draw, n=None, max_n=4):
    if n is None:
        n = draw(st.integers(1, max_n))
    x = draw(st.integers(0, (1 << n) - 1))
    table = draw(st.integers(0, (1 << ((1 << n) - 1)) - 1)) << 1
    return PlayerInput.from_ints(x, table, n)


def index_of(*comps):
    return BitVector.from_components(comps).bits


# ═══════════════════════════════════════════════════════════════════
# Data types
# ═══════════════════════════════════════════════════════════════════


class TestTypes:
    def test_bitvector_rejects_overflow(self):
        with pytest.raises(ContractError):
            BitVector(4, 2)

    def test_bitvector_components_roundtrip(self):
        bv = BitVector.from_components([1, 0, 1])
        assert bv.bits == 0b101
        assert bv.components() == (1, 0, 1)

    def test_xor(self):
        assert (BitVector(0b110, 3) ^ BitVector(0b011, 3)) == BitVector(0b101, 3)
        with pytest.raises(ContractError):
            BitVector(1, 2) ^ BitVector(1, 3)

    def test_boolfn_requires_zero_at_origin(self):
        with pytest.raises(ContractError):
            BoolFn(0b1, 1)

    def test_boolfn_rejects_oversized_table(self):
        with pytest.raises(ContractError):
            BoolFn(1 << 4, 2)

    def test_boolfn_evaluation_matches_table(self):
        f = BoolFn(0b1010_0110, 3)
        assert [f(k) for k in range(8)] == [(0b1010_0110 >> k) & 1 for k in range(8)]
        assert list(f.bits) == [f(k) for k in range(8)]

    def test_hex_roundtrip(self):
        f = BoolFn(0xBEEE, 4)
        assert f.to_hex() == "beee"
        assert BoolFn.from_hex("beee", 4) == f
        assert BoolFn.zero(3).to_hex() == "0"

    def test_from_bits(self):
        assert BoolFn.from_bits([0, 1, 1, 0]) == BoolFn(0b0110, 2)

    def test_equality_is_by_table(self):
        assert BoolFn(6, 2) == BoolFn(6, 2)
        assert BoolFn(6, 2) != BoolFn(4, 2)

    def test_player_input_arity(self):
        with pytest.raises(ContractError):
            PlayerInput(BitVector(0, 2), BoolFn(0, 3))

    def test_input_set_size(self):
        assert [input_set_size(n) for n in (1, 2, 3, 4)] == [4, 32, 1024, 524288]


# ═══════════════════════════════════════════════════════════════════
# apply_x / apply_diag / apply_u examples
# ═══════════════════════════════════════════════════════════════════


class TestApplyX:
    def test_zero_is_identity(self, rng):
        s = random_state(3, rng)
        np.testing.assert_array_equal(apply_x(BitVector(0, 3), s), s)

    def test_single_flip(self):
        out = apply_x(BitVector(1, 1), basis_state(0, 1))
        np.testing.assert_array_equal(out, basis_state(1, 1))

    def test_two_qubit_flip_matches_kron(self):
        x = BitVector.from_components([1, 1])
        s = basis_state(index_of(0, 1), 2)
        expected = pauli_x_oracle(x) @ s
        out = apply_x(x, s)
        np.testing.assert_array_equal(out, expected)
        np.testing.assert_array_equal(out, basis_state(index_of(1, 0), 2))

    def test_arity_mismatch(self):
        with pytest.raises(ContractError):
            apply_x(BitVector(1, 2), basis_state(0, 3))

    @given(st.integers(1, 5), st.data())
    def test_group_action(self, n, data):
        x1 = data.draw(st.integers(0, (1 << n) - 1))
        x2 = data.draw(st.integers(0, (1 << n) - 1))
        s = np.arange(1 << n) + 1j * np.arange(1 << n)[::-1]
        lhs = apply_x(BitVector(x1, n), apply_x(BitVector(x2, n), s))
        rhs = apply_x(BitVector(x1 ^ x2, n), s)
        np.testing.assert_array_equal(lhs, rhs)


class TestApplyDiag:
    def test_zero_function_is_identity(self, rng):
        s = random_state(2, rng)
        np.testing.assert_array_equal(apply_diag(BoolFn.zero(2), s), s)

    def test_single_qubit_is_pauli_z(self):
        plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
        minus = np.array([1, -1], dtype=complex) / np.sqrt(2)
        np.testing.assert_allclose(apply_diag(BoolFn(0b10, 1), plus), minus, atol=1e-15)

    def test_indicator_flips_one_sign(self):
        k = index_of(1, 0)
        f = BoolFn.indicator([k], 2)
        s = np.full(4, 0.5, dtype=complex)
        expected = diag_oracle(f) @ s
        out = apply_diag(f, s)
        np.testing.assert_array_equal(out, expected)
        assert [i for i in range(4) if out[i].real < 0] == [k]


class TestApplyU:
    def test_identity_input(self, rng):
        s = random_state(3, rng)
        np.testing.assert_array_equal(apply_u(PlayerInput.from_ints(0, 0, 3), s), s)

    def test_xz_on_one(self):
        u = PlayerInput.from_ints(1, 0b10, 1)
        expected = (PX_MAT @ PZ_MAT) @ basis_state(1, 1)
        out = apply_u(u, basis_state(1, 1))
        np.testing.assert_array_equal(out, expected)
        np.testing.assert_array_equal(out, -basis_state(0, 1))

    def test_diagonal_acts_first(self, rng):
        u = PlayerInput.from_ints(0b01, 0b0100, 2)
        s = random_state(2, rng)
        np.testing.assert_array_equal(apply_u(u, s), apply_x(u.x, apply_diag(u.f, s)))

    @given(player_inputs(max_n=5), st.data())
    def test_sign_rule_on_basis_states(self, u, data):
        y = data.draw(st.integers(0, (1 << u.n) - 1))
        out = apply_u(u, basis_state(y, u.n))
        nonzero = np.flatnonzero(out)
        assert list(nonzero) == [u.x.bits ^ y]
        assert out[u.x.bits ^ y] == (-1) ** u.f(y)

    @settings(max_examples=50)
    @given(player_inputs(max_n=4), st.integers(0, 2**32 - 1))
    def test_norm_preserved(self, u, seed):
        s = random_state(u.n, np.random.default_rng(seed))
        assert abs(np.linalg.norm(apply_u(u, s)) - 1.0) <= 1e-12


# ═══════════════════════════════════════════════════════════════════
# Dense matrices
# ═══════════════════════════════════════════════════════════════════


class TestDenseMatrix:
    def test_identity(self):
        np.testing.assert_array_equal(dense_matrix(PlayerInput.from_ints(0, 0, 1)), np.eye(2))

    def test_pauli_x(self):
        np.testing.assert_array_equal(dense_matrix(PlayerInput.from_ints(1, 0, 1)), PX_MAT)

    def test_xz(self):
        m = dense_matrix(PlayerInput.from_ints(1, 0b10, 1))
        np.testing.assert_array_equal(m, PX_MAT @ PZ_MAT)
        np.testing.assert_array_equal(m, [[0, -1], [1, 0]])

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_kron_oracle(self, n, rng):
        for _ in range(20):
            u = PlayerInput.from_ints(
                int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << ((1 << n) - 1))) << 1, n
            )
            np.testing.assert_array_equal(dense_matrix(u), u_oracle(u))

    @pytest.mark.parametrize("n", [1, 2])
    def test_signed_permutation_and_unitary(self, n):
        for u in enumerate_inputs(n):
            m = dense_matrix(u)
            np.testing.assert_allclose(m @ m.conj().T, np.eye(1 << n), atol=1e-12)
            assert np.all(np.count_nonzero(m, axis=0) == 1)
            assert np.all(np.count_nonzero(m, axis=1) == 1)
            assert set(m[m != 0].real) <= {1.0, -1.0}

    @pytest.mark.parametrize("n", [1, 2])
    def test_injective(self, n):
        mats = {dense_matrix(u).real.astype(np.int8).tobytes() for u in enumerate_inputs(n)}
        assert len(mats) == input_set_size(n)

    def test_oracle_equivalence_random(self, rng):
        for _ in range(2000):
            n = int(rng.integers(1, 4))
            u = PlayerInput.from_ints(
                int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << ((1 << n) - 1))) << 1, n
            )
            s = random_state(n, rng)
            np.testing.assert_allclose(apply_u(u, s), dense_matrix(u) @ s, atol=1e-12, rtol=0)


# ═══════════════════════════════════════════════════════════════════
# Hadamard and CNOT
# ═══════════════════════════════════════════════════════════════════


class TestHadamard:
    def test_zero_to_plus(self):
        np.testing.assert_allclose(
            apply_hadamard(0, basis_state(0, 1)), np.array([1, 1]) / np.sqrt(2), atol=1e-15
        )

    def test_plus_to_zero(self):
        plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
        np.testing.assert_allclose(apply_hadamard(0, plus), basis_state(0, 1), atol=1e-15)

    @pytest.mark.parametrize("q", [0, 1, 2])
    def test_involution_and_kron(self, q, rng):
        s = random_state(3, rng)
        once = apply_hadamard(q, s)
        factors = [H2_MAT if k == q else np.eye(2) for k in reversed(range(3))]
        full = factors[0]
        for fct in factors[1:]:
            full = np.kron(full, fct)
        np.testing.assert_allclose(once, full @ s, atol=1e-12)
        np.testing.assert_allclose(apply_hadamard(q, once), s, atol=1e-12)
        assert abs(np.linalg.norm(once) - 1) <= 1e-12

    def test_out_of_range(self):
        with pytest.raises(ContractError):
            apply_hadamard(2, basis_state(0, 2))

    def test_cnot(self):
        # control qubit 0 set, target qubit 1 flips: index 0b01 -> 0b11
        np.testing.assert_array_equal(apply_cnot(0, 1, basis_state(0b01, 2)), basis_state(0b11, 2))
        np.testing.assert_array_equal(apply_cnot(0, 1, basis_state(0b10, 2)), basis_state(0b10, 2))

