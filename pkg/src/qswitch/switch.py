"""The quantum switch: coherent control of the order of two operations.

The joint register is ``control (x) target`` with the control stored as the
most-significant qubit, so a joint amplitude array reshaped to
``(2, 2**n)`` has the control branch on the first axis.

With the control prepared in ``|+>`` the switch applies

    V(U_A, U_B) = |0><0| (x) U_B U_A  +  |1><1| (x) U_A U_B

and a Hadamard on the control leaves ``{U_A, U_B} psi / 2`` in the ``|0>``
branch and ``-[U_A, U_B] psi / 2`` in the ``|1>`` branch.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ContractError
from .operators import (
    ATOL,
    PlayerInput,
    apply_hadamard,
    apply_u,
    basis_state,
    is_normalized,
    num_qubits,
)

CLASSIFY_TOL = 1e-9
DETERMINISTIC_TOL = 1e-12

# A party operation: either a structured element of U_n or an explicit matrix.
Operator = Union[PlayerInput, np.ndarray]


@dataclass(frozen=True)
class SwitchOutcome:
    p0: float
    p1: float
    decoded_bit: int
    deterministic: bool

    @classmethod
    def from_probabilities(cls, p0: float, p1: float) -> SwitchOutcome:
        p0 = min(max(float(p0), 0.0), 1.0)
        p1 = min(max(float(p1), 0.0), 1.0)
        bit = 0 if p0 >= p1 else 1
        return cls(p0, p1, bit, max(p0, p1) >= 1.0 - DETERMINISTIC_TOL)

    def to_dict(self) -> dict:
        return {
            "p0": self.p0,
            "p1": self.p1,
            "decoded_bit": self.decoded_bit,
            "deterministic": self.deterministic,
        }


class CommutationClass(enum.Enum):
    COMMUTING_ON_PSI = "CommutingOnPsi"
    ANTICOMMUTING_ON_PSI = "AnticommutingOnPsi"
    NEITHER = "Neither"


def _arity(op: Operator) -> int:
    if isinstance(op, PlayerInput):
        return op.n
    dim = op.shape[0]
    if op.ndim != 2 or op.shape[1] != dim:
        raise ContractError(f"operator matrix must be square, got shape {op.shape}")
    return num_qubits(np.empty(dim))


def _act(op: Operator, s: np.ndarray) -> np.ndarray:
    if isinstance(op, PlayerInput):
        return apply_u(op, s)
    return op @ s


def _check(u_a: Operator, u_b: Operator, psi: np.ndarray) -> int:
    n = _arity(u_a)
    if _arity(u_b) != n:
        raise ContractError(f"arity mismatch: {n} vs {_arity(u_b)}")
    if num_qubits(psi) != n:
        raise ContractError(f"target has {num_qubits(psi)} qubits, operators act on {n}")
    if not is_normalized(psi):
        raise ContractError("target state is not normalized")
    return n


def branch_states(u_a: Operator, u_b: Operator, psi: np.ndarray):
    """The two causal branches ``(U_B U_A psi, U_A U_B psi)``."""
    _check(u_a, u_b, psi)
    return _act(u_b, _act(u_a, psi)), _act(u_a, _act(u_b, psi))


def switch_state(u_a: Operator, u_b: Operator, psi: np.ndarray) -> np.ndarray:
    """Joint state after V(U_A, U_B) and the control Hadamard."""
    n = _check(u_a, u_b, psi)
    # control in |+>, target psi; control is the top qubit
    joint = np.concatenate([psi, psi]) / np.sqrt(2.0)
    half = 1 << n
    joint[:half] = _act(u_b, _act(u_a, joint[:half]))
    joint[half:] = _act(u_a, _act(u_b, joint[half:]))
    return apply_hadamard(n, joint)


def run_switch(u_a: Operator, u_b: Operator, psi: np.ndarray | None = None) -> SwitchOutcome:
    """Full state-vector simulation; ``psi`` defaults to ``|0...0>``."""
    if psi is None:
        psi = basis_state(0, _arity(u_a))
    out = switch_state(u_a, u_b, psi).reshape(2, -1)
    p0 = np.vdot(out[0], out[0]).real
    p1 = np.vdot(out[1], out[1]).real
    return SwitchOutcome.from_probabilities(p0, p1)


def run_switch_fast(u_a: PlayerInput, u_b: PlayerInput) -> SwitchOutcome:
    """Closed form on target ``|0...0>``.

    ``X(x)D(f) X(y)D(g) |0> = (-1)**f(y) |x^y>``, so the two orders differ
    by the sign ``(-1)**(f_A(x_B) + f_B(x_A))`` and the control lands on
    that bit with certainty.
    """
    if u_a.x.n != u_b.x.n:
        raise ContractError(f"arity mismatch: {u_a.n} vs {u_b.n}")
    bit = u_a.f(u_b.x.bits) ^ u_b.f(u_a.x.bits)
    return _CERTAIN[bit]


_CERTAIN = (SwitchOutcome(1.0, 0.0, 0, True), SwitchOutcome(0.0, 1.0, 1, True))


def run_switch_batch(
    xa: np.ndarray, fa_bits: np.ndarray, xb: np.ndarray, fb_bits: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Full state-vector switch on ``|0...0>`` for a batch of input pairs.

    ``xa``/``xb`` hold ``B`` packed bit vectors, ``fa_bits``/``fb_bits`` are
    ``(B, 2**n)`` truth tables. Returns the arrays ``(p0, p1)``. Same
    evolution as :func:`run_switch`, vectorised over the batch axis.
    """
    batch, dim = fa_bits.shape
    if fb_bits.shape != (batch, dim) or xa.shape != (batch,) or xb.shape != (batch,):
        raise ContractError("batch arrays have inconsistent shapes")
    idx = np.arange(dim, dtype=np.int64)
    sa = 1.0 - 2.0 * fa_bits
    sb = 1.0 - 2.0 * fb_bits
    perm_a = idx[None, :] ^ xa[:, None].astype(np.int64)
    perm_b = idx[None, :] ^ xb[:, None].astype(np.int64)

    def u_a(s):
        return np.take_along_axis(s * sa, perm_a, axis=1)

    def u_b(s):
        return np.take_along_axis(s * sb, perm_b, axis=1)

    psi = np.zeros((batch, dim), dtype=np.complex128)
    psi[:, 0] = 1.0
    branch0 = u_b(u_a(psi)) / np.sqrt(2.0)
    branch1 = u_a(u_b(psi)) / np.sqrt(2.0)
    c0 = (branch0 + branch1) / np.sqrt(2.0)
    c1 = (branch0 - branch1) / np.sqrt(2.0)
    p0 = (c0.real**2 + c0.imag**2).sum(axis=1)
    p1 = (c1.real**2 + c1.imag**2).sum(axis=1)
    return p0, p1


def classify_commutation(u_a: Operator, u_b: Operator, psi: np.ndarray) -> CommutationClass:
    ba, ab = branch_states(u_a, u_b, psi)
    # [U_A, U_B] psi = ab - ba, {U_A, U_B} psi = ab + ba
    if np.linalg.norm(ab - ba) <= CLASSIFY_TOL:
        return CommutationClass.COMMUTING_ON_PSI
    if np.linalg.norm(ab + ba) <= CLASSIFY_TOL:
        return CommutationClass.ANTICOMMUTING_ON_PSI
    return CommutationClass.NEITHER


def sample_outcome(outcome: SwitchOutcome, rng: np.random.Generator) -> int:
    """Draw one control-qubit measurement result from an outcome distribution."""
    return int(rng.random() >= outcome.p0)


def probabilities_close(a: SwitchOutcome, b: SwitchOutcome, atol: float = ATOL) -> bool:
    return abs(a.p0 - b.p0) <= atol and abs(a.p1 - b.p1) <= atol
