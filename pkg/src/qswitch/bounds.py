"""Lower-bound machinery for causally ordered protocols, checked at small n.

Covers the row-distinctness condition behind the deterministic bound
``ceil(sqrt(|X|))``, its constructive witnesses, a dense-coding simulation,
a VC shattering certificate for EE_n and the bounded-error bound
``(1 - H(eps)) * 2**(n-2)``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import CapacityError, ContractError
from .game import ee_value, enumerate_inputs
from .operators import (
    BitVector,
    BoolFn,
    PlayerInput,
    apply_cnot,
    apply_diag,
    apply_hadamard,
    apply_x,
    basis_state,
    input_set_size,
)

# game(alice, bob) -> bit
Game = Callable[[PlayerInput, PlayerInput], int]

MAX_PROP2_EXHAUSTIVE_N = 2
MAX_PROP2_CONSTRUCTIVE_N = 3
MAX_PREMISE_N = 2
MAX_SHATTER_N = 4


class CaseTag(enum.Enum):
    DIFFERENT_X = "DifferentX"
    DIFFERENT_F = "DifferentF"


@dataclass(frozen=True)
class Witness:
    """Bob input ``(y, g)`` on which two Alice inputs get different answers."""

    y: BitVector
    g: BoolFn
    case_tag: CaseTag

    @property
    def bob(self) -> PlayerInput:
        return PlayerInput(self.y, self.g)


def separation_sum(a1: PlayerInput, a2: PlayerInput, y: BitVector, g: BoolFn) -> int:
    """``f1(y) ^ f2(y) ^ g(x1) ^ g(x2)``; equals 1 iff ``(y, g)`` separates."""
    return a1.f(y.bits) ^ a2.f(y.bits) ^ g(a1.x.bits) ^ g(a2.x.bits)


def construct_witness(a1: PlayerInput, a2: PlayerInput) -> Witness:
    """Separating Bob input for two distinct Alice inputs.

    Different ``x``: take ``y = 0`` and ``g`` the indicator of whichever of
    the two vectors is nonzero. Same ``x``: take a point where the functions
    differ and ``g = 0``.
    """
    if a1.n != a2.n:
        raise ContractError(f"arity mismatch: {a1.n} vs {a2.n}")
    if a1 == a2:
        raise ContractError("inputs are identical; no witness exists")
    n = a1.n
    if a1.x != a2.x:
        if a1.x.bits == 0:
            a1, a2 = a2, a1
        return Witness(BitVector.zero(n), BoolFn.indicator([a1.x.bits], n), CaseTag.DIFFERENT_X)
    diff = a1.f.table ^ a2.f.table
    y = (diff & -diff).bit_length() - 1
    return Witness(BitVector(y, n), BoolFn.zero(n), CaseTag.DIFFERENT_F)


@dataclass
class Prop2Result:
    passed: bool
    n: int
    method: str
    pairs_checked: int
    counterexample: tuple[PlayerInput, PlayerInput] | None = None

    def to_dict(self) -> dict:
        ce = None
        if self.counterexample is not None:
            ce = [a.to_dict() for a in self.counterexample]
        return {
            "passed": self.passed,
            "n": self.n,
            "method": self.method,
            "pairs_checked": self.pairs_checked,
            "counterexample": ce,
        }


def proposition2_exhaustive(n: int, game: Game = ee_value) -> Prop2Result:
    """Every pair of distinct Alice inputs is separated by some Bob input.

    For n <= 2 all Bob inputs are searched. At n = 3 only the constructed
    witness is tried per pair, and it is checked through ``game``.
    """
    if n > MAX_PROP2_CONSTRUCTIVE_N:
        raise CapacityError("proposition2_exhaustive", n, MAX_PROP2_CONSTRUCTIVE_N)
    inputs = list(enumerate_inputs(n))
    checked = 0
    if n <= MAX_PROP2_EXHAUSTIVE_N:
        # rows[i][j] = game(inputs[i], inputs[j]); a pair is separated iff rows differ
        rows = [tuple(game(a, b) for b in inputs) for a in inputs]
        for i, j in itertools.combinations(range(len(inputs)), 2):
            checked += 1
            if rows[i] == rows[j]:
                return Prop2Result(False, n, "exhaustive", checked, (inputs[i], inputs[j]))
        return Prop2Result(True, n, "exhaustive", checked)
    for a1, a2 in itertools.combinations(inputs, 2):
        checked += 1
        w = construct_witness(a1, a2)
        bob = w.bob
        if game(a1, bob) == game(a2, bob):
            return Prop2Result(False, n, "constructive", checked, (a1, a2))
    return Prop2Result(True, n, "constructive", checked)


def lemma1_bounds(input_count: int) -> tuple[int, int]:
    """``(ceil(sqrt(input_count)), ceil(log2 of that))``."""
    if input_count < 1:
        raise ContractError(f"input_count must be >= 1, got {input_count}")
    dim = math.isqrt(input_count - 1) + 1
    return dim, (dim - 1).bit_length()


def distinguishability_premise_check(n: int, game: Game = ee_value) -> bool:
    """True iff every Alice input has its own row of game values."""
    if n > MAX_PREMISE_N:
        raise CapacityError("distinguishability_premise_check", n, MAX_PREMISE_N)
    inputs = list(enumerate_inputs(n))
    rows = {tuple(game(a, b) for b in inputs) for a in inputs}
    return len(rows) == len(inputs)


# ---------------------------------------------------------------------------
# Dense coding
# ---------------------------------------------------------------------------


@dataclass
class DenseCodingResult:
    passed: bool
    # message (b_z, b_x) -> (decoded message, probability of that outcome)
    decoded: dict[tuple[int, int], tuple[tuple[int, int], float]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "decoded": {f"{m[0]}{m[1]}": {"decoded": f"{d[0]}{d[1]}", "p": p}
                        for m, (d, p) in self.decoded.items()},
        }


def dense_coding_demo(skip_encoding: bool = False, atol: float = 1e-12) -> DenseCodingResult:
    """Send two bits through one qubit of a shared Bell pair.

    Qubit 0 is Alice's half, qubit 1 Bob's. Alice applies ``X**b_x Z**b_z``
    to her half and sends it; Bob undoes the Bell preparation (CNOT, then H)
    and reads ``b_z`` from qubit 0 and ``b_x`` from qubit 1.
    ``skip_encoding`` drops Alice's operation as a negative control.
    """
    bell = apply_cnot(0, 1, apply_hadamard(0, basis_state(0, 2)))
    x_alice = BitVector(0b01, 2)
    z_alice = BoolFn.indicator([0b01, 0b11], 2)
    result = DenseCodingResult(passed=True)
    for bz, bx in itertools.product((0, 1), repeat=2):
        s = bell
        if not skip_encoding:
            if bz:
                s = apply_diag(z_alice, s)
            if bx:
                s = apply_x(x_alice, s)
        s = apply_hadamard(0, apply_cnot(0, 1, s))
        probs = np.abs(s) ** 2
        k = int(np.argmax(probs))
        decoded = (k & 1, (k >> 1) & 1)
        p = float(probs[k])
        result.decoded[(bz, bx)] = (decoded, p)
        if decoded != (bz, bx) or abs(p - 1.0) > atol:
            result.passed = False
    return result


# ---------------------------------------------------------------------------
# VC dimension
# ---------------------------------------------------------------------------


@dataclass
class ShatteringCertificate:
    """Column set ``S`` (Bob inputs) and, for every subset ``R`` of ``S``, an
    Alice input whose row restricted to ``S`` is the indicator of ``R``.

    Subsets are bitmasks over positions in ``S``.
    """

    n: int
    S: list[PlayerInput]
    assignments: dict[int, PlayerInput]
    verified_size: int = 0


def vc_shattering(n: int, game: Game = ee_value) -> ShatteringCertificate:
    """Build and verify the certificate for ``S = {(y, 0) : y != 0}``.

    The realizer of ``R`` is ``(0, f_R)`` with ``f_R`` the indicator of the
    ``y`` values in ``R``; position ``i`` of ``S`` holds ``y = i + 1``.
    """
    if n > MAX_SHATTER_N:
        raise CapacityError("vc_shattering", n, MAX_SHATTER_N)
    zero_fn = BoolFn.zero(n)
    S = [PlayerInput(BitVector(y, n), zero_fn) for y in range(1, 1 << n)]
    x0 = BitVector.zero(n)
    assignments = {
        mask: PlayerInput(x0, BoolFn(mask << 1, n)) for mask in range(1 << len(S))
    }
    cert = ShatteringCertificate(n, S, assignments)
    if not verify_shattering(cert, game):
        raise AssertionError(f"shattering construction failed at n={n}")
    cert.verified_size = len(S)
    return cert


def verify_shattering(cert: ShatteringCertificate, game: Game = ee_value) -> bool:
    """Check every subset through ``game`` alone, ignoring how it was built."""
    k = len(cert.S)
    if len(set(s.key() for s in cert.S)) != k:
        return False
    for mask in range(1 << k):
        alice = cert.assignments.get(mask)
        if alice is None:
            return False
        for i, s in enumerate(cert.S):
            if game(alice, s) != (mask >> i) & 1:
                return False
    return True


# ---------------------------------------------------------------------------
# Bound table
# ---------------------------------------------------------------------------


def binary_entropy(eps: float) -> float:
    """``-eps log2 eps - (1-eps) log2 (1-eps)`` with ``H(0) = H(1) = 0``."""
    if not 0.0 <= eps <= 1.0:
        raise ContractError(f"probability {eps} outside [0, 1]")
    if eps in (0.0, 1.0):
        return 0.0
    return -eps * math.log2(eps) - (1.0 - eps) * math.log2(1.0 - eps)


@dataclass
class BoundReport:
    n: int
    epsilon: float
    input_bits: int
    lemma1_dimension_bits: int
    lemma1_dimension: int | None
    lemma1_qubits: int
    deterministic_causal_qubits: float
    vc_paper_bound: int
    vc_verified: int
    vc_exhaustive: bool
    q_eps_lower_bound: float
    switch_qubits: int
    separation_ratio: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


# exact dimension is only reported when it fits comfortably in a JSON number
_MAX_DIMENSION_BITS = 63


def q_eps_bound(n: int, epsilon: float = 0.0) -> BoundReport:
    # eps = 1/2 is admitted: the bound degenerates to 0 there
    if not 0.0 <= epsilon <= 0.5:
        raise ContractError(f"epsilon must lie in [0, 1/2], got {epsilon}")
    if n < 1:
        raise ContractError(f"n must be >= 1, got {n}")
    input_bits = (1 << n) + n - 1
    dim, qubits = lemma1_bounds(input_set_size(n))
    q = (1.0 - binary_entropy(epsilon)) * 2.0 ** (n - 2)
    if n <= MAX_SHATTER_N:
        vc_verified, exhaustive = vc_shattering(n).verified_size, True
    else:
        vc_verified, exhaustive = (1 << n) - 1, False
    return BoundReport(
        n=n,
        epsilon=epsilon,
        input_bits=input_bits,
        lemma1_dimension_bits=dim.bit_length(),
        lemma1_dimension=dim if dim.bit_length() <= _MAX_DIMENSION_BITS else None,
        lemma1_qubits=qubits,
        deterministic_causal_qubits=input_bits / 2,
        vc_paper_bound=1 << (n - 1),
        vc_verified=vc_verified,
        vc_exhaustive=exhaustive,
        q_eps_lower_bound=q,
        switch_qubits=n,
        separation_ratio=q / n,
    )
