"""Pauli-X strings, +/-1 diagonal operators and their products X(x)D(f).

Basis convention used throughout the package: component z_1 of a bit vector
is the least-significant bit of the basis index, i.e.
``index(z) = sum_i z_i * 2**(i-1)``.

State vectors are plain ``numpy`` arrays of ``complex128`` with length
``2**m``. All structured operators here are signed permutations, applied as
an index XOR and a sign mask rather than as matrices; ``dense_matrix`` gives
the explicit matrix for cross-checking.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ContractError

ATOL = 1e-12
_SQRT1_2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class BitVector:
    """Element of Z_2^n packed in an integer; bit ``i-1`` holds ``x_i``."""

    bits: int
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ContractError(f"negative arity {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ContractError(f"bits {self.bits} do not fit in {self.n} components")

    @classmethod
    def zero(cls, n: int) -> BitVector:
        return cls(0, n)

    @classmethod
    def from_components(cls, comps: Sequence[int]) -> BitVector:
        """Build from ``(x_1, ..., x_n)``; ``x_1`` becomes the low bit."""
        bits = 0
        for i, c in enumerate(comps):
            if c not in (0, 1):
                raise ContractError(f"component {c!r} is not a bit")
            bits |= c << i
        return cls(bits, len(comps))

    def components(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def __xor__(self, other: BitVector) -> BitVector:
        if other.n != self.n:
            raise ContractError(f"arity mismatch: {self.n} vs {other.n}")
        return BitVector(self.bits ^ other.bits, self.n)

    def __int__(self) -> int:
        return self.bits

    def to_dict(self) -> dict:
        return {"bits": self.bits, "n": self.n}


@dataclass(frozen=True)
class BoolFn:
    """Truth table of a function Z_2^n -> Z_2 vanishing at the zero vector.

    ``table`` is a bitset: bit ``index(z)`` holds ``f(z)``.
    """

    table: int
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ContractError(f"negative arity {self.n}")
        if self.table < 0 or self.table >> (1 << self.n):
            raise ContractError(f"table does not fit in 2**{self.n} bits")
        if self.table & 1:
            raise ContractError("f(0) must be 0")

    @classmethod
    def zero(cls, n: int) -> BoolFn:
        return cls(0, n)

    @classmethod
    def indicator(cls, points, n: int) -> BoolFn:
        """Function equal to 1 exactly on the given nonzero points."""
        table = 0
        for p in points:
            table |= 1 << int(p)
        return cls(table, n)

    @classmethod
    def from_bits(cls, bits: Sequence[int] | np.ndarray) -> BoolFn:
        """Build from a length-``2**n`` 0/1 sequence indexed by basis index."""
        arr = np.asarray(bits, dtype=np.uint8)
        size = arr.shape[0]
        n = size.bit_length() - 1
        if size != 1 << n:
            raise ContractError(f"table length {size} is not a power of two")
        raw = np.packbits(arr, bitorder="little").tobytes()
        return cls(int.from_bytes(raw, "little"), n)

    @classmethod
    def from_hex(cls, text: str, n: int) -> BoolFn:
        return cls(int(text, 16), n)

    def to_hex(self) -> str:
        """Lowercase hex of the table; least-significant bit is f at index 0."""
        return format(self.table, "x")

    @functools.cached_property
    def _bytes(self) -> bytes:
        return self.table.to_bytes(max(1, (1 << self.n) // 8), "little")

    @functools.cached_property
    def bits(self) -> np.ndarray:
        """Truth table as a read-only ``uint8`` array of length ``2**n``."""
        arr = np.unpackbits(np.frombuffer(self._bytes, dtype=np.uint8), bitorder="little")
        arr = arr[: 1 << self.n].copy()
        arr.flags.writeable = False
        return arr

    @functools.cached_property
    def signs(self) -> np.ndarray:
        """Diagonal of D(f): ``(-1)**f(z)`` for every basis index."""
        arr = 1.0 - 2.0 * self.bits
        arr.flags.writeable = False
        return arr

    def __call__(self, z: BitVector | int) -> int:
        k = int(z)
        return (self._bytes[k >> 3] >> (k & 7)) & 1

    def to_dict(self) -> dict:
        return {"table": self.to_hex(), "n": self.n}


@dataclass(frozen=True)
class PlayerInput:
    """A player's input ``(x, f)``, standing for the unitary X(x)D(f)."""

    x: BitVector
    f: BoolFn

    def __post_init__(self):
        if self.x.n != self.f.n:
            raise ContractError(f"arity mismatch: x has n={self.x.n}, f has n={self.f.n}")

    @classmethod
    def from_ints(cls, x: int, table: int, n: int) -> PlayerInput:
        return cls(BitVector(x, n), BoolFn(table, n))

    @property
    def n(self) -> int:
        return self.x.n

    def key(self) -> tuple[int, int]:
        return (self.x.bits, self.f.table)

    def to_dict(self) -> dict:
        return {"x": self.x.bits, "f": self.f.to_hex(), "n": self.n}


def input_set_size(n: int) -> int:
    """Number of distinct inputs ``(x, f)``: ``2**(2**n + n - 1)``."""
    return 1 << ((1 << n) + n - 1)


# ---------------------------------------------------------------------------
# State vectors
# ---------------------------------------------------------------------------


def num_qubits(s: np.ndarray) -> int:
    size = s.shape[-1]
    m = size.bit_length() - 1
    if size != 1 << m:
        raise ContractError(f"state length {size} is not a power of two")
    return m


def basis_state(index: int, m: int) -> np.ndarray:
    """Computational basis state ``|index>`` on ``m`` qubits."""
    if not 0 <= index < 1 << m:
        raise ContractError(f"basis index {index} out of range for {m} qubits")
    s = np.zeros(1 << m, dtype=np.complex128)
    s[index] = 1.0
    return s


def random_state(m: int, rng: np.random.Generator) -> np.ndarray:
    s = rng.standard_normal(1 << m) + 1j * rng.standard_normal(1 << m)
    return s / np.linalg.norm(s)


def is_normalized(s: np.ndarray, atol: float = ATOL) -> bool:
    return abs(np.vdot(s, s).real - 1.0) <= atol


@functools.lru_cache(maxsize=32)
def _indices(m: int) -> np.ndarray:
    return np.arange(1 << m, dtype=np.int64)


def _check_arity(n: int, s: np.ndarray) -> None:
    m = num_qubits(s)
    if m != n:
        raise ContractError(f"operator on {n} qubits applied to {m}-qubit state")


def apply_x(x: BitVector, s: np.ndarray) -> np.ndarray:
    """Apply X(x): amplitude ``k`` of the result is amplitude ``k ^ x`` of ``s``."""
    _check_arity(x.n, s)
    if x.bits == 0:
        return s.copy()
    return s[_indices(x.n) ^ x.bits]


def apply_diag(f: BoolFn, s: np.ndarray) -> np.ndarray:
    """Apply D(f): flip the sign of every amplitude where ``f`` is 1."""
    _check_arity(f.n, s)
    return s * f.signs


def apply_u(u: PlayerInput, s: np.ndarray) -> np.ndarray:
    """Apply X(x)D(f) -- the diagonal acts first."""
    return apply_x(u.x, apply_diag(u.f, s))


def dense_matrix(u: PlayerInput) -> np.ndarray:
    """Explicit matrix of X(x)D(f) with entry ``(z ^ x, z) = (-1)**f(z)``."""
    dim = 1 << u.n
    z = _indices(u.n)
    m = np.zeros((dim, dim), dtype=np.complex128)
    m[z ^ u.x.bits, z] = u.f.signs
    return m


def apply_hadamard(qubit: int, s: np.ndarray) -> np.ndarray:
    """Hadamard on one qubit; qubit ``q`` is bit ``q`` of the basis index."""
    m = num_qubits(s)
    if not 0 <= qubit < m:
        raise ContractError(f"qubit index {qubit} out of range for {m} qubits")
    v = s.reshape(1 << (m - qubit - 1), 2, 1 << qubit)
    out = np.empty_like(v)
    out[:, 0, :] = (v[:, 0, :] + v[:, 1, :]) * _SQRT1_2
    out[:, 1, :] = (v[:, 0, :] - v[:, 1, :]) * _SQRT1_2
    return out.reshape(s.shape)


def apply_cnot(control: int, target: int, s: np.ndarray) -> np.ndarray:
    m = num_qubits(s)
    if not (0 <= control < m and 0 <= target < m) or control == target:
        raise ContractError(f"bad CNOT qubits ({control}, {target}) for {m} qubits")
    idx = _indices(m)
    return s[idx ^ (((idx >> control) & 1) << target)]
