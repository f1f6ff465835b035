import functools
import sys

import numpy as np
import pytest

from qswitch.operators import BitVector, BoolFn, PlayerInput

I2 = np.eye(2)
PX = np.array([[0, 1], [1, 0]], dtype=complex)
PZ = np.array([[1, 0], [0, -1]], dtype=complex)
H2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def kron_all(factors):
    return functools.reduce(np.kron, factors, np.eye(1))


def pauli_x_oracle(x: BitVector) -> np.ndarray:
    """X_1^{x_1} (x) ... (x) X_n^{x_n} built from 2x2 blocks.

    Qubit 1 is the least-significant index bit, so it is the *last*
    Kronecker factor.
    """
    comps = x.components()
    return kron_all([PX if c else I2 for c in reversed(comps)])


def diag_oracle(f: BoolFn) -> np.ndarray:
    n = f.n
    signs = []
    for idx in range(1 << n):
        z = BitVector.from_components([(idx >> i) & 1 for i in range(n)])
        signs.append((-1) ** ((f.table >> z.bits) & 1))
    return np.diag(np.array(signs, dtype=complex))


def u_oracle(u: PlayerInput) -> np.ndarray:
    return pauli_x_oracle(u.x) @ diag_oracle(u.f)


def random_input(n, rng) -> PlayerInput:
    x = int(rng.integers(0, 1 << n))
    table = int(rng.integers(0, 1 << ((1 << n) - 1))) << 1 if n <= 5 else 0
    return PlayerInput.from_ints(x, table, n)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines, key=lambda k: int(k[2:])):
        ok, detail = lines[key]
        terminalreporter.write_line(f"{key}: {'PASS' if ok else 'FAIL'}  {detail}")
