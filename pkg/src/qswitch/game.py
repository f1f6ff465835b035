"""The Exchange Evaluation game EE_n and protocols that play it.

Alice holds ``(x, f)``, Bob holds ``(y, g)``, both with ``f(0) = g(0) = 0``;
Charlie must output ``f(y) XOR g(x)``. The switch protocol plays each input
as the unitary X(x)D(f) on an n-qubit target prepared in ``|0...0>``.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from .errors import CapacityError, ContractError
from .operators import BitVector, BoolFn, PlayerInput, basis_state, input_set_size
from .switch import run_switch, run_switch_batch, run_switch_fast

MAX_ENUMERATE_N = 4
MAX_EXHAUSTIVE_FULL_N = 2
MAX_EXHAUSTIVE_FAST_N = 3
# sampled sweeps are split into fixed-size chunks, each with its own RNG
# stream, so results do not depend on the worker count
SAMPLE_CHUNK = 10_000


@dataclass(frozen=True)
class GameInstance:
    alice: PlayerInput
    bob: PlayerInput

    def __post_init__(self):
        if self.alice.n != self.bob.n:
            raise ContractError(f"arity mismatch: {self.alice.n} vs {self.bob.n}")

    @property
    def n(self) -> int:
        return self.alice.n

    def to_dict(self) -> dict:
        return {"n": self.n, "alice": self.alice.to_dict(), "bob": self.bob.to_dict()}


def ee_eval(inst: GameInstance) -> int:
    """``f(y) XOR g(x)`` by truth-table lookup."""
    return inst.alice.f(inst.bob.x.bits) ^ inst.bob.f(inst.alice.x.bits)


def ee_value(alice: PlayerInput, bob: PlayerInput) -> int:
    """Same as :func:`ee_eval` without building a :class:`GameInstance`."""
    return alice.f(bob.x.bits) ^ bob.f(alice.x.bits)


def enumerate_inputs(n: int) -> Iterator[PlayerInput]:
    """Every ``(x, f)`` with ``f(0) = 0``, ordered by ``(x, table)``."""
    if n > MAX_ENUMERATE_N:
        raise CapacityError("enumerate_inputs", n, MAX_ENUMERATE_N)
    if n < 0:
        raise ContractError(f"negative arity {n}")
    nfuncs = 1 << ((1 << n) - 1)
    for x in range(1 << n):
        bv = BitVector(x, n)
        for k in range(nfuncs):
            # even tables only: bit 0 (f at the zero vector) stays clear
            yield PlayerInput(bv, BoolFn(k << 1, n))


def sample_input(n: int, rng: np.random.Generator) -> PlayerInput:
    """Uniform draw from the ``2**(2**n + n - 1)`` valid inputs."""
    x = int(rng.integers(0, 1 << n))
    size = 1 << n
    raw = rng.bytes(max(1, size // 8))
    table = int.from_bytes(raw, "little") & ((1 << size) - 1) & ~1
    return PlayerInput(BitVector(x, n), BoolFn(table, n))


def _sample_tables(n: int, count: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """``count`` uniform inputs as arrays: packed x values and ``(count, bytes)``
    little-endian truth tables with the f(0) bit cleared."""
    size = 1 << n
    nbytes = max(1, size // 8)
    xs = rng.integers(0, size, size=count, dtype=np.int64)
    raw = np.frombuffer(rng.bytes(count * nbytes), dtype=np.uint8).reshape(count, nbytes).copy()
    if size < 8:
        raw &= (1 << size) - 1
    raw[:, 0] &= 0xFE
    return xs, raw


def sample_inputs(n: int, count: int, rng: np.random.Generator) -> list[PlayerInput]:
    """Vectorised :func:`sample_input`: ``count`` independent uniform inputs."""
    xs, raw = _sample_tables(n, count, rng)
    return [
        PlayerInput(BitVector(int(x), n), BoolFn(int.from_bytes(row.tobytes(), "little"), n))
        for x, row in zip(xs, raw)
    ]


def sample_instance(n: int, rng: np.random.Generator) -> GameInstance:
    return GameInstance(sample_input(n, rng), sample_input(n, rng))


# ---------------------------------------------------------------------------
# Protocol verification sweeps
# ---------------------------------------------------------------------------


@dataclass
class SweepReport:
    n: int
    mode: str
    path: str
    pairs_tested: int = 0
    failures: int = 0
    max_probability_deviation: float = 0.0
    wall_time: float = 0.0
    rng_seed: int | None = None
    first_failure: dict | None = None

    def merge(self, other: SweepReport) -> SweepReport:
        self.pairs_tested += other.pairs_tested
        self.failures += other.failures
        self.max_probability_deviation = max(
            self.max_probability_deviation, other.max_probability_deviation
        )
        if self.first_failure is None:
            self.first_failure = other.first_failure
        return self

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return asdict(self)


def _check_pair(alice: PlayerInput, bob: PlayerInput, full: bool, rep: SweepReport,
                tol: float) -> None:
    expected = ee_value(alice, bob)
    ok = run_switch_fast(alice, bob).decoded_bit == expected
    if full:
        out = run_switch(alice, bob, basis_state(0, alice.n))
        p_right = out.p1 if expected else out.p0
        rep.max_probability_deviation = max(rep.max_probability_deviation, 1.0 - p_right)
        ok = ok and 1.0 - p_right <= tol
    rep.pairs_tested += 1
    if not ok:
        rep.failures += 1
        if rep.first_failure is None:
            rep.first_failure = GameInstance(alice, bob).to_dict()


def _sampled_chunk(n: int, count: int, seed_seq: np.random.SeedSequence, full: bool,
                   tol: float) -> SweepReport:
    rng = np.random.default_rng(seed_seq)
    rep = SweepReport(n, "sampled", "full" if full else "fast")
    xa, ta = _sample_tables(n, count, rng)
    xb, tb = _sample_tables(n, count, rng)

    def to_inputs(xs, tables):
        return [PlayerInput(BitVector(int(x), n), BoolFn(int.from_bytes(t.tobytes(), "little"), n))
                for x, t in zip(xs, tables)]

    alices, bobs = to_inputs(xa, ta), to_inputs(xb, tb)
    expected = np.array([ee_value(a, b) for a, b in zip(alices, bobs)])
    fast = np.array([run_switch_fast(a, b).decoded_bit for a, b in zip(alices, bobs)])
    bad = fast != expected
    if full:
        size = 1 << n
        p0, p1 = run_switch_batch(
            xa, np.unpackbits(ta, axis=1, bitorder="little")[:, :size],
            xb, np.unpackbits(tb, axis=1, bitorder="little")[:, :size],
        )
        p_right = np.where(expected == 1, p1, p0)
        rep.max_probability_deviation = float(np.max(1.0 - p_right, initial=0.0))
        bad |= 1.0 - p_right > tol
    rep.pairs_tested = count
    rep.failures = int(bad.sum())
    if rep.failures:
        i = int(np.flatnonzero(bad)[0])
        rep.first_failure = GameInstance(alices[i], bobs[i]).to_dict()
    return rep


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("QSWITCH_WORKERS", "0")) or os.cpu_count() or 1
    return max(1, workers)


def verify_switch_protocol(
    n: int,
    mode: str = "auto",
    sample_count: int = 100_000,
    rng_seed: int | None = 0,
    path: str = "auto",
    workers: int | None = 1,
    tolerance: float = 1e-12,
) -> SweepReport:
    """Check the switch protocol against ``ee_eval``.

    ``mode`` is ``"exhaustive"``, ``"sampled"`` or ``"auto"`` (exhaustive
    for n <= 2). ``path`` is ``"fast"`` (closed form only), ``"full"``
    (closed form and state vector) or ``"auto"`` (full when n <= 2).
    Sampled sweeps need a seed; the same seed always yields the same report
    regardless of ``workers``.
    """
    if mode == "auto":
        mode = "exhaustive" if n <= MAX_EXHAUSTIVE_FULL_N else "sampled"
    if path == "auto":
        path = "full" if n <= MAX_EXHAUSTIVE_FULL_N else "fast"
    if mode not in ("exhaustive", "sampled") or path not in ("fast", "full"):
        raise ContractError(f"unknown mode/path {mode!r}/{path!r}")
    full = path == "full"
    start = time.perf_counter()

    if mode == "exhaustive":
        limit = MAX_EXHAUSTIVE_FULL_N if full else MAX_EXHAUSTIVE_FAST_N
        if n > limit:
            raise CapacityError(f"exhaustive {path}-path sweep", n, limit)
        rep = SweepReport(n, mode, path)
        inputs = list(enumerate_inputs(n))
        for alice, bob in itertools.product(inputs, repeat=2):
            _check_pair(alice, bob, full, rep, tolerance)
    else:
        if rng_seed is None:
            raise ContractError("sampled sweeps require an explicit seed")
        rep = SweepReport(n, mode, path, rng_seed=rng_seed)
        counts = [SAMPLE_CHUNK] * (sample_count // SAMPLE_CHUNK)
        if sample_count % SAMPLE_CHUNK:
            counts.append(sample_count % SAMPLE_CHUNK)
        seeds = np.random.SeedSequence(rng_seed).spawn(len(counts))
        jobs = [(n, c, s, full, tolerance) for c, s in zip(counts, seeds)]
        nworkers = min(_resolve_workers(workers), len(jobs))
        if nworkers > 1:
            with ProcessPoolExecutor(nworkers) as pool:
                parts = list(pool.map(_sampled_chunk, *zip(*jobs)))
        else:
            parts = [_sampled_chunk(*job) for job in jobs]
        for part in parts:
            rep.merge(part)

    rep.wall_time = time.perf_counter() - start
    return rep


# ---------------------------------------------------------------------------
# Classical baselines
# ---------------------------------------------------------------------------


class SendEvent(NamedTuple):
    sender: str
    destination: str
    bits: int


@dataclass(frozen=True)
class BaselineResult:
    answer: int
    communicated: int
    trace: list[SendEvent] = field(default_factory=list)
    # cost in qubits when the message is dense-coded (one-way baseline only)
    qubits_with_dense_coding: int | None = None


def two_way_baseline(inst: GameInstance) -> BaselineResult:
    """Alice and Bob swap x and y, evaluate locally, each send one bit.

    Costs ``2n + 2`` bits. Answer bits go to Charlie in the order Alice,
    then Bob.
    """
    n = inst.n
    trace = []
    # Alice -> Bob: x
    trace.append(SendEvent("alice", "bob", n))
    x_at_bob = inst.alice.x.bits
    # Bob -> Alice: y
    trace.append(SendEvent("bob", "alice", n))
    y_at_alice = inst.bob.x.bits
    a_bit = inst.alice.f(y_at_alice)
    b_bit = inst.bob.f(x_at_bob)
    trace.append(SendEvent("alice", "charlie", 1))
    trace.append(SendEvent("bob", "charlie", 1))
    return BaselineResult(a_bit ^ b_bit, sum(e.bits for e in trace), trace)


def one_way_identity_baseline(inst: GameInstance) -> BaselineResult:
    """Alice forwards her whole input; Bob evaluates and tells Charlie.

    Alice's message is the ``2**n + n - 1`` bits that identify ``(x, f)``
    (``f(0)`` is implied). Dense coding would halve that, which is
    reported as ``ceil(bits / 2)`` qubits rather than simulated.
    """
    n = inst.n
    msg_bits = (1 << n) + n - 1
    # message layout: n bits of x, then f at indices 1 .. 2**n - 1
    message = inst.alice.x.bits | ((inst.alice.f.table >> 1) << n)
    x = message & ((1 << n) - 1)
    f = BoolFn((message >> n) << 1, n)
    answer = f(inst.bob.x.bits) ^ inst.bob.f(x)
    trace = [SendEvent("alice", "bob", msg_bits), SendEvent("bob", "charlie", 1)]
    return BaselineResult(answer, msg_bits, trace, qubits_with_dense_coding=-(-msg_bits // 2))
