"""Qutrit channel-use counters at Alice's and Bob's output ports.

Each time a system leaves a laboratory its counter steps ``|i> -> |i+1 mod 3>``.
The switch and one-way communication leave both counters at 1; two-way
communication drives at least one to 2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentCounterError
from .game import GameInstance, SendEvent, one_way_identity_baseline, two_way_baseline

LABS = ("alice", "bob")
# number operator sum_i i |i><i| on a qutrit
NUMBER_OPERATOR = np.diag([0.0, 1.0, 2.0])


class Protocol(enum.Enum):
    SWITCH = "Switch"
    ONE_WAY = "OneWay"
    TWO_WAY = "TwoWay"


@dataclass(frozen=True)
class CounterState:
    alice: int = 0
    bob: int = 0

    def increment(self, lab: str) -> CounterState:
        if lab == "alice":
            return CounterState((self.alice + 1) % 3, self.bob)
        if lab == "bob":
            return CounterState(self.alice, (self.bob + 1) % 3)
        return self


@dataclass(frozen=True)
class CounterReport:
    protocol: Protocol
    alice_counter: int
    bob_counter: int
    expectation_N_alice: float
    expectation_N_bob: float

    @property
    def max_counter(self) -> int:
        return max(self.alice_counter, self.bob_counter)

    def to_dict(self) -> dict:
        return {
            "protocol": self.protocol.value,
            "alice_counter": self.alice_counter,
            "bob_counter": self.bob_counter,
            "expectation_N_alice": self.expectation_N_alice,
            "expectation_N_bob": self.expectation_N_bob,
        }


def tally(trace) -> CounterState:
    """Counter state after the given sequence of send events."""
    state = CounterState()
    for event in trace:
        state = state.increment(event.sender)
    return state


def expectation_n(value: int) -> float:
    ket = np.zeros(3)
    ket[value] = 1.0
    return float(ket @ NUMBER_OPERATOR @ ket)


def switch_branch_traces(inst: GameInstance) -> tuple[list[SendEvent], list[SendEvent]]:
    """Exit events along the two causal branches of the switch.

    Control ``|0>``: the target passes Alice then Bob; control ``|1>``: Bob
    then Alice. Every hop carries the n-qubit target.
    """
    n = inst.n
    first = [SendEvent("alice", "bob", n), SendEvent("bob", "charlie", n)]
    second = [SendEvent("bob", "alice", n), SendEvent("alice", "charlie", n)]
    return first, second


def run_with_counters(protocol: Protocol, inst: GameInstance) -> CounterReport:
    if protocol is Protocol.SWITCH:
        t0, t1 = switch_branch_traces(inst)
        c0, c1 = tally(t0), tally(t1)
        if c0 != c1:
            raise InconsistentCounterError(f"branch tallies differ: {c0} vs {c1}")
        state = c0
    elif protocol is Protocol.ONE_WAY:
        state = tally(one_way_identity_baseline(inst).trace)
    elif protocol is Protocol.TWO_WAY:
        state = tally(two_way_baseline(inst).trace)
    else:
        raise ValueError(f"unknown protocol {protocol!r}")
    return CounterReport(
        protocol,
        state.alice,
        state.bob,
        expectation_n(state.alice),
        expectation_n(state.bob),
    )
