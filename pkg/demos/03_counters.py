"""Telling the switch apart from two-way communication.

A mod-3 counter at each laboratory's output port ticks whenever a system
leaves. Two-way classical communication solves EE_n with 2n + 2 bits, but
it makes a laboratory send twice.
"""

import numpy as np

from qswitch import Protocol, run_with_counters, two_way_baseline
from qswitch.counters import switch_branch_traces, tally
from qswitch.game import one_way_identity_baseline, sample_instance

rng = np.random.default_rng(3)
inst = sample_instance(3, rng)

two = two_way_baseline(inst)
print(f"two-way: answer {two.answer}, {two.communicated} bits")
for event in two.trace:
    print("   ", event)

one = one_way_identity_baseline(inst)
print(f"one-way: {one.communicated} bits, {one.qubits_with_dense_coding} qubits with dense coding")

b0, b1 = switch_branch_traces(inst)
print("\nswitch branch tallies:", tally(b0), tally(b1))

for protocol in Protocol:
    rep = run_with_counters(protocol, inst)
    print(f"{protocol.value:>7}: <N_alice>={rep.expectation_N_alice:g} "
          f"<N_bob>={rep.expectation_N_bob:g}")
