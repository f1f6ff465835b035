"""Why a causally ordered protocol needs exponentially many qubits.

Deterministic case: every pair of Alice inputs is told apart by some Bob
input, so Alice must send a system of dimension ceil(sqrt(#inputs)).
Bounded error: EE_n shatters a set of 2^n - 1 Bob inputs, and the
VC-dimension bound gives (1 - H(eps)) 2^(n-2) qubits.
"""

from qswitch import (
    construct_witness,
    dense_coding_demo,
    distinguishability_premise_check,
    enumerate_inputs,
    lemma1_bounds,
    proposition2_exhaustive,
    q_eps_bound,
    vc_shattering,
)
from qswitch.bounds import separation_sum

# --- separating witnesses ----------------------------------------------------
inputs = list(enumerate_inputs(2))
a1, a2 = inputs[3], inputs[20]
w = construct_witness(a1, a2)
print(f"inputs {a1.to_dict()} and {a2.to_dict()}")
print(f"  separated by y={w.y.bits}, g={w.g.to_hex()} ({w.case_tag.value}); "
      f"sum = {separation_sum(a1, a2, w.y, w.g)}")

for n in (1, 2, 3):
    res = proposition2_exhaustive(n)
    print(f"n={n}: {res.pairs_checked} pairs, {res.method}, passed={res.passed}")
print("all rows distinct at n=2:", distinguishability_premise_check(2))

# --- the deterministic bound --------------------------------------------------
for n in (1, 2, 3):
    count = 2 ** (2**n + n - 1)
    dim, qubits = lemma1_bounds(count)
    print(f"n={n}: {count} inputs -> dimension {dim}, {qubits} qubits")

# dense coding is where the factor 1/2 comes from
dc = dense_coding_demo()
print("\ndense coding, message -> decoded:",
      {f"{m[0]}{m[1]}": f"{d[0]}{d[1]}" for m, (d, _) in dc.decoded.items()})

# --- shattering ----------------------------------------------------------------
cert = vc_shattering(3)
print(f"\nn=3 shattered set size {cert.verified_size}, {len(cert.assignments)} subsets realized")

# --- the separation table -------------------------------------------------------
print(f"\n{'n':>3} {'causal det.':>12} {'Q_0.1 >=':>10} {'switch':>7}")
for n in (2, 4, 8, 12, 16, 20):
    r = q_eps_bound(n, 0.1)
    print(f"{n:>3} {r.deterministic_causal_qubits:>12g} {r.q_eps_lower_bound:>10.1f} "
          f"{r.switch_qubits:>7}")
