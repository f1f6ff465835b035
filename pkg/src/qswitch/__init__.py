"""Quantum-switch protocol for the Exchange Evaluation game, with
brute-force checks of the causally ordered lower bounds at small n."""

__version__ = "0.1.0"

from .errors import CapacityError, ContractError, InconsistentCounterError
from .operators import (
    BitVector,
    BoolFn,
    PlayerInput,
    apply_diag,
    apply_hadamard,
    apply_u,
    apply_x,
    basis_state,
    dense_matrix,
    input_set_size,
)
from .switch import (
    CommutationClass,
    SwitchOutcome,
    classify_commutation,
    run_switch,
    run_switch_fast,
)
from .game import (
    GameInstance,
    SweepReport,
    ee_eval,
    enumerate_inputs,
    one_way_identity_baseline,
    sample_input,
    two_way_baseline,
    verify_switch_protocol,
)
from .bounds import (
    BoundReport,
    ShatteringCertificate,
    Witness,
    construct_witness,
    dense_coding_demo,
    distinguishability_premise_check,
    lemma1_bounds,
    proposition2_exhaustive,
    q_eps_bound,
    vc_shattering,
)
from .counters import CounterReport, Protocol, run_with_counters
