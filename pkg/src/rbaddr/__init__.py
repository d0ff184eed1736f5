"""Simultaneous randomized benchmarking: simulation and addressability analysis."""

__version__ = "0.1.0"

from .cliffords import CliffordElement, CliffordGroup, generate_c1, get_group, product_group
from .fitting import DecayFit, fit_correlation_curve, fit_exponential, fit_protocol_curves
from .noise import (
    SAMPLE_A,
    SAMPLE_B,
    Composite,
    CrossTalk,
    Decoherence,
    Depolarizing,
    DeviceParams,
    DriveEnvelope,
    Ideal,
    StaticError,
    crosstalk_hamiltonian,
    decoherence_ptm,
    evolve_to_ptm,
    noisy_gate,
    predict_addressability,
    predict_alphas,
)
from .paulis import (
    compose,
    depolarizing_ptm,
    expectation,
    pauli_conjugation_ptm,
    project,
    projector_diag,
    ptm_from_kraus,
    ptm_from_unitary,
    tensor,
)
from .protocol import (
    RBConfig,
    SpamModel,
    SurvivalCurve,
    generate_sequence,
    read_curves_csv,
    run_experiment,
    run_protocol,
    simulate_sequence,
    write_curves_csv,
)
from .report import AddressabilityReport, UVal, build_report, delta_alpha, delta_r, gate_error
from .twirl import (
    SubsystemTwirlBlocks,
    TwirlOutcome,
    brute_force_twirl,
    gamma_decay_curve,
    pauli_twirl,
    schur_general_twirl,
    twirl_cxc,
    twirl_cxi,
    twirl_full_clifford,
)

__all__ = [name for name in dir() if not name.startswith("_")]
