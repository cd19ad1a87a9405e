"""Sparse-state simulation of the QFT and Shor's factoring algorithm."""
from .gates import SingleQubitGate, TwoQubitGate, apply_single, apply_two, hadamard, rotation, swap
from .measurement import OutcomeDistribution, distribution, make_stream, sample
from .qft import (
    Circuit,
    GateApplication,
    GateKind,
    build_qft_circuit,
    dft_oracle,
    gate_counts,
    qft_direct,
    qft_product_form,
    run_circuit,
)
from .shor import ShorConfig, ShorTrace, shor_factor
from .state import (
    CHOP_TOLERANCE,
    BasisState,
    StateVector,
    add,
    basis_ket,
    canonicalize,
    ket,
    norm,
    scale,
    tensor,
)

__version__ = "0.1.0"
