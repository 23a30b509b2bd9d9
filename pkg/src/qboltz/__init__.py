"""Exact finite-dimensional laboratory for the quantum Boltzmann entropy and decoherence."""

from .entropy import (
    collapse_average_entropy,
    equality_witness,
    quantum_boltzmann_entropy,
    relative_entropy,
    second_law_gap,
    von_neumann_entropy,
)
from .qstate import (
    DensityMatrix,
    KrausMap,
    ProjectorFamily,
    PureState,
    UnitaryMap,
    conditional_state,
    is_decoherent,
    mean_observable,
    partial_trace,
    pinch,
    tensor,
    trace_norm_pure_diff,
)

__version__ = "0.1.0"
