"""Two-output programmable quantum processor on top of 1 -> 2 telecloning."""

__version__ = "0.1.0"

from .linalg import (  # noqa: E402
    BellOutcome,
    DensityMatrix,
    SingleQubitGate,
    StateVector,
    apply_single_qubit,
    bell_measure,
    fidelity,
    partial_trace,
    purity,
    tensor,
)
from .processor import DataState, RunRecord, branch_table, run_shot, run_shots  # noqa: E402
from .states import Family, OperationVariant  # noqa: E402

__all__ = [
    "BellOutcome",
    "DataState",
    "DensityMatrix",
    "Family",
    "OperationVariant",
    "RunRecord",
    "SingleQubitGate",
    "StateVector",
    "apply_single_qubit",
    "bell_measure",
    "branch_table",
    "fidelity",
    "partial_trace",
    "purity",
    "run_shot",
    "run_shots",
    "tensor",
]
