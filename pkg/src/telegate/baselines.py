"""Reference protocols to compare the two-output processor against.

* the one-output teleportation gate array (program = gate applied to one
  half of a Phi+ pair; succeeds only on Phi+),
* deterministic 1 -> 2 telecloning through the unprogrammed commuting
  register,
* the sequential scheme chaining the two,
* the transpose identity behind encoding on the port qubit,
* static resource ledgers.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import NamedTuple

import numpy as np

from . import kernels
from .linalg import (
    BellOutcome,
    DensityMatrix,
    SingleQubitGate,
    StateVector,
    apply_pauli_word,
    bell_measure,
    entanglement_entropy,
    fidelity,
    pauli_word_matrix,
    tensor,
)
from .processor import DataState, output_reductions, reference_output
from .states import Family, OperationVariant, base_program, bell, restricted_unitaries, restricted_unitary

# Frozen from an exhaustive search over the 64 three-qubit Pauli words; the
# test suite re-runs that search. Any word on A would do since A is discarded.
TELECLONING_CORRECTIONS = {
    BellOutcome.PHI_PLUS: "III",
    BellOutcome.PHI_MINUS: "ZZZ",
    BellOutcome.PSI_PLUS: "XXX",
    BellOutcome.PSI_MINUS: "YYY",
}

TELECLONING_CORRECTION_OPS = np.stack(
    [pauli_word_matrix(TELECLONING_CORRECTIONS[o]) for o in BellOutcome]
)

NC_SUCCESS = BellOutcome.PHI_PLUS


class NCResult(NamedTuple):
    success: bool
    outcome: BellOutcome
    out_state: StateVector
    probability: float


def nc_program(gate: SingleQubitGate) -> StateVector:
    """(I (x) gate)|Phi+> over (port, out)."""
    amps = np.kron(np.eye(2), gate.matrix) @ bell(BellOutcome.PHI_PLUS).amplitudes
    return StateVector(amps, ("P", "O"))


def nc_processor(data: DataState, gate: SingleQubitGate, rng=None, outcome=None) -> NCResult:
    total = tensor(data.state(), nc_program(gate))
    result, prob, out = bell_measure(total, "D", "P", rng=rng, outcome=outcome)
    return NCResult(result is NC_SUCCESS, result, out, prob)


def transpose_identity_check(gate: SingleQubitGate) -> float:
    """Max deviation between (I (x) U)|Phi> and (U^T (x) I)|Phi>, |Phi> = |00> + |11>."""
    pair = np.array([1, 0, 0, 1], dtype=np.complex128)
    lhs = np.kron(np.eye(2), gate.matrix) @ pair
    rhs = np.kron(gate.matrix.T, np.eye(2)) @ pair
    return float(np.max(np.abs(lhs - rhs)))


class TelecloneResult(NamedTuple):
    rho_B: DensityMatrix
    rho_C: DensityMatrix
    outcome: BellOutcome
    corrections: str
    probability: float
    post_state: StateVector


def telecloning_1to2(input_state: StateVector, rng=None, outcome=None) -> TelecloneResult:
    """Teleclone one qubit onto B and C; every outcome is corrected."""
    if input_state.num_qubits != 1:
        raise ValueError("telecloning takes a single-qubit input")
    total = tensor(input_state.relabel(("D",)), base_program(Family.COMMUTING))
    result, prob, post = bell_measure(total, "D", "P", rng=rng, outcome=outcome)
    word = TELECLONING_CORRECTIONS[result]
    corrected = apply_pauli_word(post, word)
    rho_b, rho_c = output_reductions(corrected)
    return TelecloneResult(rho_b, rho_c, result, word, prob, corrected)


@dataclass(frozen=True, eq=False)
class SequentialResult:
    stage1: NCResult
    stage2: TelecloneResult | None
    overall_success: bool
    rho_B: DensityMatrix | None
    rho_C: DensityMatrix | None
    fidelity_B: float
    fidelity_C: float


def sequential_scheme(data: DataState, variant: OperationVariant, rng=None, outcomes=None) -> SequentialResult:
    """One-output processor, then telecloning of its output on success.

    ``outcomes`` optionally forces ``(stage1, stage2)`` Bell results.
    """
    forced1, forced2 = outcomes if outcomes is not None else (None, None)
    stage1 = nc_processor(data, restricted_unitary(variant), rng=rng if forced1 is None else None, outcome=forced1)
    if not stage1.success:
        return SequentialResult(stage1, None, False, None, None, 0.0, 0.0)
    stage2 = telecloning_1to2(stage1.out_state, rng=rng if forced2 is None else None, outcome=forced2)
    ref = reference_output(data, variant)
    return SequentialResult(
        stage1,
        stage2,
        True,
        stage2.rho_B,
        stage2.rho_C,
        fidelity(ref, stage2.rho_B),
        fidelity(ref, stage2.rho_C),
    )


# ---------------------------------------------------------------- batches

_PHI_PLUS_2X2 = bell(BellOutcome.PHI_PLUS).amplitudes.reshape(2, 2)


def nc_programs(gates) -> np.ndarray:
    """Batched ``nc_program`` amplitudes, shape (S, 4)."""
    return np.einsum("soj,pj->spo", gates, _PHI_PLUS_2X2).reshape(-1, 4)


@dataclass(frozen=True, eq=False)
class NCBatch:
    outcomes: np.ndarray
    fidelity: np.ndarray

    @property
    def success(self):
        return self.outcomes == int(NC_SUCCESS)

    @property
    def success_rate(self) -> float:
        return float(np.mean(self.success))


def simulate_nc_batch(data, gates, u) -> NCBatch:
    data = np.ascontiguousarray(data, dtype=np.complex128)
    outcomes, _, out = kernels.bell_sample(data, nc_programs(gates), np.asarray(u, dtype=np.float64))
    ideal = np.einsum("sij,sj->si", gates, data)
    fid = np.abs(np.einsum("si,si->s", ideal.conj(), out)) ** 2
    return NCBatch(outcomes, fid)


@dataclass(frozen=True, eq=False)
class SequentialBatch:
    stage1_outcomes: np.ndarray
    stage2_outcomes: np.ndarray
    fidelity_B: np.ndarray
    fidelity_C: np.ndarray

    @property
    def success(self):
        return self.stage1_outcomes == int(NC_SUCCESS)

    @property
    def success_rate(self) -> float:
        return float(np.mean(self.success))


def simulate_sequential_batch(family, data, angles, u1, u2) -> SequentialBatch:
    """Both stages run on every row; stage 2 only counts where stage 1 succeeded."""
    data = np.ascontiguousarray(data, dtype=np.complex128)
    gates = restricted_unitaries(family, angles)
    out1, _, stage1_out = kernels.bell_sample(data, nc_programs(gates), np.asarray(u1, dtype=np.float64))
    programs = np.tile(base_program(Family.COMMUTING).amplitudes, (data.shape[0], 1))
    out2, _, residual = kernels.bell_sample(stage1_out, programs, np.asarray(u2, dtype=np.float64))
    corrected = kernels.apply_operator(residual, TELECLONING_CORRECTION_OPS, out2)
    rdm = kernels.marginals(corrected, 3)
    ref = np.einsum("sij,sj->si", gates, data)
    fid_b, _ = kernels.fidelity_purity(np.ascontiguousarray(rdm[:, 1]), ref)
    fid_c, _ = kernels.fidelity_purity(np.ascontiguousarray(rdm[:, 2]), ref)
    ok = out1 == int(NC_SUCCESS)
    return SequentialBatch(out1, out2, np.where(ok, fid_b, 0.0), np.where(ok, fid_c, 0.0))


# ---------------------------------------------------------------- resources

LEDGER_RULE = (
    "ebits: von Neumann entropy across the port-qubit cut of each consumed "
    "program/channel state; classical_bits: 2 per Bell measurement; "
    "physical_qubits: distinct qubits touched; bell_measurements: count"
)


@dataclass(frozen=True)
class ResourceLedger:
    ebits: int
    classical_bits: int
    physical_qubits: int
    bell_measurements: int

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"{f.name} must be >= 0")

    def __add__(self, other: ResourceLedger) -> ResourceLedger:
        return ResourceLedger(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    def difference(self, other: ResourceLedger) -> dict:
        """Signed ``self - other`` per field (may be negative, so not a ledger)."""
        return {f.name: getattr(self, f.name) - getattr(other, f.name) for f in fields(self)}

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _port_ebits(state: StateVector) -> int:
    return int(round(entanglement_entropy(state, [0])))


def _stage(channel: StateVector, fresh_qubits: int) -> ResourceLedger:
    return ResourceLedger(
        ebits=_port_ebits(channel),
        classical_bits=2,
        physical_qubits=fresh_qubits,
        bell_measurements=1,
    )


def two_output_ledger() -> ResourceLedger:
    # data qubit + 4-qubit program register
    return _stage(base_program(Family.COMMUTING), 1 + 4)


def sequential_ledger() -> ResourceLedger:
    # stage 1: data + Phi+ pair; stage 2 reuses the stage-1 output as its
    # input and brings a fresh 4-qubit telecloning register
    nc = _stage(nc_program(restricted_unitary(OperationVariant(Family.COMMUTING, 0.0))), 1 + 2)
    clone = _stage(base_program(Family.COMMUTING), 4)
    return nc + clone


def resource_comparison() -> tuple[ResourceLedger, ResourceLedger]:
    return two_output_ledger(), sequential_ledger()
