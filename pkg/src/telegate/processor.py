"""Two-output programmable processor.

The data qubit D is Bell-measured against the port qubit P of an encoded
program register (P, A, B, C). On a Phi+ or Phi- result the triple (A, B, C)
carries the transformed data, fanned out to clones on B and C; A is an
ancilla. Psi results are failures.

``branch_table`` and ``run_shot`` go through the labelled ``StateVector``
machinery one run at a time; ``run_shots`` pushes whole batches through the
array kernels and is what the Monte Carlo experiments use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .linalg import (
    NORM_TOL,
    SIGMA_X,
    BellOutcome,
    DensityMatrix,
    StateVector,
    apply_pauli_word,
    apply_single_qubit,
    bell_measure,
    fidelity,
    partial_trace,
    pauli_word_matrix,
    purity,
    tensor,
)
from .sampling import random_angles, random_data_states
from .states import (
    Family,
    OperationVariant,
    encode_program,
    encode_programs,
    restricted_unitaries,
    restricted_unitary,
)

SUCCESS_OUTCOMES = frozenset({BellOutcome.PHI_PLUS, BellOutcome.PHI_MINUS})

# None marks a branch the protocol gives up on.
CORRECTIONS = {
    BellOutcome.PHI_PLUS: "III",
    BellOutcome.PHI_MINUS: "ZZZ",
    BellOutcome.PSI_PLUS: None,
    BellOutcome.PSI_MINUS: None,
}

CLONE_FIDELITY = 5.0 / 6.0
CLONE_PURITY = 13.0 / 18.0
SUCCESS_PROBABILITY = 0.5


@dataclass(frozen=True)
class DataState:
    """Input qubit a|0> + b|1>."""

    a: complex
    b: complex

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"|a|^2 + |b|^2 = {norm!r}, expected 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def normalized(cls, a, b) -> DataState:
        norm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
        if norm == 0:
            raise ValueError("data state cannot be the zero vector")
        return cls(a / norm, b / norm)

    @classmethod
    def from_array(cls, amps) -> DataState:
        return cls(complex(amps[0]), complex(amps[1]))

    def state(self) -> StateVector:
        return StateVector([self.a, self.b], ("D",))


@dataclass(frozen=True, eq=False)
class RunRecord:
    variant: OperationVariant
    data: DataState
    outcome: BellOutcome
    branch_probability: float
    success: bool
    post_state: StateVector
    rho_B: DensityMatrix
    rho_C: DensityMatrix
    fidelity_B: float
    fidelity_C: float
    reference: StateVector

    @property
    def purity_B(self) -> float:
        return purity(self.rho_B)

    @property
    def purity_C(self) -> float:
        return purity(self.rho_C)


def assemble(data: DataState, variant: OperationVariant) -> StateVector:
    """Total input |d> (x) |P_U> over (D, P, A, B, C).

    The anticommuting gate array flips the data qubit with sigma_x first.
    """
    d = data.state()
    if variant.family is Family.ANTICOMMUTING:
        d = apply_single_qubit(d, SIGMA_X, 0)
    return tensor(d, encode_program(variant))


def correct(outcome, state_abc: StateVector) -> tuple[StateVector, bool]:
    """Apply the outcome's Pauli correction; returns ``(state, correctable)``."""
    word = CORRECTIONS[BellOutcome(outcome)]
    if word is None:
        return state_abc, False
    return apply_pauli_word(state_abc, word), True


def output_reductions(state_abc: StateVector) -> tuple[DensityMatrix, DensityMatrix]:
    rho = state_abc.density()
    return partial_trace(rho, ["B"]), partial_trace(rho, ["C"])


def reference_output(data: DataState, variant: OperationVariant) -> StateVector:
    """The ideal single-qubit output U|d>."""
    gate = restricted_unitary(variant)
    return StateVector(gate.matrix @ np.array([data.a, data.b]), ("out",))


def _record(data, variant, outcome, prob, post_state) -> RunRecord:
    corrected, ok = correct(outcome, post_state)
    rho_b, rho_c = output_reductions(corrected)
    ref = reference_output(data, variant)
    return RunRecord(
        variant=variant,
        data=data,
        outcome=outcome,
        branch_probability=prob,
        success=ok,
        post_state=corrected,
        rho_B=rho_b,
        rho_C=rho_c,
        fidelity_B=fidelity(ref, rho_b),
        fidelity_C=fidelity(ref, rho_c),
        reference=ref,
    )


def branch_table(data: DataState, variant: OperationVariant) -> list[RunRecord]:
    """All four measurement branches, exactly, in outcome-code order."""
    total = assemble(data, variant)
    records = []
    for outcome in BellOutcome:
        result, prob, post = bell_measure(total, "D", "P", outcome=outcome)
        records.append(_record(data, variant, result, prob, post))
    return records


def run_shot(data: DataState, variant: OperationVariant, rng) -> RunRecord:
    result, prob, post = bell_measure(assemble(data, variant), "D", "P", rng=rng)
    return _record(data, variant, result, prob, post)


PROCESSOR_CORRECTION_OPS = np.stack(
    [pauli_word_matrix(CORRECTIONS[o] or "III") for o in BellOutcome]
)


@dataclass(frozen=True, eq=False)
class ShotBatch:
    """Per-shot arrays from a batch of processor runs."""

    family: Family
    data: np.ndarray
    angles: np.ndarray
    outcomes: np.ndarray
    probabilities: np.ndarray
    fidelity_B: np.ndarray
    fidelity_C: np.ndarray
    purity_B: np.ndarray
    purity_C: np.ndarray

    @property
    def shots(self) -> int:
        return int(self.outcomes.shape[0])

    @property
    def success(self) -> np.ndarray:
        return self.outcomes < 2

    @property
    def success_rate(self) -> float:
        return float(np.mean(self.success))

    def outcome_counts(self) -> np.ndarray:
        return np.bincount(self.outcomes, minlength=4)


def simulate_batch(family, data, angles, u) -> ShotBatch:
    """Run one shot per row of ``data`` / ``angles`` with uniforms ``u``."""
    family = Family(family)
    data = np.ascontiguousarray(data, dtype=np.complex128)
    angles = np.asarray(angles, dtype=np.float64)
    fed = data if family is Family.COMMUTING else np.ascontiguousarray(data[:, ::-1])
    programs = encode_programs(family, angles)
    outcomes, probs, residual = kernels.bell_sample(fed, programs, np.asarray(u, dtype=np.float64))
    corrected = kernels.apply_operator(residual, PROCESSOR_CORRECTION_OPS, outcomes)
    rdm = kernels.marginals(corrected, 3)
    ref = np.einsum("sij,sj->si", restricted_unitaries(family, angles), data)
    fid_b, pur_b = kernels.fidelity_purity(np.ascontiguousarray(rdm[:, 1]), ref)
    fid_c, pur_c = kernels.fidelity_purity(np.ascontiguousarray(rdm[:, 2]), ref)
    return ShotBatch(family, data, angles, outcomes, probs, fid_b, fid_c, pur_b, pur_c)


def draw_inputs(rng, shots, data=None, angle=None):
    """Shot inputs in a fixed draw order: data states, then angles.

    A fixed ``data`` or ``angle`` is broadcast and consumes no randomness.
    """
    if data is None:
        data_arr = random_data_states(rng, shots)
    else:
        data_arr = np.tile(np.array([data.a, data.b], dtype=np.complex128), (shots, 1))
    if angle is None:
        angles = random_angles(rng, shots)
    else:
        angles = np.full(shots, float(angle))
    return data_arr, angles


def run_shots(family, shots: int, rng, data: DataState | None = None, angle=None) -> ShotBatch:
    """Seeded Monte Carlo over ``shots`` runs.

    Omitted ``data`` / ``angle`` are drawn per shot (Haar-random states,
    uniform angles); one uniform per shot then picks the Bell outcome.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    data_arr, angles = draw_inputs(rng, shots, data, angle)
    return simulate_batch(family, data_arr, angles, rng.random(shots))
