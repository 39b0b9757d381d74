"""Named states and gates of the two-output processor.

Program registers are ordered (P, A, B, C) with the port qubit P most
significant; the clone-carrying triples are ordered (A, B, C).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    SIGMA_Z,
    BellOutcome,
    SingleQubitGate,
    StateVector,
    apply_single_qubit,
)

TWO_PI = 2.0 * math.pi
PROGRAM_LABELS = ("P", "A", "B", "C")
OUTPUT_LABELS = ("A", "B", "C")


class Family(enum.Enum):
    COMMUTING = "commuting"
    ANTICOMMUTING = "anticommuting"

    @classmethod
    def parse(cls, text: str) -> Family:
        key = text.strip().lower().replace("-", "").replace("_", "")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown operation family {text!r}")


@dataclass(frozen=True)
class OperationVariant:
    """An operation family plus its angle, reduced into [0, 2*pi)."""

    family: Family
    angle: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        angle = float(self.angle) % TWO_PI
        # fmod of a tiny negative lands on 2*pi itself
        object.__setattr__(self, "angle", 0.0 if angle >= TWO_PI else angle)

    @classmethod
    def commuting(cls, alpha: float) -> OperationVariant:
        return cls(Family.COMMUTING, alpha)

    @classmethod
    def anticommuting(cls, beta: float) -> OperationVariant:
        return cls(Family.ANTICOMMUTING, beta)


_BELL_AMPLITUDES = {
    BellOutcome.PHI_PLUS: (1, 0, 0, 1),
    BellOutcome.PHI_MINUS: (1, 0, 0, -1),
    BellOutcome.PSI_PLUS: (0, 1, 1, 0),
    BellOutcome.PSI_MINUS: (0, 1, -1, 0),
}


def bell(kind, labels=()) -> StateVector:
    kind = BellOutcome.parse(kind) if isinstance(kind, str) else BellOutcome(kind)
    return StateVector(np.array(_BELL_AMPLITUDES[kind]) / math.sqrt(2.0), labels)


# The weight on |000> / |111> is sqrt(2/3): with sqrt(1/3) the triples are
# not normalized and the clones come out at fidelity 3/4, not 5/6.
PHI_MAJOR = math.sqrt(2 / 3)
PHI_MINOR = math.sqrt(1 / 6)


def phi0() -> StateVector:
    amps = np.zeros(8, dtype=np.complex128)
    amps[0b000] = PHI_MAJOR
    amps[0b101] = amps[0b110] = PHI_MINOR
    return StateVector(amps, OUTPUT_LABELS)


def phi1() -> StateVector:
    amps = np.zeros(8, dtype=np.complex128)
    amps[0b111] = PHI_MAJOR
    amps[0b001] = amps[0b010] = PHI_MINOR
    return StateVector(amps, OUTPUT_LABELS)


def base_program(family) -> StateVector:
    """Unprogrammed 4-qubit register: port P entangled with the clone triple.

    The commuting register pairs |0>_P with Phi0; the anticommuting one pairs
    |0>_P with Phi1.
    """
    family = Family(family)
    first, second = (phi0(), phi1()) if family is Family.COMMUTING else (phi1(), phi0())
    amps = (
        np.kron([1, 0], first.amplitudes) + np.kron([0, 1], second.amplitudes)
    ) / math.sqrt(2.0)
    return StateVector(amps, PROGRAM_LABELS)


def restricted_unitary(variant: OperationVariant) -> SingleQubitGate:
    half = variant.angle / 2.0
    plus, minus = np.exp(1j * half), np.exp(-1j * half)
    if variant.family is Family.COMMUTING:
        return SingleQubitGate([[plus, 0], [0, minus]], f"U({variant.angle:g})")
    return SingleQubitGate([[0, plus], [minus, 0]], f"U'({variant.angle:g})")


def restricted_unitaries(family, angles) -> np.ndarray:
    """Batched ``restricted_unitary`` matrices, shape (S, 2, 2)."""
    angles = np.mod(np.asarray(angles, dtype=np.float64), TWO_PI)
    plus, minus = np.exp(0.5j * angles), np.exp(-0.5j * angles)
    out = np.zeros(angles.shape + (2, 2), dtype=np.complex128)
    if Family(family) is Family.COMMUTING:
        out[..., 0, 0], out[..., 1, 1] = plus, minus
    else:
        out[..., 0, 1], out[..., 1, 0] = plus, minus
    return out


def encode_program(variant: OperationVariant) -> StateVector:
    """Program register with the operation applied to its port qubit."""
    return apply_single_qubit(
        base_program(variant.family), restricted_unitary(variant), PROGRAM_LABELS.index("P")
    )


def encode_programs(family, angles) -> np.ndarray:
    """Batched ``encode_program`` amplitudes, shape (S, 16)."""
    gates = restricted_unitaries(family, angles)
    base = base_program(family).amplitudes.reshape(2, 8)
    return np.einsum("sij,jr->sir", gates, base).reshape(-1, 16)


def commutator_with_z(gate: SingleQubitGate) -> float:
    """Max-norm of [gate, sigma_z]."""
    g, z = gate.matrix, SIGMA_Z.matrix
    return float(np.max(np.abs(g @ z - z @ g)))


def anticommutator_with_z(gate: SingleQubitGate) -> float:
    """Max-norm of {gate, sigma_z}."""
    g, z = gate.matrix, SIGMA_Z.matrix
    return float(np.max(np.abs(g @ z + z @ g)))


def data_state(a: complex, b: complex) -> StateVector:
    return StateVector([a, b], ("D",))


__all__ = [
    "Family",
    "OperationVariant",
    "PROGRAM_LABELS",
    "OUTPUT_LABELS",
    "anticommutator_with_z",
    "base_program",
    "bell",
    "commutator_with_z",
    "data_state",
    "encode_program",
    "encode_programs",
    "phi0",
    "phi1",
    "restricted_unitaries",
    "restricted_unitary",
]
