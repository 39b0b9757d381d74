"""Dense state-vector algebra for registers of at most six qubits.

Bit convention: register position 0 is the most significant bit of the
amplitude index, so ``|abc>`` lives at index ``int("abc", 2)`` and kets can be
transcribed left to right.
"""

from __future__ import annotations

import enum
import string
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from . import kernels

MAX_QUBITS = 6
NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
IMPOSSIBLE_NORM = 1e-14


class RegisterSizeError(ValueError):
    """A register would exceed ``MAX_QUBITS`` or has a non power-of-two size."""


class ImpossibleBranchError(ValueError):
    """A forced measurement outcome has (numerically) zero probability."""


class BellOutcome(enum.IntEnum):
    """Result of a Bell-basis measurement, valued by its 2-bit classical code.

    The low bit is the phase bit (a sigma_z correction), the high bit the
    flip bit (the |Psi> pair).
    """

    PHI_PLUS = 0b00
    PHI_MINUS = 0b01
    PSI_PLUS = 0b10
    PSI_MINUS = 0b11

    @property
    def bits(self) -> str:
        return format(int(self), "02b")

    @property
    def phase_bit(self) -> int:
        return int(self) & 1

    @property
    def flip_bit(self) -> int:
        return int(self) >> 1

    @property
    def label(self) -> str:
        return {0: "Phi+", 1: "Phi-", 2: "Psi+", 3: "Psi-"}[int(self)]

    @classmethod
    def parse(cls, text: str) -> BellOutcome:
        """Accept ``Phi+``, ``PhiPlus``, ``PHI_PLUS`` or the 2-bit code ``00``."""
        key = text.strip().lower().replace("_", "").replace("+", "plus").replace("-", "minus")
        for member in cls:
            if key in (member.name.replace("_", "").lower(), member.bits):
                return member
        raise ValueError(f"unknown Bell outcome {text!r}")


def _num_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 1 or 1 << n != dim:
        raise RegisterSizeError(f"dimension {dim} is not a power of two")
    if n > MAX_QUBITS:
        raise RegisterSizeError(f"{n} qubits exceeds the {MAX_QUBITS}-qubit limit")
    return n


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"q{i}" for i in range(n))


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state over an ordered, labelled register."""

    amplitudes: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        amps = _frozen(np.asarray(self.amplitudes).reshape(-1))
        n = _num_qubits(amps.size)
        labels = tuple(self.labels) or _default_labels(n)
        if len(labels) != n:
            raise ValueError(f"{len(labels)} labels for a {n}-qubit register")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def normalized(cls, amplitudes, labels=()) -> StateVector:
        """Build a state, rescaling the amplitudes to unit norm."""
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0 or not np.isfinite(norm):
            raise ValueError("cannot normalize a zero or non-finite vector")
        return cls(amps / norm, labels)

    @classmethod
    def basis(cls, bits: str, labels=()) -> StateVector:
        amps = np.zeros(1 << len(bits), dtype=np.complex128)
        amps[int(bits, 2) if bits else 0] = 1.0
        return cls(amps, labels)

    @property
    def num_qubits(self) -> int:
        return len(self.labels)

    def amplitude(self, bits: str) -> complex:
        if len(bits) != self.num_qubits:
            raise ValueError(f"expected {self.num_qubits} bits, got {bits!r}")
        return complex(self.amplitudes[int(bits, 2) if bits else 0])

    def overlap(self, other: StateVector) -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def equal_up_to_phase(self, other: StateVector, atol: float = NORM_TOL) -> bool:
        if self.amplitudes.shape != other.amplitudes.shape:
            return False
        return abs(abs(self.overlap(other)) - 1.0) < atol

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.labels)

    def relabel(self, labels) -> StateVector:
        return StateVector(self.amplitudes, tuple(labels))

    def __repr__(self):
        return f"StateVector({''.join(self.labels)}, {np.round(self.amplitudes, 6).tolist()})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator."""

    matrix: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        mat = _frozen(self.matrix)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        n = _num_qubits(mat.shape[0])
        labels = tuple(self.labels) or _default_labels(n)
        if len(labels) != n:
            raise ValueError(f"{len(labels)} labels for a {n}-qubit register")
        if not np.all(np.isfinite(mat)):
            raise ValueError("entries must be finite")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        trace = np.trace(mat).real
        if abs(trace - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace is {trace!r}, expected 1")
        if np.min(np.linalg.eigvalsh(mat)) < -PSD_TOL:
            raise ValueError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "labels", labels)

    @property
    def num_qubits(self) -> int:
        return len(self.labels)


@dataclass(frozen=True, eq=False)
class SingleQubitGate:
    """2x2 unitary."""

    matrix: np.ndarray
    name: str = ""

    def __post_init__(self):
        mat = _frozen(self.matrix)
        if mat.shape != (2, 2):
            raise ValueError(f"single-qubit gate must be 2x2, got {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("gate entries must be finite")
        if np.max(np.abs(mat.conj().T @ mat - np.eye(2))) > NORM_TOL:
            raise ValueError("gate is not unitary")
        object.__setattr__(self, "matrix", mat)

    @property
    def transpose(self) -> SingleQubitGate:
        return SingleQubitGate(self.matrix.T, f"{self.name}^T")

    @property
    def dagger(self) -> SingleQubitGate:
        return SingleQubitGate(self.matrix.conj().T, f"{self.name}^dag")

    def __matmul__(self, other: SingleQubitGate) -> SingleQubitGate:
        return SingleQubitGate(self.matrix @ other.matrix, f"{self.name}{other.name}")


PAULI = {
    "I": SingleQubitGate(np.eye(2), "I"),
    "X": SingleQubitGate([[0, 1], [1, 0]], "X"),
    "Y": SingleQubitGate([[0, -1j], [1j, 0]], "Y"),
    "Z": SingleQubitGate([[1, 0], [0, -1]], "Z"),
}
IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z = (PAULI[k] for k in "IXYZ")


def pauli_word_matrix(word: str) -> np.ndarray:
    """Dense Kronecker product of a Pauli word such as ``"ZZZ"``."""
    return reduce(np.kron, (PAULI[c].matrix for c in word))


def tensor(lhs: StateVector, rhs: StateVector) -> StateVector:
    n = lhs.num_qubits + rhs.num_qubits
    if n > MAX_QUBITS:
        raise RegisterSizeError(f"{n} qubits exceeds the {MAX_QUBITS}-qubit limit")
    return StateVector(np.kron(lhs.amplitudes, rhs.amplitudes), lhs.labels + rhs.labels)


def _position(state: StateVector, qubit) -> int:
    if isinstance(qubit, str):
        try:
            return state.labels.index(qubit)
        except ValueError:
            raise IndexError(f"no qubit labelled {qubit!r} in {state.labels}") from None
    qubit = int(qubit)
    if not 0 <= qubit < state.num_qubits:
        raise IndexError(f"qubit {qubit} out of range for {state.num_qubits} qubits")
    return qubit


def apply_single_qubit(state: StateVector, gate: SingleQubitGate, target) -> StateVector:
    """Apply ``gate`` to the qubit at position (or label) ``target``."""
    pos = _position(state, target)
    out = kernels.apply_1q(
        np.array(state.amplitudes), np.array(gate.matrix), pos, state.num_qubits
    )
    return StateVector(out, state.labels)


def apply_pauli_word(state: StateVector, word: str) -> StateVector:
    if len(word) != state.num_qubits:
        raise ValueError(f"Pauli word {word!r} does not match {state.num_qubits} qubits")
    for pos, c in enumerate(word):
        if c != "I":
            state = apply_single_qubit(state, PAULI[c], pos)
    return state


def bell_branches(state: StateVector, q1, q2) -> list[tuple[BellOutcome, float, np.ndarray]]:
    """Exact Bell-basis branch table for qubits ``(q1, q2)``.

    Each entry holds the outcome, its Born probability and the unnormalized
    projected amplitudes of the remaining qubits (in register order).
    """
    i, j = _position(state, q1), _position(state, q2)
    if i == j:
        raise IndexError("Bell measurement needs two distinct qubits")
    n = state.num_qubits
    tensor_ = np.moveaxis(state.amplitudes.reshape((2,) * n), (i, j), (0, 1)).reshape(4, -1)
    projected = kernels.BELL_MATRIX.conj() @ tensor_
    probs = np.sum(np.abs(projected) ** 2, axis=1)
    return [(BellOutcome(k), float(probs[k]), projected[k]) for k in range(4)]


def bell_measure(state: StateVector, q1, q2, rng=None, outcome=None):
    """Projective Bell measurement on ``(q1, q2)``.

    Exactly one of ``rng`` (a ``numpy.random.Generator``; one uniform draw is
    consumed) and ``outcome`` (forced branch) selects the result. Returns
    ``(outcome, probability, post_state)`` where ``post_state`` is the
    renormalized state of the other qubits.
    """
    if (rng is None) == (outcome is None):
        raise ValueError("pass exactly one of rng or outcome")
    table = bell_branches(state, q1, q2)
    if outcome is None:
        probs = np.array([p for _, p, _ in table])
        cum = np.cumsum(probs)
        k = min(int(np.searchsorted(cum, rng.random() * cum[-1], side="right")), 3)
    else:
        k = int(BellOutcome(outcome))
    result, prob, residual = table[k]
    if np.sqrt(prob) < IMPOSSIBLE_NORM:
        raise ImpossibleBranchError(f"outcome {result.label} has zero probability")
    i, j = _position(state, q1), _position(state, q2)
    rest = tuple(lab for pos, lab in enumerate(state.labels) if pos not in (i, j))
    return result, prob, StateVector(residual / np.sqrt(prob), rest)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduce ``rho`` onto the qubit positions (or labels) in ``keep``.

    Kept qubits stay in register order.
    """
    n = rho.num_qubits
    positions = set()
    for q in keep:
        if isinstance(q, str):
            if q not in rho.labels:
                raise IndexError(f"no qubit labelled {q!r}")
            positions.add(rho.labels.index(q))
        else:
            if not 0 <= q < n:
                raise IndexError(f"qubit {q} out of range for {n} qubits")
            positions.add(int(q))
    if not positions:
        raise ValueError("keep must name at least one qubit")
    kept = sorted(positions)
    letters = string.ascii_letters
    rows = [letters[i] for i in range(n)]
    cols = [letters[n + i] if i in positions else letters[i] for i in range(n)]
    out = "".join(rows[i] for i in kept) + "".join(cols[i] for i in kept)
    subscripts = f"{''.join(rows)}{''.join(cols)}->{out}"
    reduced = np.einsum(subscripts, rho.matrix.reshape((2,) * (2 * n)))
    dim = 1 << len(kept)
    return DensityMatrix(reduced.reshape(dim, dim), tuple(rho.labels[i] for i in kept))


def fidelity(reference: StateVector, rho: DensityMatrix) -> float:
    """<ref|rho|ref> for a one-qubit pure reference, clamped to [0, 1]."""
    if reference.num_qubits != 1 or rho.num_qubits != 1:
        raise ValueError("fidelity is defined here for one-qubit objects only")
    value = np.vdot(reference.amplitudes, rho.matrix @ reference.amplitudes).real
    return float(min(max(value, 0.0), 1.0))


def purity(rho: DensityMatrix) -> float:
    return float(np.trace(rho.matrix @ rho.matrix).real)


def entanglement_entropy(state: StateVector, keep) -> float:
    """Von Neumann entropy (bits) of the reduced state on ``keep``."""
    evals = np.linalg.eigvalsh(partial_trace(state.density(), keep).matrix)
    evals = evals[evals > 1e-15]
    return float(-np.sum(evals * np.log2(evals)))
