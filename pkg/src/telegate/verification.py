"""Invariant suite behind ``telegate verify``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import baselines, processor
from .linalg import (
    BellOutcome,
    SingleQubitGate,
    StateVector,
    apply_single_qubit,
    bell_branches,
    partial_trace,
    purity,
)
from .processor import CLONE_FIDELITY, CLONE_PURITY, DataState
from .sampling import random_angles, random_data_states, random_unitaries
from .states import (
    Family,
    OperationVariant,
    anticommutator_with_z,
    commutator_with_z,
    phi0,
    phi1,
    restricted_unitary,
)

EXACT_TOL = 1e-12
PSD_TOL = 1e-10


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "tolerance": self.tolerance, "passed": self.passed}


def _max_dev(name, deviations, tol=EXACT_TOL) -> Check:
    worst = float(np.max(deviations)) if len(deviations) else 0.0
    return Check(name, worst, tol, worst < tol)


def _random_states(rng, count, n):
    g = rng.standard_normal((count, 2 ** n)) + 1j * rng.standard_normal((count, 2 ** n))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _success_records(rng, draws):
    out = []
    for family in Family:
        data = random_data_states(rng, draws)
        angles = random_angles(rng, draws)
        for amps, angle in zip(data, angles):
            table = processor.branch_table(DataState.from_array(amps), OperationVariant(family, angle))
            out.append(table)
    return out


def run_checks(rng, draws: int = 200) -> list[Check]:
    checks = []

    # linear algebra
    states = _random_states(rng, 1000, 3)
    gates = random_unitaries(rng, 1000)
    dev = []
    for k, (psi, g) in enumerate(zip(states, gates)):
        out = apply_single_qubit(StateVector(psi), SingleQubitGate(g), k % 3)
        dev.append(abs(np.linalg.norm(out.amplitudes) - 1.0))
    checks.append(_max_dev("unitary application preserves norm", dev))

    dev, herm, psd = [], [], []
    for psi in _random_states(rng, 200, 4):
        sv = StateVector(psi)
        dev.append(abs(sum(p for _, p, _ in bell_branches(sv, 0, 2)) - 1.0))
        rho = partial_trace(sv.density(), [1, 3]).matrix
        herm.append(np.max(np.abs(rho - rho.conj().T)))
        psd.append(max(0.0, -np.min(np.linalg.eigvalsh(rho))))
    checks.append(_max_dev("Bell outcome probabilities sum to 1", dev))
    checks.append(_max_dev("partial trace is Hermitian", herm))
    checks.append(_max_dev("partial trace is positive semidefinite", psd, PSD_TOL))

    # program states
    angles = random_angles(rng, 100)
    checks.append(_max_dev(
        "commuting family commutes with sigma_z",
        [commutator_with_z(restricted_unitary(OperationVariant(Family.COMMUTING, a))) for a in angles],
    ))
    checks.append(_max_dev(
        "anticommuting family anticommutes with sigma_z",
        [anticommutator_with_z(restricted_unitary(OperationVariant(Family.ANTICOMMUTING, a))) for a in angles],
    ))
    p0, p1 = phi0().amplitudes, phi1().amplitudes
    checks.append(_max_dev(
        "Phi0, Phi1 orthonormal",
        [abs(np.vdot(p0, p0) - 1), abs(np.vdot(p1, p1) - 1), abs(np.vdot(p0, p1))],
    ))

    # processor
    tables = _success_records(rng, draws)
    records = [r for table in tables for r in table]
    wins = [r for r in records if r.success]
    checks.append(_max_dev("branch probabilities = 1/4", [abs(r.branch_probability - 0.25) for r in records]))
    checks.append(_max_dev(
        "exact success probability = 1/2",
        [abs(sum(r.branch_probability for r in t if r.success) - 0.5) for t in tables],
    ))
    checks.append(_max_dev(
        "fidelity=5/6 on success branches",
        [max(abs(r.fidelity_B - CLONE_FIDELITY), abs(r.fidelity_C - CLONE_FIDELITY)) for r in wins],
    ))
    checks.append(_max_dev(
        "purity=13/18",
        [max(abs(purity(r.rho_B) - CLONE_PURITY), abs(purity(r.rho_C) - CLONE_PURITY)) for r in wins],
    ))
    checks.append(_max_dev("rho_B = rho_C", [np.max(np.abs(r.rho_B.matrix - r.rho_C.matrix)) for r in wins]))
    closed = []
    for r in wins:
        ref = r.reference.amplitudes
        target = (2 / 3) * np.outer(ref, ref.conj()) + np.eye(2) / 6
        closed.append(np.max(np.abs(r.rho_B.matrix - target)))
    checks.append(_max_dev("rho_B = (2/3)|Ud><Ud| + I/6", closed))
    overlaps = []
    for t in tables:
        plus, minus = t[BellOutcome.PHI_PLUS], t[BellOutcome.PHI_MINUS]
        overlaps.append(abs(abs(plus.post_state.overlap(minus.post_state)) - 1.0))
    checks.append(_max_dev("Phi- branch corrected onto Phi+ branch", overlaps))

    # baselines
    gates = random_unitaries(rng, 100)
    checks.append(_max_dev(
        "transpose identity (I x U)|Phi> = (U^T x I)|Phi>",
        [baselines.transpose_identity_check(SingleQubitGate(g)) for g in gates],
    ))
    nc_dev = []
    for g, amps in zip(gates, random_data_states(rng, 100)):
        d = DataState.from_array(amps)
        res = baselines.nc_processor(d, SingleQubitGate(g), outcome=BellOutcome.PHI_PLUS)
        nc_dev.append(abs(abs(np.vdot(g @ amps, res.out_state.amplitudes)) ** 2 - 1.0))
    checks.append(_max_dev("one-output processor fidelity = 1 on success", nc_dev))
    tc = []
    for amps in random_data_states(rng, draws):
        sv = StateVector(amps)
        for outcome in BellOutcome:
            res = baselines.telecloning_1to2(sv, outcome=outcome)
            for rho in (res.rho_B, res.rho_C):
                tc.append(abs(np.vdot(amps, rho.matrix @ amps).real - CLONE_FIDELITY))
    checks.append(_max_dev("telecloning corrects every outcome to 5/6", tc))
    two, seq = baselines.resource_comparison()
    diff = seq.difference(two)
    miss = abs(diff["ebits"] - 1) + abs(diff["classical_bits"] - 2)
    checks.append(Check("ledger difference = +1 ebit, +2 classical bits", float(miss), 0.5, miss == 0))
    return checks
