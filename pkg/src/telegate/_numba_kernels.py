"""numba-compiled loop kernels; same signatures and results as the numpy ones."""

import numpy as np
from numba import njit

from ._numpy_kernels import BELL_MATRIX

_BELL = BELL_MATRIX.copy()


@njit(cache=True)
def apply_1q(psi, gate, target, n):
    out = np.empty_like(psi)
    stride = 1 << (n - 1 - target)
    for i in range(psi.shape[0]):
        if i & stride:
            continue
        j = i | stride
        x0 = psi[i]
        x1 = psi[j]
        out[i] = gate[0, 0] * x0 + gate[0, 1] * x1
        out[j] = gate[1, 0] * x0 + gate[1, 1] * x1
    return out


@njit(cache=True)
def bell_sample(data, program, u):
    shots, dim = program.shape
    half = dim // 2
    outcome = np.empty(shots, dtype=np.int64)
    probs = np.zeros((shots, 4))
    chosen = np.empty((shots, half), dtype=np.complex128)
    branch = np.empty((4, half), dtype=np.complex128)
    for s in range(shots):
        for k in range(4):
            for r in range(half):
                acc = 0j
                for d in range(2):
                    for p in range(2):
                        coeff = _BELL[k, 2 * d + p]
                        if coeff != 0:
                            acc += np.conj(coeff) * data[s, d] * program[s, p * half + r]
                branch[k, r] = acc
                probs[s, k] += acc.real * acc.real + acc.imag * acc.imag
        total = probs[s, 0] + probs[s, 1] + probs[s, 2] + probs[s, 3]
        threshold = u[s] * total
        cum = 0.0
        pick = 3
        for k in range(4):
            cum += probs[s, k]
            if threshold < cum:
                pick = k
                break
        outcome[s] = pick
        norm = np.sqrt(probs[s, pick])
        for r in range(half):
            chosen[s, r] = branch[pick, r] / norm
    return outcome, probs, chosen


@njit(cache=True)
def apply_operator(states, ops, index):
    shots, dim = states.shape
    out = np.zeros_like(states)
    for s in range(shots):
        op = ops[index[s]]
        for i in range(dim):
            acc = 0j
            for j in range(dim):
                acc += op[i, j] * states[s, j]
            out[s, i] = acc
    return out


@njit(cache=True)
def marginals(states, n):
    shots, dim = states.shape
    out = np.zeros((shots, n, 2, 2), dtype=np.complex128)
    for s in range(shots):
        for i in range(dim):
            amp = states[s, i]
            for q in range(n):
                mask = 1 << (n - 1 - q)
                x = 1 if i & mask else 0
                out[s, q, x, x] += amp * np.conj(amp)
                if x == 0:
                    other = states[s, i | mask]
                    cross = amp * np.conj(other)
                    out[s, q, 0, 1] += cross
                    out[s, q, 1, 0] += np.conj(cross)
    return out


@njit(cache=True)
def fidelity_purity(rho, ref):
    shots = rho.shape[0]
    fid = np.empty(shots)
    pur = np.empty(shots)
    for s in range(shots):
        f = 0j
        p = 0.0
        for i in range(2):
            for j in range(2):
                f += np.conj(ref[s, i]) * rho[s, i, j] * ref[s, j]
                p += (rho[s, i, j] * rho[s, j, i]).real
        fid[s] = f.real
        pur[s] = p
    return fid, pur
