"""Vectorized numpy kernels. Shot batches are processed along axis 0."""

import numpy as np

_S = 1.0 / np.sqrt(2.0)

# Rows indexed by the 2-bit outcome code: Phi+, Phi-, Psi+, Psi-.
# Columns are the two-qubit basis |00>, |01>, |10>, |11>.
BELL_MATRIX = np.array(
    [
        [_S, 0, 0, _S],
        [_S, 0, 0, -_S],
        [0, _S, _S, 0],
        [0, _S, -_S, 0],
    ],
    dtype=np.complex128,
)


def apply_1q(psi, gate, target, n):
    tensor = psi.reshape((2,) * n)
    tensor = np.tensordot(gate, tensor, axes=([1], [target]))
    return np.moveaxis(tensor, 0, target).reshape(-1)


def bell_sample(data, program, u):
    """Bell-measure each data qubit against the leading qubit of its program.

    Returns the chosen outcome codes, the (S, 4) Born probabilities and the
    renormalized residual program states (S, M/2) for the chosen outcomes.
    """
    shots, dim = program.shape
    half = dim // 2
    joint = data[:, :, None, None] * program.reshape(shots, 1, 2, half)
    branches = np.einsum("kj,sjr->skr", BELL_MATRIX.conj(), joint.reshape(shots, 4, half))
    probs = np.sum(np.abs(branches) ** 2, axis=2)
    cum = np.cumsum(probs, axis=1)
    threshold = u * cum[:, -1]
    outcome = np.sum(cum <= threshold[:, None], axis=1)
    # a threshold sitting on the top edge lands past the last bin
    outcome = np.minimum(outcome, 3)
    chosen = branches[np.arange(shots), outcome]
    chosen = chosen / np.sqrt(probs[np.arange(shots), outcome])[:, None]
    return outcome.astype(np.int64), probs, chosen


def apply_operator(states, ops, index):
    return np.einsum("sij,sj->si", ops[index], states)


def marginals(states, n):
    shots = states.shape[0]
    tensor = states.reshape((shots,) + (2,) * n)
    out = np.empty((shots, n, 2, 2), dtype=np.complex128)
    for q in range(n):
        moved = np.moveaxis(tensor, q + 1, 1).reshape(shots, 2, -1)
        out[:, q] = np.einsum("sir,sjr->sij", moved, moved.conj())
    return out


def fidelity_purity(rho, ref):
    fid = np.einsum("si,sij,sj->s", ref.conj(), rho, ref).real
    pur = np.einsum("sij,sji->s", rho, rho).real
    return fid, pur
