"""Brute-force reference computations, written without the package's kernels.

Everything here works on plain index arithmetic over the computational basis
so that it shares no code path with ``telegate.linalg``.
"""

import itertools
import math

import numpy as np


def bits_of(index, n):
    return tuple((index >> (n - 1 - k)) & 1 for k in range(n))


def index_of(bits):
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def kron_by_hand(lhs, rhs):
    n_l = int(math.log2(len(lhs)))
    n_r = int(math.log2(len(rhs)))
    out = np.zeros(len(lhs) * len(rhs), dtype=complex)
    for bl in itertools.product((0, 1), repeat=n_l):
        for br in itertools.product((0, 1), repeat=n_r):
            out[index_of(bl + br)] = lhs[index_of(bl)] * rhs[index_of(br)]
    return out


def partial_trace_by_hand(rho, n, keep):
    """Sum rho[(k, t), (k', t)] over the traced bits t, basis state by basis state."""
    keep = sorted(keep)
    traced = [q for q in range(n) if q not in keep]
    dim = 2 ** len(keep)
    out = np.zeros((dim, dim), dtype=complex)
    for row_bits in itertools.product((0, 1), repeat=len(keep)):
        for col_bits in itertools.product((0, 1), repeat=len(keep)):
            acc = 0j
            for t_bits in itertools.product((0, 1), repeat=len(traced)):
                r = [0] * n
                c = [0] * n
                for q, b in zip(keep, row_bits):
                    r[q] = b
                for q, b in zip(keep, col_bits):
                    c[q] = b
                for q, b in zip(traced, t_bits):
                    r[q] = c[q] = b
                acc += rho[index_of(r), index_of(c)]
            out[index_of(row_bits), index_of(col_bits)] = acc
    return out


BELL_VECTORS = {
    0: np.array([1, 0, 0, 1]) / math.sqrt(2),
    1: np.array([1, 0, 0, -1]) / math.sqrt(2),
    2: np.array([0, 1, 1, 0]) / math.sqrt(2),
    3: np.array([0, 1, -1, 0]) / math.sqrt(2),
}


def project_leading_pair(psi, n, outcome):
    """<bell|_{01} (x) I |psi>, unnormalized, by explicit summation."""
    rest = n - 2
    out = np.zeros(2 ** rest, dtype=complex)
    for r_bits in itertools.product((0, 1), repeat=rest):
        acc = 0j
        for d, p in itertools.product((0, 1), repeat=2):
            acc += np.conj(BELL_VECTORS[outcome][2 * d + p]) * psi[index_of((d, p) + r_bits)]
        out[index_of(r_bits)] = acc
    return out


def pauli_matrix(c):
    return {
        "I": np.eye(2),
        "X": np.array([[0, 1], [1, 0]]),
        "Y": np.array([[0, -1j], [1j, 0]]),
        "Z": np.array([[1, 0], [0, -1]]),
    }[c]


def word_matrix(word):
    out = np.array([[1.0 + 0j]])
    for c in word:
        out = np.kron(out, pauli_matrix(c))
    return out


ALL_WORDS = ["".join(w) for w in itertools.product("IXYZ", repeat=3)]


def clone_fidelities(state_abc, reference):
    """Fidelity of the reduced B and C states with ``reference``."""
    rho = np.outer(state_abc, state_abc.conj())
    out = []
    for q in (1, 2):
        red = partial_trace_by_hand(rho, 3, [q])
        out.append(np.vdot(reference, red @ reference).real)
    return out


# Clone triples as literally printed, with weight sqrt(1/3) on |000>/|111>.
def literal_phi0():
    v = np.zeros(8, dtype=complex)
    v[0b000] = math.sqrt(1 / 3)
    v[0b101] = v[0b110] = math.sqrt(1 / 6)
    return v


def normalized_phi(which):
    v = np.zeros(8, dtype=complex)
    if which == 0:
        v[0b000] = math.sqrt(2 / 3)
        v[0b101] = v[0b110] = math.sqrt(1 / 6)
    else:
        v[0b111] = math.sqrt(2 / 3)
        v[0b001] = v[0b010] = math.sqrt(1 / 6)
    return v


def expanded_branches(a, b, theta, anticommuting=False):
    """Unnormalized branch vectors from expanding |d>|P_U> in the Bell basis.

    With e = exp(i theta/2): Phi+ -> (a e Phi0 + b e* Phi1)/2,
    Phi- -> (a e Phi0 - b e* Phi1)/2, Psi+ -> (b e Phi0 + a e* Phi1)/2,
    Psi- -> (a e* Phi1 - b e Phi0)/2. The anticommuting array feeds
    sigma_x|d>, i.e. swaps a and b.
    """
    e = np.exp(0.5j * theta)
    f0, f1 = normalized_phi(0), normalized_phi(1)
    if anticommuting:
        a, b = b, a
    return {
        0: (a * e * f0 + b * np.conj(e) * f1) / 2,
        1: (a * e * f0 - b * np.conj(e) * f1) / 2,
        2: (b * e * f0 + a * np.conj(e) * f1) / 2,
        3: (a * np.conj(e) * f1 - b * e * f0) / 2,
    }
