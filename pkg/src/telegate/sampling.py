"""Seeded random sources.

Every stochastic path draws from ``numpy.random.Generator`` over the
counter-based Philox4x64-10 bit generator, so a seed pins the stream
independently of the numpy default generator.
"""

import numpy as np
from scipy.stats import unitary_group

RNG_ALGORITHM = "numpy.random.Philox (Philox4x64-10)"


def make_rng(seed):
    return np.random.Generator(np.random.Philox(seed))


def random_data_states(rng, size):
    """Haar-random qubit states as an (size, 2) amplitude array."""
    g = rng.standard_normal((size, 4))
    amps = g[:, 0::2] + 1j * g[:, 1::2]
    return amps / np.linalg.norm(amps, axis=1, keepdims=True)


def random_angles(rng, size):
    return rng.uniform(0.0, 2.0 * np.pi, size)


def random_unitaries(rng, size):
    """Haar-random 2x2 unitaries, shape (size, 2, 2)."""
    return unitary_group.rvs(2, size=size, random_state=rng).reshape(size, 2, 2)
