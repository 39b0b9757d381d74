"""Compare the numba and numpy kernel backends on the Monte Carlo pipeline.

Run with ``python3 benchmarks/bench_backends.py [--shots N] [--repeat R]``.
Each kernel is timed on identical inputs, then the whole four-kernel
pipeline is timed end to end. Numba compile time is reported separately.
"""

import argparse
import time

import numpy as np

from telegate import _numpy_kernels
from telegate._backend import numba_available
from telegate.processor import PROCESSOR_CORRECTION_OPS
from telegate.sampling import make_rng, random_angles, random_data_states
from telegate.states import Family, encode_programs, restricted_unitaries


def inputs(shots, seed=0):
    rng = make_rng(seed)
    data = random_data_states(rng, shots)
    angles = random_angles(rng, shots)
    return data, angles, encode_programs(Family.COMMUTING, angles), rng.random(shots)


def pipeline(mod, data, angles, programs, u):
    outcomes, _, residual = mod.bell_sample(data, programs, u)
    corrected = mod.apply_operator(residual, PROCESSOR_CORRECTION_OPS, outcomes)
    rdm = mod.marginals(corrected, 3)
    ref = np.einsum("sij,sj->si", restricted_unitaries(Family.COMMUTING, angles), data)
    return outcomes, mod.fidelity_purity(np.ascontiguousarray(rdm[:, 1]), ref)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--shots", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    data, angles, programs, u = inputs(args.shots)
    backends = {"numpy": _numpy_kernels}
    if numba_available():
        from telegate import _numba_kernels

        t0 = time.perf_counter()
        pipeline(_numba_kernels, data[:8], angles[:8], programs[:8], u[:8])
        print(f"numba first call (compile or cache load): {time.perf_counter() - t0:.3f} s")
        backends["numba"] = _numba_kernels
    else:
        print("numba not installed; timing numpy only")

    outcomes, _, residual = _numpy_kernels.bell_sample(data, programs, u)
    corrected = _numpy_kernels.apply_operator(residual, PROCESSOR_CORRECTION_OPS, outcomes)
    rdm = np.ascontiguousarray(_numpy_kernels.marginals(corrected, 3)[:, 1])
    ref = data

    cases = {
        "bell_sample": lambda m: m.bell_sample(data, programs, u),
        "apply_operator": lambda m: m.apply_operator(residual, PROCESSOR_CORRECTION_OPS, outcomes),
        "marginals": lambda m: m.marginals(corrected, 3),
        "fidelity_purity": lambda m: m.fidelity_purity(rdm, ref),
        "pipeline": lambda m: pipeline(m, data, angles, programs, u),
    }
    names = list(backends)
    print(f"{args.shots} shots, best of {args.repeat}")
    print(f"{'kernel':<16}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases.items():
        times = [best_of(lambda: fn(backends[n]), args.repeat) for n in names]
        row = f"{label:<16}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)

    if len(names) > 1:
        a = pipeline(backends["numpy"], data, angles, programs, u)
        b = pipeline(backends["numba"], data, angles, programs, u)
        same = np.array_equal(a[0], b[0])
        diff = max(np.max(np.abs(x - y)) for x, y in zip(a[1], b[1]))
        print(f"backends agree: outcomes identical={same}, max fidelity/purity difference {diff:.1e}")


if __name__ == "__main__":
    main()
