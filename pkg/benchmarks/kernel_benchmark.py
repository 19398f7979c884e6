"""Compare the compiled gate kernels against the numpy fallback.

Usage: python benchmarks/kernel_benchmark.py [--width 18] [--repeats 5]

Two views: raw per-kernel throughput on a wide state, and the end-to-end
exact distillation parity (the eigen-ensemble hot path).
"""

import argparse
import time

import numpy as np

from umtrace import (NoiseModel, ansatz_state, backends, build,
                     default_observable, depolarize_state, run_exact)
from umtrace.backends import available_backends, get_backend, use

H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def random_state(w, seed=0):
    rng = np.random.default_rng(seed)
    vec = rng.normal(size=1 << w) + 1j * rng.normal(size=1 << w)
    return (vec / np.linalg.norm(vec)).astype(complex)


def kernel_benchmarks(width, repeats):
    state = random_state(width)
    cases = {
        "apply_1q": lambda impl, s: impl.apply_1q(s, width, width // 2, H),
        "apply_phase": lambda impl, s: impl.apply_phase(s, width, 1, -1j),
        "apply_cnot": lambda impl, s: impl.apply_cnot(s, width, 0, width - 1),
        "apply_cswap": lambda impl, s: impl.apply_cswap(
            s, width, 0, width // 2, width - 1),
        "apply_c1q": lambda impl, s: impl.apply_c1q(s, width, 0, width - 2, Y),
    }
    names = available_backends()
    print(f"\nraw kernels on a {width}-qubit state "
          f"({1 << width:,} amplitudes), best of {repeats}:")
    header = f"{'kernel':<14}" + "".join(f"{n:>14}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, call in cases.items():
        times = []
        for name in names:
            impl = get_backend(name)
            work = state.copy()
            times.append(time_call(lambda: call(impl, work), repeats))
        row = f"{label:<14}" + "".join(f"{t * 1e3:>12.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>9.1f}x"
        print(row)


def pipeline_benchmark(repeats):
    rho = depolarize_state(ansatz_state(), 0.4)
    circuit = build(5, 2, 2, 1)
    noise = NoiseModel(layer_noise=0.4)
    inputs = [rho] * 5
    names = available_backends()
    print("\nexact distillation denominator (m=5, n=2, s=2; "
          "1024-term eigen-ensemble):")
    times = {}
    for name in names:
        previous = use(name)
        try:
            value = run_exact(circuit, inputs, noise)
            times[name] = time_call(
                lambda: run_exact(circuit, inputs, noise), repeats)
        finally:
            use(previous)
        print(f"  {name:>9}: {times[name] * 1e3:8.1f} ms  (parity {value:.6f})")
    if len(times) == 2:
        print(f"  speedup: {times['numpy'] / times['compiled']:.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--width", type=int, default=18)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    print(f"available backends: {available_backends()} "
          f"(active: {backends.active_name})")
    kernel_benchmarks(args.width, args.repeats)
    pipeline_benchmark(args.repeats)


if __name__ == "__main__":
    main()
