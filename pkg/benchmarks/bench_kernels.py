"""Benchmark the compiled kernels against the pure-python fallback.

Times the three hot kernels (entropy accumulation, TV distance, and the
simplex pivot loop via full LP solves) on workloads shaped like the
certificate suites.  Run with ``python benchmarks/bench_kernels.py``;
pass ``--repeat N`` to stretch the measurement.
"""

import argparse
import time

import numpy as np

from nsotkit._kernels import _fallback

try:
    from nsotkit._kernels import _core
except ImportError:
    _core = None

from nsotkit.channels import binary_adder_mac


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_entropy(backend, repeat):
    rng = np.random.default_rng(0)
    tensors = [np.ascontiguousarray(rng.dirichlet(np.ones(64))) for _ in range(2000)]

    def run():
        for t in tensors:
            backend.entropy_bits(t)

    return time_call(run, repeat)


def bench_tv(backend, repeat):
    rng = np.random.default_rng(1)
    pairs = [
        (
            np.ascontiguousarray(rng.dirichlet(np.ones(48))),
            np.ascontiguousarray(rng.dirichlet(np.ones(48))),
        )
        for _ in range(2000)
    ]

    def run():
        for p, q in pairs:
            backend.tv_distance_flat(p, q)

    return time_call(run, repeat)


def bench_simplex(backend_name, repeat):
    """Full sign-pattern distinguishability search (32 LP solves over the
    96-variable adder-shaped NS system) on the selected backend."""
    import importlib
    import os

    os.environ["NSOTKIT_PURE_PYTHON"] = "1" if backend_name == "python" else ""
    import nsotkit._kernels as kernels
    import nsotkit.lp as lp

    importlib.reload(kernels)
    importlib.reload(lp)
    # max_distinguishability resolves solve_lp through nsotkit.lp at call
    # time only if we re-import polytope too
    import nsotkit.polytope as polytope

    importlib.reload(polytope)

    shape = polytope.PartyShape("tripartite_mac", (2, 2, 2), (2, 2, 3))
    channel = binary_adder_mac()

    def run():
        polytope.max_distinguishability(shape, channel, ((0, 0), (1, 1)))

    return time_call(run, repeat)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("python", _fallback)]
    if _core is not None:
        backends.insert(0, ("cython", _core))
    else:
        print("compiled extension not available; benchmarking fallback only")

    print(f"{'kernel':<28}", *(f"{name:>12}" for name, _ in backends), sep="")
    rows = [
        ("entropy_bits (2000x64)", bench_entropy),
        ("tv_distance_flat (2000x48)", bench_tv),
    ]
    for label, bench in rows:
        times = [bench(backend, args.repeat) for _, backend in backends]
        print(f"{label:<28}", *(f"{t * 1e3:>10.2f}ms" for t in times), sep="")

    times = [bench_simplex(name, args.repeat) for name, _ in backends]
    print(f"{'simplex search (32 LPs)':<28}", *(f"{t * 1e3:>10.2f}ms" for t in times), sep="")


if __name__ == "__main__":
    main()
