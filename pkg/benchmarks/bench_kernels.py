"""Time the compiled series kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported directly, so the comparison does not depend on
``HK_PURE_PYTHON``.  Results agree to a few ulps; the table reports the
largest relative difference seen per kernel.
"""
import argparse
import timeit

import numpy as np

from hkfam import _core_py

try:
    from hkfam import _core
except ImportError:
    _core = None

RTOL, ATOL, MAX_TERMS = 2.0 ** -53, 1e-300, 500

rng = np.random.default_rng(7)
CASES = {
    "hyp1f1_series": [(a, b, x, RTOL, ATOL, MAX_TERMS)
                      for a, b, x in zip(rng.uniform(-3, 3, 200), rng.uniform(0.5, 4, 200),
                                         rng.uniform(-25, 25, 200))],
    "hyp0f2_series": [(1.5, 2.0, z, RTOL, ATOL, MAX_TERMS) for z in rng.uniform(0, 100, 200)],
    "eps_series_direct": [(int(n), x, RTOL, ATOL, MAX_TERMS)
                          for n, x in zip(rng.integers(1, 8, 200), rng.uniform(0, 20, 200))],
    "eps_series_kummer": [(int(n), x, RTOL, ATOL, MAX_TERMS)
                          for n, x in zip(rng.integers(1, 8, 200), rng.uniform(-30, 0, 200))],
    "k0_series": [(x, RTOL, ATOL, MAX_TERMS) for x in rng.uniform(0.01, 10, 200)],
    "t_series": [(w, s, RTOL, 0.0, MAX_TERMS)
                 for w, s in zip(rng.uniform(0.1, 3, 200), rng.uniform(0.1, 5, 200))],
}


def run(mod, name):
    fn = getattr(mod, name)
    return [fn(*args)[0] for args in CASES[name]]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ns = ap.parse_args()
    backends = [("python", _core_py)] + ([("compiled", _core)] if _core else [])
    print(f"{'kernel':20s} " + " ".join(f"{b:>12s}" for b, _ in backends)
          + f" {'speedup':>8s} {'max rel diff':>13s}")
    for name in CASES:
        times = []
        for _, mod in backends:
            t = min(timeit.repeat(lambda: run(mod, name), number=1, repeat=ns.repeat))
            times.append(t / len(CASES[name]))
        line = f"{name:20s} " + " ".join(f"{t * 1e6:10.2f}us" for t in times)
        if _core:
            a = np.array(run(_core_py, name))
            b = np.array(run(_core, name))
            diff = np.max(np.abs(a - b) / np.maximum(np.abs(a), 1e-300))
            line += f" {times[0] / times[1]:7.1f}x {diff:13.2e}"
        print(line)
    if not _core:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
