"""Time the numba and numpy kernels on the workloads the package runs.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from rateregion import _kernels as k
from rateregion import presets
from rateregion.bounds import compact_bounds
from rateregion.channel import INNER, evaluate_bounds, make_schema, sample_distributions
from rateregion.polytope import default_directions


def _time(fn, repeat):
    fn()  # warm-up (numba compiles here)
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat


def workloads():
    rng = np.random.default_rng(0)
    pmfs = [rng.dirichlet(np.ones(n)) for n in (16, 256, 4096)]
    spec, ch = presets.spec_preset("sw-mac"), presets.channel_preset("mac-xor")
    joints = sample_distributions(make_schema(spec, ch, INNER), ch, 50, 42)
    polys = [evaluate_bounds(compact_bounds(spec), j) for j in joints]
    dirs = default_directions(3)

    def entropy(use):
        return lambda: [k.entropy_bits(p, use_numba=use) for p in pmfs]

    def support(use):
        return lambda: [k.lp_max(d, P.A, P.b, use_numba=use) for P in polys for d in dirs]

    return {"entropy (3 pmfs)": entropy, "support LPs (50 polytopes x 71 dirs)": support}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    print(f"numba available: {k.HAVE_NUMBA}")
    print(f"{'kernel':40s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, make in workloads().items():
        t_np = _time(make(False), args.repeat)
        if k.HAVE_NUMBA:
            t_nb = _time(make(True), args.repeat)
            print(f"{name:40s} {t_np * 1e3:10.3f} {t_nb * 1e3:10.3f} {t_np / t_nb:8.2f}")
        else:
            print(f"{name:40s} {t_np * 1e3:10.3f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
