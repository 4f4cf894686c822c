"""Compare the compiled and pure-Python master-equation backends."""
import argparse
import time

from lzdephase.experiments import RunSpec, evolve_rho
from lzdephase.master import BACKENDS
from lzdephase.model import Constant, ModelParams
from lzdephase.odeint import IntegratorConfig


def bench(backend, eps, S, repeats):
    p = ModelParams(1.0, Constant(1.0))
    spec = RunSpec(p, eps, -S, S, IntegratorConfig(), backend=backend)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        traj = evolve_rho(spec)
        best = min(best, time.perf_counter() - t0)
    return best, (traj.n_accepted, traj.n_rejected, traj.n_evals)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--eps", type=float, default=0.01)
    ap.add_argument("--S", type=float, default=20.0)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    results = {}
    for name in sorted(BACKENDS) + ["reference"]:
        reps = args.repeats if name == "cython" else 1
        results[name], counts = bench(name, args.eps, args.S, reps)
        print(f"{name:10s} {results[name]:9.4f} s  accepted/rejected/evals={counts}")
    if "cython" in results:
        print(f"speedup python/cython: {results['python'] / results['cython']:.1f}x")


if __name__ == "__main__":
    main()
