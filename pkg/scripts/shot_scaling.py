"""Median reconstruction error of finite-shot MUB tomography versus shot count.

    python scripts/shot_scaling.py --dims 3 5 7 --seeds 20
"""
import argparse
import statistics

import numpy as np

from fgrt.tomography_sim import ExperimentConfig, run_experiment


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dims", type=int, nargs="+", default=[3, 5])
    parser.add_argument("--shots", type=int, nargs="+", default=[10**3, 10**4, 10**5, 10**6])
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--state", default="pure")
    args = parser.parse_args()

    print(f"{'d':>3} {'shots':>9} {'median TD':>11} {'median F':>10} {'TD*sqrt(N)':>11} {'non-PSD':>8}")
    for d in args.dims:
        for n in args.shots:
            reports = [run_experiment(ExperimentConfig(d=d, shots=n, state=args.state, seed=s))
                       for s in range(args.seeds)]
            td = statistics.median(r.trace_distance for r in reports)
            fid = statistics.median(r.fidelity for r in reports)
            nonpsd = sum(r.min_eigenvalue < 0 for r in reports)
            print(f"{d:>3} {n:>9} {td:>11.3e} {fid:>10.6f} {td * np.sqrt(n):>11.3f} {nonpsd:>5}/{args.seeds}")


if __name__ == "__main__":
    main()
