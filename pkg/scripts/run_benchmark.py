#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Run the MSE benchmark sweep and emit records plus performance profiles.

Example:
    python scripts/run_benchmark.py --n 128 --k-divisor 16 \
        --snr 5 10 20 --trials 10 --out records.csv --profile profile.csv
"""

import argparse
import csv

from linespec.experiments import SweepConfig, performance_profile, run_sweep


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="+", default=[64, 128])
    parser.add_argument("--k-divisor", type=int, nargs="+", default=[8, 16])
    parser.add_argument("--snr", type=float, nargs="+", default=[-10, -5, 0, 5, 10, 15, 20])
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--lasso-N", type=int, nargs="+", default=[2**15])
    parser.add_argument(
        "--algorithms", nargs="+",
        default=["ast", "lasso", "music", "pencil", "cadzow"],
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out", required=True, help="records CSV path")
    parser.add_argument("--profile", help="optional performance-profile CSV path")
    args = parser.parse_args()

    config = SweepConfig(
        n_values=tuple(args.n),
        k_divisors=tuple(args.k_divisor),
        snr_db=tuple(args.snr),
        trials=args.trials,
        lasso_N=tuple(args.lasso_N),
        seed=args.seed,
        algorithms=tuple(args.algorithms),
    )
    records = run_sweep(config, out_path=args.out, threads=args.threads)
    print(f"wrote {len(records)} records to {args.out}")

    if args.profile:
        algorithms = sorted({r.algorithm for r in records})
        profile = performance_profile(records, algorithms)
        with open(args.profile, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["algorithm", "beta", "P"])
            for alg in algorithms:
                for beta, p in profile[alg]:
                    writer.writerow([alg, f"{beta:.12g}", f"{p:.12g}"])
        print(f"wrote performance profiles to {args.profile}")


if __name__ == "__main__":
    main()
