# -*- coding: utf-8 -*-
"""Command line interface: denoise, localize, sweep, profile."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys
from typing import Optional, Sequence

from .core import read_signal_csv
from .experiments import (
    SweepConfig,
    _choose_tau,
    performance_profile,
    read_records_csv,
    run_ast_pipeline,
    run_lasso_pipeline,
    run_sweep,
)


def _complex_pairs(arr) -> list[list[float]]:
    return [[z.real, z.imag] for z in arr]


def _resolve_tau(spec: str, y) -> float:
    if spec == "auto":
        return _choose_tau(y)
    tau = float(spec)
    if tau <= 0:
        raise SystemExit("--tau must be positive or 'auto'")
    return tau


def _cmd_denoise(args) -> None:
    y = read_signal_csv(args.input)
    tau = _resolve_tau(args.tau, y)
    if args.method == "ast":
        x_hat, freqs, amps, sol = run_ast_pipeline(y, tau)
        diagnostics = {
            "iters": sol.iters,
            "converged": sol.converged,
            "objective": sol.objective,
            "primal_residual": sol.primal_residual,
            "dual_residual": sol.dual_residual,
        }
    else:
        x_hat, freqs, amps, sol = run_lasso_pipeline(y, tau, args.grid)
        diagnostics = {
            "iters": sol.iters,
            "converged": sol.converged,
            "objective": sol.objective,
        }
    result = {
        "method": args.method,
        "tau": tau,
        "n": y.n,
        "x_hat": _complex_pairs(x_hat.samples),
        "frequencies": list(freqs),
        "amplitudes": _complex_pairs(amps),
        "diagnostics": diagnostics,
    }
    with open(args.output, "w") as fh:
        json.dump(result, fh)


def _cmd_localize(args) -> None:
    y = read_signal_csv(args.input)
    tau = _resolve_tau(args.tau, y)
    _, freqs, amps, sol = run_ast_pipeline(y, tau, grid=args.grid)
    with open(args.output, "w") as fh:
        json.dump(
            {
                "tau": tau,
                "grid": args.grid,
                "frequencies": list(freqs),
                "amplitudes": _complex_pairs(amps),
                "converged": sol.converged,
            },
            fh,
        )


def _cmd_sweep(args) -> None:
    with open(args.config) as fh:
        config = SweepConfig.from_json(fh.read())
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    records = run_sweep(config, out_path=args.out, threads=args.threads)
    print(f"wrote {len(records)} records to {args.out}")


def _cmd_profile(args) -> None:
    records = read_records_csv(args.records)
    algorithms = sorted({r.algorithm for r in records})
    profile = performance_profile(records, algorithms)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["algorithm", "beta", "P"])
        for alg in algorithms:
            for beta, p in profile[alg]:
                w.writerow([alg, f"{beta:.12g}", f"{p:.12g}"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linespec", description="Line spectral denoising toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("denoise", help="denoise a sampled signal")
    p.add_argument("--input", required=True, help="CSV of samples (header re,im)")
    p.add_argument("--tau", required=True, help="regularization level or 'auto'")
    p.add_argument("--method", required=True, choices=["ast", "lasso"])
    p.add_argument("--grid", type=int, default=2**15, help="Lasso grid size")
    p.add_argument("--output", required=True, help="result JSON path")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_denoise)

    p = sub.add_parser("localize", help="recover frequencies via the dual polynomial")
    p.add_argument("--input", required=True)
    p.add_argument("--tau", required=True)
    p.add_argument("--grid", type=int, default=2**16)
    p.add_argument("--output", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_localize)

    p = sub.add_parser("sweep", help="run the MSE benchmark sweep")
    p.add_argument("--config", required=True, help="sweep config JSON")
    p.add_argument("--out", required=True, help="records CSV path")
    p.add_argument("--seed", type=int, default=None, help="override config seed")
    p.add_argument("--threads", type=int, default=1, help="worker pool size")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("profile", help="performance profiles from sweep records")
    p.add_argument("--records", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_profile)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    args.func(args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
