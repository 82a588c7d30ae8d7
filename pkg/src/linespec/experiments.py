# -*- coding: utf-8 -*-
"""Instance generation, the regularization rule, and MSE/SNR sweeps.

Sweeps mirror the benchmark protocol: random well-separated frequencies,
chi-squared amplitudes with random phase, white complex Gaussian noise at
a prescribed SNR, a noise-variance estimate feeding the regularization
rule for the convex solvers, the true model order for the baselines, and
a debiasing refit before the MSE is recorded.
"""

from __future__ import annotations

import concurrent.futures
import csv
import dataclasses
import json
import math
import time
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .admm import AdmmOptions, solve_ast
from .baselines import cadzow, estimate_noise_variance, matrix_pencil, music
from .core import ComplexSignal, LineSpectralModel, synthesize, _as_complex_vector
from .dual_poly import DualPolynomial, debias, localize_frequencies
from .gridded import GridLassoOptions, extract_cluster_peaks, solve_lasso

__all__ = [
    "SweepConfig",
    "ExperimentRecord",
    "generate_instance",
    "tau_rule",
    "dual_norm_noise_bounds",
    "mse",
    "run_sweep",
    "performance_profile",
    "write_records_csv",
    "read_records_csv",
    "RECORD_COLUMNS",
]

RECORD_COLUMNS = (
    "n",
    "k",
    "snr_db",
    "trial_seed",
    "algorithm",
    "mse",
    "runtime_ms",
    "freqs_recovered",
)

# Floor on tau relative to ||y|| when sigma_hat ~ 0.  Keeps noiseless runs
# well-posed, and is large enough that the dual polynomial remains resolvable
# at solver accuracy (localization needs the solve accurate relative to tau).
TAU_FLOOR_REL = 1e-4


@dataclasses.dataclass(frozen=True)
class SweepConfig:
    n_values: tuple[int, ...] = (64, 128, 256)
    k_divisors: tuple[int, ...] = (4, 8, 16)  # k = n / divisor
    snr_db: tuple[float, ...] = (-10, -5, 0, 5, 10, 15, 20)
    trials: int = 10
    lasso_N: tuple[int, ...] = (2**10, 2**11, 2**12, 2**13, 2**14, 2**15)
    seed: int = 0
    algorithms: tuple[str, ...] = ("ast", "lasso", "music", "pencil", "cadzow")

    def __post_init__(self) -> None:
        for name in ("n_values", "k_divisors", "snr_db", "lasso_N", "algorithms"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be nonempty")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        known = {"ast", "lasso", "music", "pencil", "cadzow"}
        unknown = set(self.algorithms) - known
        if unknown:
            raise ValueError(f"unknown algorithms: {sorted(unknown)}")

    @classmethod
    def from_json(cls, text: str) -> "SweepConfig":
        obj = json.loads(text)
        fields = {f.name for f in dataclasses.fields(cls)}
        kwargs = {k: tuple(v) if isinstance(v, list) else v for k, v in obj.items() if k in fields}
        extra = set(obj) - fields
        if extra:
            raise ValueError(f"unknown config fields: {sorted(extra)}")
        return cls(**kwargs)

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self))


@dataclasses.dataclass(frozen=True)
class ExperimentRecord:
    n: int
    k: int
    snr_db: float
    trial_seed: int
    algorithm: str
    mse: float
    runtime_ms: float
    freqs_recovered: tuple[float, ...]


def draw_separated_frequencies(
    k: int, min_sep: float, rng: np.random.Generator, max_attempts: int = 10**5
) -> np.ndarray:
    """Uniform frequencies rejection-resampled until all pairwise circular
    distances are at least min_sep."""
    if k * min_sep >= 1.0:
        raise ValueError("packing infeasible: k * min_sep >= 1")
    for _ in range(max_attempts):
        f = np.sort(rng.uniform(0.0, 1.0, size=k))
        if k == 1:
            return f
        gaps = np.diff(f, append=f[0] + 1.0)
        if np.all(gaps >= min_sep):
            return f
    raise RuntimeError(f"no feasible packing found in {max_attempts} attempts")


def generate_instance(
    n: int, k: int, snr_db: float, seed: int
) -> tuple[LineSpectralModel, ComplexSignal, ComplexSignal, float]:
    """One random benchmark instance: model, clean signal, observation, sigma.

    Frequencies are separated by at least 1/(2n); amplitude magnitudes are
    squared standard normals (chi-squared with one degree of freedom) with
    uniform phases.  snr_db = +inf yields a noiseless observation.
    """
    rng = np.random.default_rng(seed)
    freqs = draw_separated_frequencies(k, 1.0 / (2.0 * n), rng)
    mags = rng.standard_normal(k) ** 2
    phases = rng.uniform(0.0, 1.0, size=k)
    amps = mags * np.exp(2j * np.pi * phases)
    model = LineSpectralModel(tuple(zip(freqs.tolist(), amps.tolist())))
    x_star = synthesize(model, n)
    signal_power = float(np.sum(np.abs(x_star.samples) ** 2)) / n
    if math.isinf(snr_db):
        sigma = 0.0
        y = x_star
    else:
        sigma = math.sqrt(signal_power / 10.0 ** (snr_db / 10.0))
        w = (sigma / math.sqrt(2.0)) * (
            rng.standard_normal(n) + 1j * rng.standard_normal(n)
        )
        y = ComplexSignal(x_star.samples + w)
    return model, x_star, y, sigma


def tau_rule(n: int, sigma: float) -> float:
    """Regularization level: an upper bound on the expected dual norm of
    the noise, sigma (1 + 1/log n) sqrt(n log n + n log(4 pi log n))."""
    if n < 4:
        raise ValueError("n must be >= 4")
    ln = math.log(n)
    return sigma * (1.0 + 1.0 / ln) * math.sqrt(n * ln + n * math.log(4.0 * math.pi * ln))


def dual_norm_noise_bounds(n: int) -> tuple[float, float]:
    """Lower and upper bounds on the expected dual norm of unit-variance
    complex Gaussian noise: sqrt(n log n - (n/2) log(4 pi log n)) and the
    regularization-rule upper bound."""
    if n < 5:
        raise ValueError("n must be >= 5")
    ln = math.log(n)
    lower = math.sqrt(n * ln - (n / 2.0) * math.log(4.0 * math.pi * ln))
    return lower, tau_rule(n, 1.0)


def mse(x_hat, x_star) -> float:
    """Per-element squared error ||x_hat - x_star||^2 / n."""
    a = _as_complex_vector(x_hat)
    b = _as_complex_vector(x_star)
    if a.shape != b.shape:
        raise ValueError("length mismatch")
    return float(np.sum(np.abs(a - b) ** 2) / a.size)


def _trial_seed(seed: int, n: int, k: int, snr_db: float, trial: int) -> int:
    snr_key = 10**9 if math.isinf(snr_db) else int(round(snr_db * 1000.0))
    ss = np.random.SeedSequence([seed, n, k, snr_key, trial])
    return int(ss.generate_state(1)[0])


def _choose_tau(y: ComplexSignal) -> float:
    sigma2 = estimate_noise_variance(y)
    tau = tau_rule(y.n, math.sqrt(max(sigma2, 0.0)))
    return max(tau, TAU_FLOOR_REL * y.norm())


def run_ast_pipeline(
    y: ComplexSignal,
    tau: float,
    admm_opts: Optional[AdmmOptions] = None,
    grid: int = 2**16,
):
    """AST solve, dual-polynomial localization, and debias. Returns
    (x_hat, freqs, amplitudes, solution)."""
    sol = solve_ast(y, tau, admm_opts)
    loc = localize_frequencies(DualPolynomial(sol.z_hat.samples, tau), N=grid)
    db = debias(y, loc.frequencies)
    return db.x_hat, list(loc.frequencies), db.amplitudes, sol


def run_lasso_pipeline(
    y: ComplexSignal,
    tau: float,
    N: int,
    max_iters: int = 5000,
    tol: float = 1e-4,
):
    """Gridded Lasso solve, cluster-peak extraction, and debias."""
    sol = solve_lasso(y, GridLassoOptions(tau=tau, N=N, max_iters=max_iters, tol=tol))
    freqs = extract_cluster_peaks(sol.c_hat, max(1, N // (4 * y.n)))
    db = debias(y, freqs)
    return db.x_hat, freqs, db.amplitudes, sol


def _run_cell(
    config: SweepConfig, n: int, k: int, snr_db: float, trial: int
) -> list[ExperimentRecord]:
    seed = _trial_seed(config.seed, n, k, snr_db, trial)
    _, x_star, y, _ = generate_instance(n, k, snr_db, seed)
    tau = _choose_tau(y)
    records = []

    def record(alg: str, runner):
        start = time.perf_counter()
        try:
            x_hat, freqs = runner()
            err = mse(x_hat, x_star)
        except Exception:
            err, freqs = float("nan"), []
        elapsed_ms = (time.perf_counter() - start) * 1e3
        records.append(
            ExperimentRecord(
                n=n,
                k=k,
                snr_db=snr_db,
                trial_seed=seed,
                algorithm=alg,
                mse=err,
                runtime_ms=elapsed_ms,
                freqs_recovered=tuple(freqs),
            )
        )

    for alg in config.algorithms:
        if alg == "ast":
            record("ast", lambda: run_ast_pipeline(y, tau)[:2])
        elif alg == "lasso":
            for N in config.lasso_N:
                record(f"lasso_{N}", lambda N=N: run_lasso_pipeline(y, tau, N)[:2])
        elif alg == "music":
            record("music", lambda: _debiased(y, music(y, k)))
        elif alg == "pencil":
            record("pencil", lambda: _debiased(y, matrix_pencil(y, k)))
        elif alg == "cadzow":
            # Cadzow denoises; frequencies are read off the denoised signal
            # with the pencil so the debiased protocol matches the others.
            record("cadzow", lambda: _debiased(y, matrix_pencil(cadzow(y, k), k)))
    return records


def _debiased(y: ComplexSignal, freqs: Sequence[float]):
    db = debias(y, freqs)
    return db.x_hat, list(freqs)


def _sort_key(r: ExperimentRecord):
    return (r.n, r.k, r.snr_db, r.trial_seed, r.algorithm)


def run_sweep(
    config: SweepConfig,
    out_path: Optional[Union[str, Path]] = None,
    threads: int = 1,
) -> list[ExperimentRecord]:
    """Run every (n, k, SNR, trial) cell for every selected algorithm.

    Cells are independent and fully seeded, so the result is identical at
    any worker count (modulo runtime_ms).  When out_path is given, records
    are appended as cells complete and the file is rewritten in sorted
    order at the end.
    """
    cells = [
        (n, n // d, snr, trial)
        for n in config.n_values
        for d in config.k_divisors
        for snr in config.snr_db
        for trial in range(config.trials)
    ]
    records: list[ExperimentRecord] = []
    writer = _IncrementalWriter(out_path) if out_path else None
    if threads > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_run_cell, config, *cell) for cell in cells]
            for fut in concurrent.futures.as_completed(futures):
                batch = fut.result()
                records.extend(batch)
                if writer:
                    writer.append(batch)
    else:
        for cell in cells:
            batch = _run_cell(config, *cell)
            records.extend(batch)
            if writer:
                writer.append(batch)
    records.sort(key=_sort_key)
    if writer:
        write_records_csv(records, out_path)
    return records


class _IncrementalWriter:
    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        with open(self.path, "w", newline="") as fh:
            csv.writer(fh).writerow(RECORD_COLUMNS)

    def append(self, batch: Iterable[ExperimentRecord]) -> None:
        with open(self.path, "a", newline="") as fh:
            w = csv.writer(fh)
            for r in batch:
                w.writerow(_record_row(r))


def _record_row(r: ExperimentRecord) -> list:
    return [
        r.n,
        r.k,
        r.snr_db,
        r.trial_seed,
        r.algorithm,
        f"{r.mse:.17g}",
        f"{r.runtime_ms:.17g}",
        ";".join(f"{f:.17g}" for f in r.freqs_recovered),
    ]


def write_records_csv(records: Iterable[ExperimentRecord], path: Union[str, Path]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(RECORD_COLUMNS)
        for r in records:
            w.writerow(_record_row(r))


def read_records_csv(path: Union[str, Path]) -> list[ExperimentRecord]:
    records = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != RECORD_COLUMNS:
            raise ValueError(f"unexpected columns: {reader.fieldnames}")
        for row in reader:
            freqs = tuple(float(f) for f in row["freqs_recovered"].split(";") if f)
            records.append(
                ExperimentRecord(
                    n=int(row["n"]),
                    k=int(row["k"]),
                    snr_db=float(row["snr_db"]),
                    trial_seed=int(row["trial_seed"]),
                    algorithm=row["algorithm"],
                    mse=float(row["mse"]),
                    runtime_ms=float(row["runtime_ms"]),
                    freqs_recovered=freqs,
                )
            )
    return records


def performance_profile(
    records: Sequence[ExperimentRecord],
    algorithms: Sequence[str],
    betas: Optional[np.ndarray] = None,
) -> dict[str, list[tuple[float, float]]]:
    """Fraction of experiments where each algorithm's MSE is within a
    factor beta of the per-experiment best, on a log-spaced beta grid."""
    if betas is None:
        betas = np.logspace(0.0, 2.0, 50)
    by_exp: dict[tuple, dict[str, float]] = {}
    for r in records:
        if r.algorithm not in algorithms:
            continue
        by_exp.setdefault((r.n, r.k, r.snr_db, r.trial_seed), {})[r.algorithm] = r.mse
    if not by_exp:
        raise ValueError("no records for the requested algorithms")
    for key, cell in by_exp.items():
        missing = set(algorithms) - set(cell)
        if missing:
            raise ValueError(f"experiment {key} missing algorithms {sorted(missing)}")
    n_exp = len(by_exp)
    out: dict[str, list[tuple[float, float]]] = {}
    mins = {key: min(cell.values()) for key, cell in by_exp.items()}
    for alg in algorithms:
        curve = []
        for beta in betas:
            count = sum(
                1 for key, cell in by_exp.items() if cell[alg] <= beta * mins[key]
            )
            curve.append((float(beta), count / n_exp))
        out[alg] = curve
    return out
