# -*- coding: utf-8 -*-
"""End-to-end tests of the command line interface."""

import csv
import json

import numpy as np
import pytest

from linespec.cli import build_parser, main
from linespec.core import write_signal_csv
from linespec.experiments import SweepConfig, generate_instance, read_records_csv


@pytest.fixture()
def noisy_signal(tmp_path):
    _, x_star, y, _ = generate_instance(32, 2, 10.0, 5)
    path = tmp_path / "samples.csv"
    write_signal_csv(y, path)
    return path, x_star, y


@pytest.fixture()
def clean_signal(tmp_path):
    model, x_star, y, _ = generate_instance(32, 2, float("inf"), 7)
    path = tmp_path / "clean.csv"
    write_signal_csv(y, path)
    return path, model, y


class TestParser:
    def test_requires_subcommand(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_denoise_method_choices(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(
                ["denoise", "--input", "x", "--tau", "1", "--method", "nope",
                 "--output", "y"]
            )

    def test_rejects_nonpositive_tau(self, noisy_signal, tmp_path):
        path, _, _ = noisy_signal
        with pytest.raises(SystemExit):
            main(["denoise", "--input", str(path), "--tau", "-2",
                  "--method", "ast", "--output", str(tmp_path / "o.json")])


class TestDenoise:
    def test_ast_auto_tau(self, noisy_signal, tmp_path):
        path, x_star, y = noisy_signal
        out = tmp_path / "result.json"
        assert main(["denoise", "--input", str(path), "--tau", "auto",
                     "--method", "ast", "--output", str(out)]) == 0
        result = json.loads(out.read_text())
        assert result["method"] == "ast" and result["n"] == 32
        assert result["tau"] > 0
        x_hat = np.array([complex(a, b) for a, b in result["x_hat"]])
        noise = np.linalg.norm(y.samples - x_star.samples)
        assert np.linalg.norm(x_hat - x_star.samples) <= noise
        assert len(result["frequencies"]) == len(result["amplitudes"])
        assert {"iters", "converged", "objective"} <= set(result["diagnostics"])

    def test_lasso_explicit_tau(self, noisy_signal, tmp_path):
        path, x_star, y = noisy_signal
        out = tmp_path / "result.json"
        tau = 0.3 * 32  # well under n * max amplitude
        assert main(["denoise", "--input", str(path), "--tau", str(tau),
                     "--method", "lasso", "--grid", "1024",
                     "--output", str(out)]) == 0
        result = json.loads(out.read_text())
        assert result["method"] == "lasso"
        assert result["tau"] == pytest.approx(tau)
        assert len(result["x_hat"]) == 32


class TestLocalize:
    def test_noiseless_frequencies_recovered(self, clean_signal, tmp_path):
        path, model, y = clean_signal
        out = tmp_path / "freqs.json"
        tau = 1e-4 * y.norm()
        assert main(["localize", "--input", str(path), "--tau", str(tau),
                     "--grid", str(2**14), "--output", str(out)]) == 0
        result = json.loads(out.read_text())
        got = sorted(result["frequencies"])
        true = sorted(f for f, _ in model.components)
        assert len(got) == len(true)
        assert all(abs(a - b) <= 1e-3 for a, b in zip(got, true))
        assert result["grid"] == 2**14


class TestSweepAndProfile:
    def test_sweep_then_profile(self, tmp_path, capsys):
        cfg = SweepConfig(
            n_values=(32,),
            k_divisors=(16,),
            snr_db=(10.0,),
            trials=2,
            seed=4,
            algorithms=("music", "pencil"),
        )
        cfg_path = tmp_path / "sweep.json"
        cfg_path.write_text(cfg.to_json())
        records_path = tmp_path / "records.csv"
        assert main(["sweep", "--config", str(cfg_path),
                     "--out", str(records_path)]) == 0
        assert "4 records" in capsys.readouterr().out
        records = read_records_csv(records_path)
        assert {r.algorithm for r in records} == {"music", "pencil"}

        profile_path = tmp_path / "profile.csv"
        assert main(["profile", "--records", str(records_path),
                     "--out", str(profile_path)]) == 0
        with open(profile_path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert set(rows[0]) == {"algorithm", "beta", "P"}
        by_alg = {}
        for row in rows:
            by_alg.setdefault(row["algorithm"], []).append(float(row["P"]))
        assert set(by_alg) == {"music", "pencil"}
        for ps in by_alg.values():
            assert all(a <= b for a, b in zip(ps, ps[1:]))
            assert ps[-1] == 1.0

    def test_sweep_seed_override(self, tmp_path):
        cfg = SweepConfig(
            n_values=(32,), k_divisors=(16,), snr_db=(10.0,), trials=1,
            seed=4, algorithms=("pencil",),
        )
        cfg_path = tmp_path / "sweep.json"
        cfg_path.write_text(cfg.to_json())
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        main(["sweep", "--config", str(cfg_path), "--out", str(out_a)])
        main(["sweep", "--config", str(cfg_path), "--out", str(out_b),
              "--seed", "99"])
        (ra,) = read_records_csv(out_a)
        (rb,) = read_records_csv(out_b)
        assert ra.trial_seed != rb.trial_seed
