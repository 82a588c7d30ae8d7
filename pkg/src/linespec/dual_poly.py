# -*- coding: utf-8 -*-
"""Frequency localization from the dual solution and amplitude debiasing.

The dual vector z_hat = y - x_hat defines a trigonometric polynomial whose
modulus touches tau exactly at the frequencies supporting the denoised
signal.  Peaks of the evaluated modulus are detected on a fine grid,
refined by golden-section search, and the amplitudes are then refit by
least squares to remove shrinkage bias.
"""

from __future__ import annotations

import dataclasses
from typing import Sequence, Union

import numpy as np

from .core import ComplexSignal, _as_complex_vector

__all__ = [
    "DualPolynomial",
    "LocalizationResult",
    "DebiasResult",
    "eval_dual_polynomial",
    "localize_frequencies",
    "debias",
]

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclasses.dataclass(frozen=True)
class DualPolynomial:
    """Dual vector z_hat together with the threshold tau it certifies."""

    coeffs: np.ndarray
    tau: float

    def __post_init__(self) -> None:
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.size < 1 or not np.all(np.isfinite(c)):
            raise ValueError("coeffs must be a finite non-empty vector")
        if not (self.tau > 0):
            raise ValueError("tau must be positive")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return self.coeffs.size

    def modulus_at(self, f: float) -> float:
        l = np.arange(self.n)
        return float(abs(np.dot(self.coeffs, np.exp(-2j * np.pi * l * f))))


@dataclasses.dataclass(frozen=True)
class LocalizationResult:
    frequencies: tuple[float, ...]
    magnitudes_at_peaks: tuple[float, ...]
    grid_size_used: int
    merged_peaks: int = 0


def eval_dual_polynomial(p: DualPolynomial, N: int) -> np.ndarray:
    """Modulus of the dual polynomial at f = m/N, m = 0..N-1 (one FFT)."""
    if N < 4 * p.n:
        raise ValueError(f"grid size {N} must be at least 4n = {4 * p.n}")
    return np.abs(np.fft.fft(p.coeffs, N))


def _refine_peak(p: DualPolynomial, f0: float, half_width: float, iters: int = 20) -> float:
    """Golden-section maximization of the modulus on [f0 - w, f0 + w]."""
    a, b = f0 - half_width, f0 + half_width
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc = p.modulus_at(c % 1.0)
    fd = p.modulus_at(d % 1.0)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = p.modulus_at(c % 1.0)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = p.modulus_at(d % 1.0)
    return ((a + b) / 2.0) % 1.0


def _circular_distance(a: float, b: float) -> float:
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


def _merge_close_peaks(
    refined: list[tuple[float, float]], min_gap: float
) -> tuple[list[tuple[float, float]], int]:
    """Collapse (frequency, magnitude) pairs closer than min_gap on the
    circle, keeping the larger magnitude.  Input must be sorted by
    frequency.  Returns the kept peaks and the number of merges."""
    merged = 0
    kept: list[tuple[float, float]] = []
    for f, mag in refined:
        if kept and _circular_distance(f, kept[-1][0]) < min_gap:
            merged += 1
            if mag > kept[-1][1]:
                kept[-1] = (f, mag)
        else:
            kept.append((f, mag))
    if len(kept) > 1 and _circular_distance(kept[0][0], kept[-1][0]) < min_gap:
        merged += 1
        if kept[-1][1] > kept[0][1]:
            kept[0] = kept[-1]
        kept.pop()
        kept.sort()
    return kept, merged


def localize_frequencies(
    p: DualPolynomial,
    rel_threshold: float = 0.999,
    N: int = 2**16,
) -> LocalizationResult:
    """Frequencies at which the dual polynomial attains (nearly) modulus tau.

    Strict local maxima of the grid-evaluated modulus exceeding
    rel_threshold * tau are refined by golden-section search within one
    grid cell.  Peaks closer than 1/(4n) are merged, keeping the larger,
    since atoms below that spacing are not meaningfully distinct at this n.
    """
    mods = eval_dual_polynomial(p, N)
    threshold = rel_threshold * p.tau
    left = np.roll(mods, 1)
    right = np.roll(mods, -1)
    peak_idx = np.nonzero((mods > left) & (mods > right) & (mods >= threshold))[0]
    refined = []
    for m in peak_idx:
        f = _refine_peak(p, m / N, 1.0 / N)
        refined.append((f, p.modulus_at(f)))
    refined.sort()
    kept, merged = _merge_close_peaks(refined, 1.0 / (4.0 * p.n))
    return LocalizationResult(
        frequencies=tuple(f for f, _ in kept),
        magnitudes_at_peaks=tuple(m for _, m in kept),
        grid_size_used=N,
        merged_peaks=merged,
    )


@dataclasses.dataclass(frozen=True)
class DebiasResult:
    amplitudes: np.ndarray
    x_hat: ComplexSignal
    rank_deficient: bool = False


def debias(
    y: Union[ComplexSignal, np.ndarray],
    freqs: Sequence[float],
) -> DebiasResult:
    """Least-squares amplitude refit on the estimated frequencies.

    Solves min_a ||U a - y||^2 with U[j, l] = e^{i 2 pi j f_l} and returns
    the fitted amplitudes and x_hat = U a.  A rank-deficient U (duplicate
    or near-duplicate frequencies) falls back to the minimum-norm solution
    and is flagged.
    """
    yv = _as_complex_vector(y)
    n = yv.size
    freqs = list(freqs)
    if len(freqs) > n:
        raise ValueError("more frequencies than samples")
    if len(set(freqs)) != len(freqs):
        raise ValueError("frequencies must be distinct")
    if not freqs:
        return DebiasResult(
            amplitudes=np.zeros(0, dtype=np.complex128),
            x_hat=ComplexSignal(np.zeros(n, dtype=np.complex128)),
        )
    j = np.arange(n)[:, None]
    U = np.exp(2j * np.pi * j * np.asarray(freqs)[None, :])
    # rcond well above machine epsilon so near-duplicate frequencies are
    # treated as rank deficiency instead of blowing up the amplitudes
    amps, _, rank, _ = np.linalg.lstsq(U, yv, rcond=1e-10)
    return DebiasResult(
        amplitudes=amps,
        x_hat=ComplexSignal(U @ amps),
        rank_deficient=bool(rank < len(freqs)),
    )
