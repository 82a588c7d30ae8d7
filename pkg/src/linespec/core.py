# -*- coding: utf-8 -*-
"""Core types and operators for line spectral signals.

A line spectral signal is a superposition of complex sinusoids sampled
uniformly.  This module provides the sample vector and model types, the
sinusoid atom map, grid-certified evaluation of the dual atomic norm
(the maximum modulus of a trigonometric polynomial on the unit circle),
and the Hermitian Toeplitz operator pair used by the SDP solver.
"""

from __future__ import annotations

import dataclasses
import json
import math
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "ComplexSignal",
    "LineSpectralModel",
    "HermitianMatrix",
    "NormBracket",
    "atom",
    "synthesize",
    "dual_atomic_norm",
    "toeplitz",
    "toeplitz_adjoint",
    "read_signal_csv",
    "write_signal_csv",
    "signal_to_json",
    "signal_from_json",
]

ArrayLike = Union[Sequence[complex], np.ndarray]


def _as_complex_vector(v: Union["ComplexSignal", ArrayLike]) -> np.ndarray:
    if isinstance(v, ComplexSignal):
        return v.samples
    return np.asarray(v, dtype=np.complex128)


@dataclasses.dataclass(frozen=True, eq=False)
class ComplexSignal:
    """Immutable length-n vector of complex samples.

    All entries must be finite; the underlying array is write-protected
    after construction.
    """

    samples: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.samples, dtype=np.complex128)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("samples must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite (no NaN/Inf)")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def n(self) -> int:
        return self.samples.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.samples))

    def allclose(self, other: "ComplexSignal", rtol=1e-12, atol=1e-12) -> bool:
        return len(self) == len(other) and np.allclose(
            self.samples, other.samples, rtol=rtol, atol=atol
        )


@dataclasses.dataclass(frozen=True)
class LineSpectralModel:
    """A finite mixture of sinusoids: (frequency, complex amplitude) pairs.

    Frequencies are normalized to [0, 1); exactly 1.0 is rejected rather
    than folded so that model equality stays well-defined.  Components are
    stored sorted ascending by frequency with no duplicates.
    """

    components: tuple[tuple[float, complex], ...]

    def __post_init__(self) -> None:
        comps = tuple(
            (float(f), complex(c)) for f, c in self.components
        )
        for f, _ in comps:
            if not (0.0 <= f < 1.0) or not math.isfinite(f):
                raise ValueError(f"frequency {f} outside [0, 1)")
        comps = tuple(sorted(comps, key=lambda fc: fc[0]))
        freqs = [f for f, _ in comps]
        if len(set(freqs)) != len(freqs):
            raise ValueError("duplicate frequencies in model")
        object.__setattr__(self, "components", comps)

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([f for f, _ in self.components], dtype=float)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([c for _, c in self.components], dtype=np.complex128)


class HermitianMatrix:
    """Hermitian matrix stored as the packed upper triangle.

    Only one triangle is kept, so A = A* holds exactly by construction.
    The diagonal is stored with its imaginary part dropped.
    """

    __slots__ = ("d", "_packed")

    def __init__(self, d: int, packed: np.ndarray):
        packed = np.asarray(packed, dtype=np.complex128)
        if packed.shape != (d * (d + 1) // 2,):
            raise ValueError("packed triangle has wrong length")
        self.d = int(d)
        self._packed = packed.copy()
        self._packed.setflags(write=False)

    @classmethod
    def from_full(cls, a: np.ndarray) -> "HermitianMatrix":
        """Pack the upper triangle of a square matrix, realifying the diagonal."""
        a = np.asarray(a, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("expected a square matrix")
        d = a.shape[0]
        iu, ju = np.triu_indices(d)
        packed = a[iu, ju].copy()
        packed[iu == ju] = packed[iu == ju].real
        return cls(d, packed)

    def full(self) -> np.ndarray:
        d = self.d
        out = np.zeros((d, d), dtype=np.complex128)
        iu, ju = np.triu_indices(d)
        out[iu, ju] = self._packed
        strict = iu != ju
        out[ju[strict], iu[strict]] = np.conj(self._packed[strict])
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HermitianMatrix)
            and self.d == other.d
            and np.array_equal(self._packed, other._packed)
        )


@dataclasses.dataclass(frozen=True)
class NormBracket:
    """Certified interval [lower, upper] containing a norm value."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValueError("bracket endpoints must be finite")
        if self.lower < 0 or self.upper < 0:
            raise ValueError("bracket endpoints must be nonnegative")
        if self.lower > self.upper * (1 + 1e-15):
            raise ValueError("bracket lower endpoint exceeds upper")


def atom(f: float, phi: float, n: int) -> ComplexSignal:
    """Sampled complex sinusoid a_m = e^{i2*pi*phi} e^{i2*pi*m*f}, m = 0..n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (0.0 <= f < 1.0):
        raise ValueError(f"frequency {f} outside [0, 1)")
    if not (0.0 <= phi < 1.0):
        raise ValueError(f"phase {phi} outside [0, 1)")
    m = np.arange(n)
    return ComplexSignal(np.exp(2j * np.pi * (phi + m * f)))


def synthesize(model: LineSpectralModel, n: int) -> ComplexSignal:
    """Superpose the model's sinusoids at sample points 0..n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = np.arange(n)
    out = np.zeros(n, dtype=np.complex128)
    for f, c in model.components:
        out += c * np.exp(2j * np.pi * m * f)
    return ComplexSignal(out)


def dual_atomic_norm(v: Union[ComplexSignal, ArrayLike], grid_size: int) -> NormBracket:
    """Bracket the dual atomic norm of v by an N-point grid evaluation.

    The dual norm is the maximum modulus of the degree-(n-1) polynomial
    with coefficients v on the unit circle.  The grid maximum is an exact
    lower bound; a Bernstein derivative bound certifies that dividing by
    (1 - 2*pi*n/N) gives an upper bound.  Requires N > 2*pi*n.
    """
    vv = _as_complex_vector(v)
    n = vv.size
    N = int(grid_size)
    if N <= 2 * np.pi * n:
        raise ValueError(f"grid size {N} must exceed 2*pi*n = {2 * np.pi * n:.2f}")
    # fft computes sum_l v_l e^{-i 2 pi l m / N}: exactly the polynomial on the grid
    lower = float(np.max(np.abs(np.fft.fft(vv, N))))
    upper = lower / (1.0 - 2.0 * np.pi * n / N)
    return NormBracket(lower, upper)


def toeplitz(u: ArrayLike) -> HermitianMatrix:
    """Hermitian Toeplitz matrix with first row u.

    T(u)[j, k] = u[k - j] for k >= j, conjugated below the diagonal.
    u[0] must be (numerically) real; its imaginary part is zeroed.
    """
    uv = _as_complex_vector(u)
    if uv.ndim != 1 or uv.size < 1:
        raise ValueError("u must be a non-empty vector")
    if abs(uv[0].imag) > 1e-8 * max(abs(uv[0]), 1e-300):
        raise ValueError("u[0] must be real for a Hermitian Toeplitz matrix")
    uv = uv.copy()
    uv[0] = uv[0].real
    n = uv.size
    ext = np.concatenate([np.conj(uv[:0:-1]), uv])  # index by (k - j) + n - 1
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return HermitianMatrix.from_full(ext[k - j + n - 1])


def toeplitz_adjoint(Q: Union[HermitianMatrix, np.ndarray]) -> np.ndarray:
    """Adjoint T* of the Toeplitz map under the real inner products.

    Satisfies Re tr(Q* T(u)) = Re <u, T*(Q)> for all u: the first entry is
    the trace, later entries are twice the superdiagonal sums.
    """
    q = Q.full() if isinstance(Q, HermitianMatrix) else np.asarray(Q, dtype=np.complex128)
    n = q.shape[0]
    out = np.empty(n, dtype=np.complex128)
    out[0] = np.trace(q).real
    for j in range(1, n):
        out[j] = 2.0 * np.trace(q, offset=j)
    return out


# ---------------------------------------------------------------------------
# serialization

def write_signal_csv(signal: ComplexSignal, path: Union[str, Path]) -> None:
    """Write samples as CSV with header ``re,im``, 17 significant digits."""
    with open(path, "w") as fh:
        fh.write("re,im\n")
        for s in signal.samples:
            fh.write(f"{s.real:.17g},{s.imag:.17g}\n")


def read_signal_csv(path: Union[str, Path]) -> ComplexSignal:
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "re,im":
            raise ValueError(f"expected header 're,im', got {header!r}")
        vals = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            re_s, im_s = line.split(",")
            vals.append(complex(float(re_s), float(im_s)))
    return ComplexSignal(np.array(vals, dtype=np.complex128))


def signal_to_json(signal: ComplexSignal) -> str:
    obj = {
        "n": signal.n,
        "samples": [[s.real, s.imag] for s in signal.samples],
    }
    return json.dumps(obj)


def signal_from_json(text: str) -> ComplexSignal:
    obj = json.loads(text)
    if obj["n"] != len(obj["samples"]):
        raise ValueError("n field disagrees with sample count")
    return ComplexSignal(
        np.array([complex(re, im) for re, im in obj["samples"]], dtype=np.complex128)
    )
