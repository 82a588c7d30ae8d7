# -*- coding: utf-8 -*-
"""Soft thresholding and optimality machinery for atomic-norm denoising.

These operations realize the abstract denoising theory on the 1-sparse
(ell-1) atom set, and supply the certificate checks used to validate the
SDP solver: the prox, the two optimality conditions, cone membership for
fast-rate analysis, and the closed-form rate bounds.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable, Union

import numpy as np

from .core import ComplexSignal, NormBracket, _as_complex_vector

__all__ = [
    "OptimalityReport",
    "soft_threshold",
    "check_optimality",
    "cone_membership",
    "sparse_phi_lower_bound",
    "slow_rate_bound",
    "slow_rate_bound_high_prob",
]


def soft_threshold(y, tau: float) -> np.ndarray:
    """Entrywise shrink towards zero: x_i = y_i * max(1 - tau/|y_i|, 0).

    This is the proximal operator of tau * ||.||_1 and solves the atomic
    denoising problem for the 1-sparse atom set.  Complex entries keep
    their phase.
    """
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    yv = np.asarray(y)
    mag = np.abs(yv)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(mag > 0, np.maximum(1.0 - tau / np.where(mag > 0, mag, 1.0), 0.0), 0.0)
    return yv * scale


@dataclasses.dataclass(frozen=True)
class OptimalityReport:
    """Outcome of the two optimality conditions for the denoising problem.

    dual_norm_residual is the dual atomic norm of y - x_hat; alignment_gap
    is |<y - x_hat, x_hat> - tau * ||x_hat||_A| under the real pairing.
    """

    dual_norm_residual: float
    alignment_gap: float
    tau: float
    passed: bool


def check_optimality(
    y,
    x_hat,
    tau: float,
    dual_norm: Callable[[np.ndarray], Union[float, NormBracket]],
    atomic_norm: Callable[[np.ndarray], float],
    tol: float = 1e-6,
) -> OptimalityReport:
    """Evaluate conditions (i) ||y - x_hat||*_A <= tau and (ii) alignment.

    ``dual_norm`` may return a scalar or a certified bracket; the bracket's
    lower endpoint (an exact dual norm for the grid-restricted atom set) is
    used on the feasibility side.  ``atomic_norm`` evaluates ||.||_A for
    condition (ii); pass the ell-1 norm for sparse atoms.
    """
    yv = _as_complex_vector(y)
    xv = _as_complex_vector(x_hat)
    if yv.shape != xv.shape:
        raise ValueError("y and x_hat must have the same length")
    residual = yv - xv
    dn = dual_norm(residual)
    dn_value = dn.lower if isinstance(dn, NormBracket) else float(dn)
    anorm = float(atomic_norm(xv))
    pairing = float(np.real(np.vdot(xv, residual)))  # Re(x_hat^* (y - x_hat))
    gap = abs(pairing - tau * anorm)
    cond_i = dn_value <= tau * (1.0 + tol)
    cond_ii = gap <= tol * max(1.0, tau * anorm)
    return OptimalityReport(
        dual_norm_residual=dn_value,
        alignment_gap=gap,
        tau=float(tau),
        passed=bool(cond_i and cond_ii),
    )


def cone_membership(x_star, z, gamma: float) -> bool:
    """Generator membership in the widened tangent cone at x_star.

    True iff ||x_star + z||_1 <= ||x_star||_1 + gamma * ||z||_1.  The cone
    itself is the conic hull of such z; scaling behaviour is exercised in
    the property suite.
    """
    if not (0.0 <= gamma <= 1.0):
        raise ValueError("gamma must lie in [0, 1]")
    xs = np.asarray(x_star)
    zv = np.asarray(z)
    if xs.shape != zv.shape:
        raise ValueError("dimension mismatch")
    lhs = np.abs(xs + zv).sum()
    rhs = np.abs(xs).sum() + gamma * np.abs(zv).sum()
    return bool(lhs <= rhs)


def sparse_phi_lower_bound(k: int, gamma: float) -> float:
    """Compatibility-constant lower bound (1 - gamma) / (2 sqrt(k)) for
    k-sparse signals under the signed-basis atom set."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (1.0 - gamma) / (2.0 * math.sqrt(k))


def slow_rate_bound(tau: float, atomic_norm_x: float, n: int) -> float:
    """Expected per-element MSE bound tau * ||x*||_A / n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return tau * atomic_norm_x / n


def slow_rate_bound_high_prob(tau: float, atomic_norm_x: float, n: int) -> float:
    """Per-realization bound 2 * tau * ||x*||_A / n, valid whenever tau
    exceeds the dual norm of the noise."""
    return 2.0 * slow_rate_bound(tau, atomic_norm_x, n)
