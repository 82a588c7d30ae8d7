# -*- coding: utf-8 -*-
"""Line spectral denoising toolkit.

Estimates mixtures of complex sinusoids from noisy uniform samples by
atomic-norm soft thresholding (an SDP solved with ADMM), an FFT-based
gridded Lasso approximation, dual-polynomial frequency localization, and
classical baselines (root-MUSIC, Matrix Pencil, Cadzow), together with a
reproducible MSE-vs-SNR benchmark harness.
"""

from .admm import (
    AdmmOptions,
    AstSolution,
    atomic_norm_sdp,
    hermitian_eig,
    psd_project,
    sdp_objective,
    solve_ast,
)
from .baselines import (
    BaselineConfig,
    cadzow,
    estimate_noise_variance,
    matrix_pencil,
    music,
)
from .core import (
    ComplexSignal,
    HermitianMatrix,
    LineSpectralModel,
    NormBracket,
    atom,
    dual_atomic_norm,
    read_signal_csv,
    signal_from_json,
    signal_to_json,
    synthesize,
    toeplitz,
    toeplitz_adjoint,
    write_signal_csv,
)
from .dual_poly import (
    DebiasResult,
    DualPolynomial,
    LocalizationResult,
    debias,
    eval_dual_polynomial,
    localize_frequencies,
)
from .experiments import (
    ExperimentRecord,
    SweepConfig,
    dual_norm_noise_bounds,
    generate_instance,
    mse,
    performance_profile,
    run_sweep,
    tau_rule,
)
from .gridded import (
    GridLassoOptions,
    GridSolution,
    extract_cluster_peaks,
    phi_adjoint,
    phi_apply,
    solve_lasso,
)
from .thresholding import (
    OptimalityReport,
    check_optimality,
    cone_membership,
    slow_rate_bound,
    slow_rate_bound_high_prob,
    soft_threshold,
    sparse_phi_lower_bound,
)

__version__ = "0.1.0"
