"""Wavelet-based synthesis of Hermite and generalized Hermite process paths."""

from ._core import (  # noqa: F401
    ConfigurationError,
    EstimationError,
    ParameterError,
    __version__,
    diagonal_width,
    estimate_hurst,
    farima,
    farima_covariance,
    frac_scaling_hat,
    gamma_weights,
    index_bounds,
    integral_matrix,
    integral_vector,
    normalization_constant,
    phi_hat,
    simulate,
)
