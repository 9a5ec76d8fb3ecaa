"""Monte Carlo Greeks for SDEs driven by fractional Brownian motion."""

from ._fbmgreeks import (
    ConfigError,
    DomainError,
    Error,
    IoError,
    NumericalError,
    confidence_interval,
    fbm_covariance,
    fbm_divergence,
    frac_derivative,
    frac_integral,
    normal_quantile,
    parse_config,
    run_config,
    sample_fbm,
    volterra_kernel,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "IoError",
    "NumericalError",
    "confidence_interval",
    "fbm_covariance",
    "fbm_divergence",
    "frac_derivative",
    "frac_integral",
    "normal_quantile",
    "parse_config",
    "run_config",
    "sample_fbm",
    "volterra_kernel",
]
