"""Cooperative NOMA relay selection: closed-form outage and Monte Carlo."""

from ._core import (
    DistanceMode,
    DuplexMode,
    Scheme,
    SpecError,
    SweepSpec,
    SystemConfig,
    asymptotic_outage,
    compute_thresholds,
    disc_cdf_chebyshev,
    disc_cdf_exact,
    diversity_order_estimate,
    estimate_outage,
    exact_outage,
    exp_integral_ei,
    figure_preset,
    rrs_outage,
    srs_outage,
    sweep_csv,
    theta1_conditional,
    throughput,
    trs_outage,
    trs_outage_product_form,
    validate_config,
    validate_spec,
)

__all__ = [
    "DistanceMode",
    "DuplexMode",
    "Scheme",
    "SpecError",
    "SweepSpec",
    "SystemConfig",
    "asymptotic_outage",
    "compute_thresholds",
    "disc_cdf_chebyshev",
    "disc_cdf_exact",
    "diversity_order_estimate",
    "estimate_outage",
    "exact_outage",
    "exp_integral_ei",
    "figure_preset",
    "rrs_outage",
    "srs_outage",
    "sweep_csv",
    "theta1_conditional",
    "throughput",
    "trs_outage",
    "trs_outage_product_form",
    "validate_config",
    "validate_spec",
]
