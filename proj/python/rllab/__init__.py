"""PPO variants (clip, adaptive KL, correntropy-induced metric), Gaussian KL
diagnostics and correntropy metrics backed by a C++ core."""

from ._core import (
    ContractError,
    DiagGaussian,
    Kernel,
    PenaltyConfig,
    adaptive_beta_update,
    asymmetry_difference,
    asymmetry_grid,
    cim,
    correntropy,
    gaussian_taylor_partial_sum,
    kl_asymmetry,
    kl_closed_form,
    pendulum_step,
    pinsker_check,
    pointmass_step,
    run_cli,
    run_suite,
    silverman_bandwidth,
    suite_names,
    total_variation_1d,
    train,
)

__all__ = [
    "ContractError",
    "DiagGaussian",
    "Kernel",
    "PenaltyConfig",
    "adaptive_beta_update",
    "asymmetry_difference",
    "asymmetry_grid",
    "cim",
    "correntropy",
    "gaussian_taylor_partial_sum",
    "kl_asymmetry",
    "kl_closed_form",
    "pendulum_step",
    "pinsker_check",
    "pointmass_step",
    "run_cli",
    "run_suite",
    "silverman_bandwidth",
    "suite_names",
    "total_variation_1d",
    "train",
]
