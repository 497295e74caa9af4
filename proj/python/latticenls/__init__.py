"""Lattice approximation of (fractional) nonlinear Schroedinger flows."""

from ._core import (
    ConfigError,
    DnlsError,
    LatticeGrid,
    apply_symbol,
    config_hash,
    conserved,
    decay_fit,
    dft,
    evolve,
    idft,
    interpolation_symbol,
    kernel_eval,
    kernel_sup,
    lp_norm,
    max_phase_gap_ratio,
    qstar,
    run_checks,
    run_convergence,
    sobolev_norm,
)

__all__ = [
    "ConfigError",
    "DnlsError",
    "LatticeGrid",
    "apply_symbol",
    "config_hash",
    "conserved",
    "decay_fit",
    "dft",
    "evolve",
    "idft",
    "interpolation_symbol",
    "kernel_eval",
    "kernel_sup",
    "lp_norm",
    "max_phase_gap_ratio",
    "qstar",
    "run_checks",
    "run_convergence",
    "sobolev_norm",
]
