"""Numerical toolkit for the benchmark Calvo New Keynesian model.

Covers the closed-form non-stochastic steady state, price-dispersion
statics and dynamics, every linearized coefficient family (ZINSS limit,
trend inflation, stochastic-moment), eigenvalue-based existence and
determinacy analysis, lag-polynomial bifurcation detection, rival pricing
models (Lucas, Rotemberg, Taylor), and Monte-Carlo stochastic-equilibrium
simulation.
"""

from calvobench.model_core import (
    ModelParams,
    DomainError,
    UnknownPreset,
    validate,
    preset,
    PRESET_NAMES,
)
from calvobench.steady_state import SteadyState, compute_nss
from calvobench.phillips import CoefficientSet, MomentSet, limit_coeffs, trend_coeffs

__all__ = [
    "ModelParams",
    "DomainError",
    "UnknownPreset",
    "validate",
    "preset",
    "PRESET_NAMES",
    "SteadyState",
    "compute_nss",
    "CoefficientSet",
    "MomentSet",
    "limit_coeffs",
    "trend_coeffs",
]
