"""Numerical oracles (Numerov, quadrature) and applied numerics (overlaps, fits)."""

from genmorse.numerics.fitting import FitOptions, FitResult, fit_levels, model_energies
from genmorse.numerics.numerov import (
    GridSpec,
    NumerovResult,
    count_levels,
    count_nodes,
    numerov_eigenvalue,
    numerov_solve,
)
from genmorse.numerics.overlap import franck_condon, franck_condon_factor, mass_interval, norm_integral, overlap
from genmorse.numerics.quadrature import gauss_kronrod, integrate

__all__ = [
    "FitOptions",
    "FitResult",
    "GridSpec",
    "NumerovResult",
    "count_levels",
    "count_nodes",
    "fit_levels",
    "franck_condon",
    "franck_condon_factor",
    "gauss_kronrod",
    "integrate",
    "mass_interval",
    "model_energies",
    "norm_integral",
    "numerov_eigenvalue",
    "numerov_solve",
    "overlap",
]
