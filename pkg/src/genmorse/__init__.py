"""Generalized Morse potential: exact spectrum, eigenfunctions, so(2,2) ladders and SUSY partners.

    >>> from genmorse import GmpModel, levels
    >>> m = GmpModel(4.0, 2.0)
    >>> m.n_max
    1
    >>> round(levels(m)[0].eps_n, 6)
    2.398347
"""

from genmorse.algebra import (
    Direction,
    PtpMap,
    SatelliteEnd,
    SatelliteStep,
    casimir_check,
    ladder_coeff,
    ptp_bound_count,
    ptp_map,
    reduced_ladder_apply,
    satellite_chain,
    satellite_state,
    satellite_step,
)
from genmorse.core import (
    AlgebraLabel,
    GmpModel,
    LevelRecord,
    PhysicalParams,
    dunham_coefficients,
    level,
    level_count,
    levels,
    morse_energy,
    morse_energy_dimensionless,
    reduce,
)
from genmorse.errors import (
    ConvergenceError,
    DomainError,
    GmpError,
    LabelError,
    LevelIndexError,
    NoEigenvalueError,
    SingularityError,
    StepError,
)
from genmorse.susyqm import PartnerModel, apply_A, normalization_recursion, partner, superpotential
from genmorse.wavefunction import (
    BoundState,
    bound_state,
    eval_dphi_dy,
    eval_phi,
    eval_psi,
    label_from_state,
    normalization,
    state_from_label,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraLabel",
    "BoundState",
    "ConvergenceError",
    "Direction",
    "DomainError",
    "GmpError",
    "GmpModel",
    "LabelError",
    "LevelIndexError",
    "LevelRecord",
    "NoEigenvalueError",
    "PartnerModel",
    "PhysicalParams",
    "PtpMap",
    "SatelliteEnd",
    "SatelliteStep",
    "SingularityError",
    "StepError",
    "apply_A",
    "bound_state",
    "casimir_check",
    "dunham_coefficients",
    "eval_dphi_dy",
    "eval_phi",
    "eval_psi",
    "label_from_state",
    "ladder_coeff",
    "level",
    "level_count",
    "levels",
    "morse_energy",
    "morse_energy_dimensionless",
    "normalization",
    "normalization_recursion",
    "partner",
    "ptp_bound_count",
    "ptp_map",
    "reduce",
    "reduced_ladder_apply",
    "satellite_chain",
    "satellite_state",
    "satellite_step",
    "state_from_label",
    "superpotential",
]
