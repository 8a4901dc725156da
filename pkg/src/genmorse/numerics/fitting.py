"""Least-squares fit of (D, a, r_e) to observed vibrational levels.

Every level is E_n = s (k - alpha_n(k, b)^2) with s = a^2 hbar^2 / 2 mu, so for
fixed (k, b) the best energy scale s is a linear least-squares solve. The
simplex therefore only searches (log k, log b); this removes the long curved
valley that a direct (D, a, r_e) search stalls in when b is large. Levels that
are not bound at a trial point are pinned to the threshold k, which keeps the
objective continuous. Nelder-Mead is restarted from the incumbent until a
restart no longer improves it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from genmorse.core import PhysicalParams
from genmorse.errors import DomainError

__all__ = ["FitOptions", "FitResult", "fit_levels", "model_energies"]


@dataclass(frozen=True)
class FitOptions:
    max_iter: int = 5000
    max_restarts: int = 8
    xatol: float = 1e-12
    fatol: float = 1e-28
    initial_step: float = 0.05


@dataclass(frozen=True)
class FitResult:
    params: PhysicalParams
    residual_rms: float
    n_iterations: int
    converged: bool
    history: tuple = field(default=(), repr=False)


def model_energies(D, a, r_e, mu, hbar, ns) -> np.ndarray:
    """Physical energies of levels ``ns``; NaN where a level is not bound."""
    ns = np.asarray(ns, dtype=float)
    k = 2.0 * mu * D / (a * a * hbar * hbar)
    b = math.expm1(a * r_e)
    K = k * b * (b + 2.0)
    l = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * k * b * b))
    u = ns + l
    E = D - a * a * hbar * hbar / (8.0 * mu) * (u - K / u) ** 2
    return np.where(K / u - u > 0, E, np.nan)


def _shape_levels(k: float, b: float, ns: np.ndarray) -> np.ndarray:
    """k - alpha_n^2, continued by k past the last bound level."""
    K = k * b * (b + 2.0)
    u = ns + 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * k * b * b))
    alpha = 0.5 * (K / u - u)
    return np.where(alpha > 0, k - alpha * alpha, k)


def fit_levels(observed: Sequence[tuple[int, float]], initial: PhysicalParams, opts: FitOptions = FitOptions()) -> FitResult:
    """Fit D, a, r_e (mu, hbar fixed) to ``observed`` = [(n, E_n), ...]."""
    if len(observed) < 3:
        raise DomainError("at least three observed levels are needed to fit three parameters")
    ns = np.array([o[0] for o in observed], dtype=float)
    E_obs = np.array([o[1] for o in observed], dtype=float)
    if np.any(ns < 0) or np.any(ns != np.round(ns)) or len(set(ns)) != len(ns):
        raise DomainError("level indices must be distinct non-negative integers")
    mu, hbar = initial.mu, initial.hbar
    scale = max(float(np.max(np.abs(E_obs))), 1e-300)

    def profile(z) -> tuple[float, float]:
        e = _shape_levels(*np.exp(z), ns)
        s = max(float(e @ E_obs) / float(e @ e), 1e-300)
        r = s * e - E_obs
        return float(r @ r) / (scale * scale), s

    def ssr(z) -> float:
        return profile(z)[0]

    def to_params(z) -> PhysicalParams:
        k, b = np.exp(z)
        s = profile(z)[1]
        a = math.sqrt(2.0 * mu * s) / hbar
        return PhysicalParams(float(s * k), a, math.log1p(float(b)) / a, mu, hbar)

    k0 = 2.0 * mu * initial.D / (initial.a * initial.hbar) ** 2
    z = np.log([k0, math.expm1(initial.a * initial.r_e)])
    best = ssr(z)
    history = [best]
    iterations = 0
    converged = best <= opts.fatol
    if converged:
        params = initial
    else:
        for _ in range(opts.max_restarts):
            simplex = np.vstack([z] + [z + opts.initial_step * e for e in np.eye(2)])
            res = minimize(
                ssr,
                z,
                method="Nelder-Mead",
                options={
                    "initial_simplex": simplex,
                    "xatol": opts.xatol,
                    "fatol": opts.fatol,
                    "maxiter": opts.max_iter,
                    "maxfev": 4 * opts.max_iter,
                },
            )
            iterations += int(res.nit)
            improved = res.fun < best
            gain = best - res.fun
            if improved:
                z, best = res.x, float(res.fun)
                history.append(best)
            if best <= opts.fatol or (res.success and (not improved or gain <= 1e-9 * best)):
                converged = True
                break
        params = to_params(z)
    rms = scale * math.sqrt(best / len(ns))
    return FitResult(params, rms, iterations, converged, tuple(history))
