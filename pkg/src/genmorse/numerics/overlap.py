"""Wave-function overlaps between states of two (possibly satellite) potentials."""

from __future__ import annotations

import math

import numpy as np

from genmorse.errors import DomainError
from genmorse.numerics.quadrature import integrate
from genmorse.wavefunction import BoundState

__all__ = ["overlap", "franck_condon", "franck_condon_factor", "norm_integral", "mass_interval"]


def _common_axis(a: BoundState, b: BoundState):
    pa, pb = a.model.physical, b.model.physical
    if pa is not None and pb is not None and not math.isclose(pa.a, pb.a, rel_tol=1e-12):
        raise DomainError("states live on different dimensionless axes (a differs)")


def overlap(a: BoundState, b: BoundState, tol: float = 1e-12) -> float:
    """Integral of psi_a psi_b over x in (0, inf)."""
    _common_axis(a, b)
    cut = max(a.tail_cutoff(), b.tail_cutoff())
    return integrate(lambda x: a.psi(x) * b.psi(x), 0.0, np.inf, tol=tol, cutoff=cut)


def norm_integral(state: BoundState, tol: float = 1e-12, min_intervals: int = 8) -> float:
    cut = state.tail_cutoff()
    return integrate(lambda x: state.psi(x) ** 2, 0.0, np.inf, tol=tol, cutoff=cut, min_intervals=min_intervals)


def franck_condon(a: BoundState, b: BoundState, tol: float = 1e-12) -> float:
    """Overlap of two vibrational states; its square is the Franck-Condon factor."""
    return overlap(a, b, tol)


def franck_condon_factor(a: BoundState, b: BoundState, tol: float = 1e-12) -> float:
    return franck_condon(a, b, tol) ** 2


def mass_interval(state: BoundState, mass: float = 0.999) -> tuple[float, float]:
    """x-interval holding ``mass`` of |psi|^2, with equal tails cut on each side."""
    cut = (1.0 - mass) / 2.0
    f = lambda x: state.psi(x) ** 2  # noqa: E731
    hi_edge = state.tail_cutoff()

    def left(x):
        return integrate(f, 0.0, x, tol=1e-13)

    def right(x):
        return integrate(f, x, np.inf, tol=1e-13, cutoff=max(hi_edge, x + 1.0))

    def solve(g, a, b):
        for _ in range(60):
            mid = 0.5 * (a + b)
            if g(mid) < 0:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    x_lo = solve(lambda x: left(x) - cut, 1e-12, hi_edge)
    x_hi = solve(lambda x: cut - right(x), x_lo, hi_edge)
    return float(x_lo), float(x_hi)
