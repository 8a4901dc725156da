"""Numerov shooting eigensolver used as an independent oracle for the closed forms.

Eigenvalue n is isolated by Sturm node counting of the outward solution, then
polished by matching outward and inward solutions at the potential minimum.
The match uses the discrete Wronskian of the two normalized branches, which is
the log-derivative mismatch with its poles removed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numba import njit
from scipy.optimize import brentq

from genmorse.errors import DomainError, NoEigenvalueError

__all__ = ["GridSpec", "NumerovResult", "numerov_eigenvalue", "numerov_solve", "count_nodes", "count_levels"]

_START_C = 0.1  # outward start once h^2 |v - E| / 12 drops below this
_BIG = 1e100


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    n_points: int = 20000

    def __post_init__(self):
        if not 0 < self.x_min < self.x_max:
            raise DomainError("need 0 < x_min < x_max")
        if self.n_points < 1000:
            raise DomainError("n_points must be at least 1000")

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @classmethod
    def for_model(cls, model, n_points: int = 20000, x_min: float = 1e-4, tail: float = 1e-12) -> "GridSpec":
        """x_max from the tail rule N e^(-alpha x_max) < tail on the loosest bound level."""
        from genmorse.wavefunction import bound_state

        if model.n_max < 0:
            return cls(x_min, 10.0 * (model.x_e + 1.0), n_points)
        st = bound_state(model, model.n_max)
        return cls(x_min, float(st.tail_cutoff(tail)), n_points)


@njit(cache=True)
def _outward(f, h, x, power):
    """Integrate psi'' = f psi left to right; returns (psi, nodes, start index)."""
    n = f.shape[0]
    c = h * h / 12.0
    psi = np.zeros(n)
    i0 = 0
    while i0 < n - 2 and c * abs(f[i0]) >= _START_C:
        i0 += 1
    psi[i0] = 1.0
    psi[i0 + 1] = (x[i0 + 1] / x[i0]) ** power
    nodes = 0
    for i in range(i0 + 1, n - 1):
        psi[i + 1] = (2.0 * (1.0 + 5.0 * c * f[i]) * psi[i] - (1.0 - c * f[i - 1]) * psi[i - 1]) / (
            1.0 - c * f[i + 1]
        )
        if (psi[i + 1] < 0.0) != (psi[i] < 0.0) and psi[i + 1] != 0.0:
            nodes += 1
        if i % 100 == 0 and abs(psi[i + 1]) > _BIG:
            s = 1.0 / abs(psi[i + 1])
            for j in range(i0, i + 2):
                psi[j] *= s
    return psi, nodes, i0


@njit(cache=True)
def _inward(f, h, stop):
    """Integrate right to left down to index ``stop`` from a decaying tail."""
    n = f.shape[0]
    c = h * h / 12.0
    psi = np.zeros(n)
    if f[n - 1] > 0.0:
        psi[n - 1] = 1.0
        psi[n - 2] = math.exp(math.sqrt(f[n - 1]) * h)
    else:
        psi[n - 1] = 0.0
        psi[n - 2] = 1e-30
    for i in range(n - 2, stop, -1):
        psi[i - 1] = (2.0 * (1.0 + 5.0 * c * f[i]) * psi[i] - (1.0 - c * f[i + 1]) * psi[i + 1]) / (
            1.0 - c * f[i - 1]
        )
        if i % 100 == 0 and abs(psi[i - 1]) > _BIG:
            s = 1.0 / abs(psi[i - 1])
            for j in range(i - 1, n):
                psi[j] *= s
    return psi


def count_nodes(values) -> int:
    """Strict sign changes, ignoring entries with |v| < 1e-13 max|v|."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return 0
    v = v[np.abs(v) >= 1e-13 * np.max(np.abs(v))]
    s = np.signbit(v)
    return int(np.count_nonzero(s[1:] != s[:-1]))


class _Shooter:
    def __init__(self, potential: Callable, grid: GridSpec, start_power: Optional[float]):
        self.x = grid.x
        self.h = grid.h
        self.v = np.asarray(potential(self.x), dtype=float)
        if not np.all(np.isfinite(self.v)):
            raise DomainError("potential is not finite on the grid")
        self.match = int(np.argmin(self.v))
        self.match = min(max(self.match, 2), len(self.x) - 3)
        self.start_power = start_power

    def _power(self, f, i0):
        if self.start_power is not None:
            return self.start_power
        # psi ~ x^s with s(s-1) = A for v ~ A/x^2 near the origin
        A = max(f[i0] * self.x[i0] ** 2, 0.0)
        return 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * A))

    def outward(self, E):
        f = self.v - E
        c = self.h * self.h / 12.0
        i0 = int(np.argmax(c * np.abs(f) < _START_C))
        return _outward(f, self.h, self.x, self._power(f, i0))

    def nodes(self, E) -> int:
        return self.outward(E)[1]

    def mismatch(self, E) -> float:
        psi_o = self.outward(E)[0]
        psi_i = _inward(self.v - E, self.h, self.match - 1)
        m = self.match
        o0, o1 = psi_o[m], psi_o[m + 1]
        i0, i1 = psi_i[m], psi_i[m + 1]
        return (o1 * i0 - i1 * o0) / (math.hypot(o0, o1) * math.hypot(i0, i1))

    def state(self, E) -> np.ndarray:
        psi_o = self.outward(E)[0]
        psi_i = _inward(self.v - E, self.h, self.match - 1)
        m = self.match
        scale = psi_o[m] / psi_i[m] if psi_i[m] != 0 else psi_o[m + 1] / psi_i[m + 1]
        psi = np.where(np.arange(len(self.x)) <= m, psi_o, psi_i * scale)
        norm = math.sqrt(np.trapezoid(psi * psi, self.x))
        return psi / norm


@dataclass(frozen=True)
class NumerovResult:
    eps: float
    x: np.ndarray
    psi: np.ndarray


def _bracket(sh: _Shooter, n: int, e_lo: float, e_hi: float, width: float):
    if sh.nodes(e_hi) <= n:
        raise NoEigenvalueError(f"fewer than {n + 1} levels below E = {e_hi!r}")
    lo, hi = e_lo, e_hi
    n_lo, n_hi = sh.nodes(lo), sh.nodes(hi)
    if n_lo > n:
        raise NoEigenvalueError(f"more than {n} levels below the lower bracket {e_lo!r}")
    while not (n_lo == n and n_hi == n + 1):
        if hi - lo < width:
            break
        mid = 0.5 * (lo + hi)
        c = sh.nodes(mid)
        if c > n:
            hi, n_hi = mid, c
        else:
            lo, n_lo = mid, c
    return lo, hi


def numerov_solve(
    potential: Callable,
    n: int,
    grid: GridSpec,
    tol: float = 1e-10,
    e_range: Optional[tuple[float, float]] = None,
    start_power: Optional[float] = None,
) -> NumerovResult:
    """n-th eigenpair of -psi'' + v psi = eps psi on ``grid``.

    ``e_range`` defaults to [min v, v(x_max)]; energies are resolved to
    ``tol * scale`` with scale = max(|e_hi|, e_hi - e_lo).
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    sh = _Shooter(potential, grid, start_power)
    e_lo, e_hi = e_range if e_range is not None else (float(sh.v.min()), float(sh.v[-1]))
    scale = max(abs(e_hi), e_hi - e_lo)
    lo, hi = _bracket(sh, n, e_lo, e_hi, tol * scale)
    f_lo, f_hi = sh.mismatch(lo), sh.mismatch(hi)
    if f_lo * f_hi < 0:
        eps = brentq(sh.mismatch, lo, hi, xtol=1e-3 * tol * scale, rtol=4 * np.finfo(float).eps)
    else:
        # degenerate bracket: finish on node counts alone
        while hi - lo > tol * scale:
            mid = 0.5 * (lo + hi)
            if sh.nodes(mid) > n:
                hi = mid
            else:
                lo = mid
        eps = 0.5 * (lo + hi)
    return NumerovResult(float(eps), sh.x, sh.state(eps))


def numerov_eigenvalue(potential: Callable, n: int, grid: GridSpec, tol: float = 1e-10, **kw) -> float:
    return numerov_solve(potential, n, grid, tol, **kw).eps


def count_levels(potential: Callable, grid: GridSpec, energy: float, start_power: Optional[float] = None) -> int:
    """Number of eigenvalues below ``energy`` (outward node count)."""
    return _Shooter(potential, grid, start_power).nodes(energy)
