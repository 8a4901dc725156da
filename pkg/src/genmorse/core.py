"""Parameters, dimensionless reduction and the analytic bound-state spectrum.

The generalized Morse potential in physical units is

    V(r) = D [1 - b / (exp(a r) - 1)]^2,    b = exp(a r_e) - 1,

and with x = a r the radial problem becomes ``-psi'' + v(x) psi = eps psi`` with
``v(x) = k (1 - b / (e^x - 1))^2``. Everything in this module works with the
dimensionless pair (k, b); physical units are a thin conversion layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from genmorse.errors import DomainError, LevelIndexError

__all__ = [
    "PhysicalParams",
    "GmpModel",
    "LevelRecord",
    "AlgebraLabel",
    "reduce",
    "shape_constants",
    "level_count",
    "level",
    "levels",
    "dunham_coefficients",
    "morse_energy",
    "morse_energy_dimensionless",
]


@dataclass(frozen=True)
class PhysicalParams:
    """A GMP in physical units. ``mu = hbar = 1`` is the default convention."""

    D: float
    a: float
    r_e: float
    mu: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("D", "a", "r_e", "mu", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")

    @property
    def energy_scale(self) -> float:
        """a^2 hbar^2 / (2 mu): converts dimensionless energies to physical ones."""
        return self.a**2 * self.hbar**2 / (2.0 * self.mu)

    @property
    def f(self) -> float:
        """The satellite-invariant combination D b^2 / a^2."""
        b = math.expm1(self.a * self.r_e)
        return self.D * b * b / self.a**2

    def potential(self, r):
        r = np.asarray(r, dtype=float)
        b = math.expm1(self.a * self.r_e)
        return self.D * (1.0 - b / np.expm1(self.a * r)) ** 2


def shape_constants(k: float, b: float) -> tuple[float, float]:
    """Return ``(l, C)`` with ``C = -k b^2`` and ``l = (1 + sqrt(1 - 4C)) / 2``."""
    if not (k > 0 and b > 0):
        raise DomainError(f"k and b must be positive, got k={k!r}, b={b!r}")
    C = -k * b * b
    return 0.5 * (1.0 + math.sqrt(1.0 - 4.0 * C)), C


@dataclass(frozen=True)
class GmpModel:
    """Dimensionless GMP with its derived constants.

    ``n_max == -1`` encodes a potential without bound states.
    """

    k: float
    b: float
    l: float = field(init=False)
    C: float = field(init=False)
    n_max: int = field(init=False)
    physical: Optional[PhysicalParams] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        l, C = shape_constants(self.k, self.b)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "n_max", _count(self.k, self.b, l))

    @classmethod
    def from_physical(cls, p: PhysicalParams) -> "GmpModel":
        return reduce(p)

    @property
    def K(self) -> float:
        """k b (b + 2) = beta_n^2 - alpha_n^2, the same for every level."""
        return self.k * self.b * (self.b + 2.0)

    @property
    def kb2(self) -> float:
        return self.k * self.b * self.b

    @property
    def x_e(self) -> float:
        """Position of the potential minimum, ln(1 + b)."""
        return math.log1p(self.b)

    def alpha(self, n):
        u = np.asarray(n, dtype=float) + self.l
        return 0.5 * (self.K / u - u)

    def beta(self, n):
        u = np.asarray(n, dtype=float) + self.l
        return 0.5 * (self.K / u + u)

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        return self.k * (1.0 - self.b / np.expm1(x)) ** 2

    def levels(self) -> list["LevelRecord"]:
        return levels(self)

    def level(self, n: int) -> "LevelRecord":
        return level(self, n)


def _count(k: float, b: float, l: float) -> int:
    K = k * b * (b + 2.0)
    n = max(math.ceil(math.sqrt(K) - l) - 1, -1)
    # alpha_n > 0 is the admission rule; fix up float fuzz at the boundary
    while n >= 0 and K / (n + l) - (n + l) <= 0:
        n -= 1
    while K / (n + 1 + l) - (n + 1 + l) > 0:
        n += 1
    return n


def reduce(p: PhysicalParams) -> GmpModel:
    """Map physical parameters onto the dimensionless model (k, b)."""
    k = 2.0 * p.mu * p.D / (p.a**2 * p.hbar**2)
    b = math.expm1(p.a * p.r_e)
    return GmpModel(k, b, physical=p)


def level_count(model: GmpModel) -> int:
    """Largest n with n + l < sqrt(k b (b+2)); -1 when there is none."""
    return model.n_max


@dataclass(frozen=True)
class LevelRecord:
    n: int
    alpha_n: float
    beta_n: float
    eps_n: float
    E_n: Optional[float] = None


def level(model: GmpModel, n: int) -> LevelRecord:
    """Closed-form level ``n``: exponents, dimensionless energy and, if known, E_n."""
    if n != int(n) or n < 0 or n > model.n_max:
        raise LevelIndexError(f"level {n} is not bound (n_max = {model.n_max})")
    n = int(n)
    u = n + model.l
    alpha = 0.5 * (model.K / u - u)
    beta = 0.5 * (model.K / u + u)
    E = None
    p = model.physical
    if p is not None:
        E = p.D - p.a**2 * p.hbar**2 / (8.0 * p.mu) * (u - model.K / u) ** 2
    return LevelRecord(n, alpha, beta, model.k - alpha * alpha, E)


def levels(model: GmpModel) -> list[LevelRecord]:
    return [level(model, n) for n in range(model.n_max + 1)]


def _dunham_taylor(model: GmpModel, order: int) -> np.ndarray:
    # eps(nu) = k - alpha(nu)^2 with alpha = (K/u - u)/2, u = nu + l - 1/2.
    # K/u is a geometric series about u0 = l - 1/2 (radius u0 > 1/2).
    u0 = model.l - 0.5
    j = np.arange(order + 1)
    a = 0.5 * (model.K / u0) * (-1.0 / u0) ** j
    a[0] -= 0.5 * u0
    if order >= 1:
        a[1] -= 0.5
    sq = np.convolve(a, a)[: order + 1]
    c = -sq
    c[0] += model.k
    return c


def dunham_coefficients(model: GmpModel, order: int, physical: bool = False) -> np.ndarray:
    """Coefficients eps(0..order) of the expansion of the energy in nu = n + 1/2.

    Signs follow E = eps(0) + eps(1) nu - eps(2) nu^2 + eps(3) nu^3 - ...,
    i.e. every even coefficient from order 2 on is stored negated.

    The expansion is exact power-series arithmetic on the level formula viewed
    as a smooth function of nu, so it stays accurate at high order where finite
    differences would drown in round-off.
    """
    if order < 0:
        raise DomainError("order must be non-negative")
    c = _dunham_taylor(model, order)
    sign = np.ones(order + 1)
    sign[2::2] = -1.0
    eps = sign * c
    if physical:
        if model.physical is None:
            raise DomainError("model carries no physical parameters")
        eps = eps * model.physical.energy_scale
    return eps


def morse_energy_dimensionless(k: float, n) -> float:
    """Morse level in units of a^2 hbar^2 / 2 mu: 2 sqrt(k) nu - nu^2."""
    nu = np.asarray(n, dtype=float) + 0.5
    return 2.0 * math.sqrt(k) * nu - nu * nu


def morse_energy(p: PhysicalParams, n) -> float:
    """Morse level sqrt(2D/mu) a hbar (n+1/2) - a^2 hbar^2 (n+1/2)^2 / 2 mu."""
    if np.any(np.asarray(n) < 0):
        raise DomainError("n must be non-negative")
    nu = np.asarray(n, dtype=float) + 0.5
    return math.sqrt(2.0 * p.D / p.mu) * p.a * p.hbar * nu - p.energy_scale * nu * nu


@dataclass(frozen=True)
class AlgebraLabel:
    """(l, m, g) triple indexing an extended wave function of the so(2,2) irrep.

    m = alpha + beta, g = alpha - beta. A label is built for any real (m, g) so
    that boundary weight vectors (such as m = l) can be represented; use
    :meth:`require_bound` where a genuine bound state is needed.
    """

    l: float
    m: float
    g: float

    def __post_init__(self):
        if not (math.isfinite(self.l) and self.l > 1):
            raise DomainError(f"irrep label l must exceed 1, got {self.l!r}")

    @property
    def n(self) -> float:
        return -self.l - self.g

    @property
    def alpha(self) -> float:
        return 0.5 * (self.m + self.g)

    @property
    def beta(self) -> float:
        return 0.5 * (self.m - self.g)

    @property
    def C(self) -> float:
        return -self.l * (self.l - 1.0)

    @property
    def is_bound(self) -> bool:
        n = self.n
        return abs(n - round(n)) <= 1e-9 * max(1.0, abs(n)) and round(n) >= 0 and self.alpha > 0

    def require_bound(self) -> int:
        from genmorse.errors import LabelError

        n = self.n
        if abs(n - round(n)) > 1e-9 * max(1.0, abs(n)) or round(n) < 0:
            raise LabelError(f"n = -l - g = {n!r} is not a non-negative integer")
        if self.alpha <= 0:
            raise LabelError(f"alpha = (m + g)/2 = {self.alpha!r} must be positive")
        return int(round(n))

    @classmethod
    def of_level(cls, model: GmpModel, n: int) -> "AlgebraLabel":
        rec = level(model, n)
        return cls(model.l, rec.alpha_n + rec.beta_n, rec.alpha_n - rec.beta_n)
