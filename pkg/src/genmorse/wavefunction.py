"""Bound-state eigenfunctions in the variable y = 1/(e^x - 1).

    Phi_n(y) = N_n y^alpha_n (1+y)^(-beta_n) 2F1(-n, -n+1-2l; 2 alpha_n + 1; -y)

The prefactor is always evaluated as ``exp(log N + alpha log y - beta log(1+y))``
so that the large exponents of deep wells (l ~ 50) never overflow. Normalization
is with respect to dx = dy / [y (1+y)], i.e. a = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from genmorse.core import GmpModel, LevelRecord, level
from genmorse.errors import DomainError, LabelError

__all__ = [
    "BoundState",
    "RadialPoint",
    "bound_state",
    "hyp2f1_terminating",
    "hyp2f1_coefficients",
    "log_normalization",
    "normalization",
    "eval_phi",
    "eval_psi",
    "eval_dphi_dy",
    "eval_dpsi_dx",
    "physical_psi",
    "state_from_label",
    "label_from_state",
    "y_of_x",
    "x_of_y",
    "log_y_of_x",
]


def _check_c(n: int, c: float):
    if c <= 0 and c == int(c) and c >= -n + 1:
        raise DomainError(f"c = {c} hits a pole of the terminating series of degree {n}")


def hyp2f1_coefficients(n: int, s: float, c: float) -> np.ndarray:
    """Coefficients t_j of z^j in 2F1(-n, s; c; z), built by the term ratio."""
    if n < 0 or n != int(n):
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    n = int(n)
    _check_c(n, c)
    t = np.empty(n + 1)
    t[0] = 1.0
    for j in range(n):
        t[j + 1] = t[j] * (-n + j) * (s + j) / ((c + j) * (j + 1))
    return t


def hyp2f1_terminating(n: int, s: float, c: float, z):
    """Finite sum of 2F1(-n, s; c; z) via t_{j+1} = t_j (-n+j)(s+j) z / ((c+j)(j+1))."""
    t = hyp2f1_coefficients(n, s, c)
    z = np.asarray(z, dtype=float)
    out = np.full_like(z, t[-1])
    for coef in t[-2::-1]:
        out = out * z + coef
    return out if out.ndim else float(out)


def log_normalization(model: GmpModel, n: int) -> float:
    """log N_n of the closed form, combined entirely in log-Gamma space (a = 1)."""
    rec = level(model, n)
    a2 = 2.0 * rec.alpha_n
    l = model.l
    return 0.5 * (
        math.log(rec.alpha_n + n + l)
        + gammaln(a2 + n + 1)
        + gammaln(a2 + n + 2 * l)
        - gammaln(n + 1)
        - math.log(n + l)
        - gammaln(a2)
        - gammaln(a2 + 1)
        - gammaln(n + 2 * l)
    )


def normalization(model: GmpModel, n: int, a: float = 1.0) -> float:
    """Closed-form N_n; ``a`` carries the sqrt(a) of physical units."""
    log_n = log_normalization(model, n) + 0.5 * math.log(a)
    if log_n > 709.0:
        raise OverflowError(f"N_{n} = exp({log_n:.1f}) is not representable as a float")
    return math.exp(log_n)


def log_y_of_x(x):
    """log y for y = 1/(e^x - 1), stable at both ends."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("x must be positive")
    with np.errstate(over="ignore"):
        small = -np.log(np.expm1(np.minimum(x, 30.0)))
    large = -(x + np.log1p(-np.exp(-np.maximum(x, 30.0))))
    return np.where(x < 30.0, small, large)


def y_of_x(x):
    return np.exp(log_y_of_x(x))


def x_of_y(y):
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise DomainError("y must be positive")
    return np.log1p(1.0 / y)


@dataclass(frozen=True)
class RadialPoint:
    x: float
    y: float = field(init=False)

    def __post_init__(self):
        if not self.x > 0:
            raise DomainError("x must be positive")
        object.__setattr__(self, "y", float(y_of_x(self.x)))


def _horner(coefs, t):
    out = np.full_like(t, coefs[-1])
    for c in coefs[-2::-1]:
        out = out * t + c
    return out


@dataclass(frozen=True, eq=False)
class BoundState:
    """One normalized GMP eigenfunction with its cached polynomial factor.

    ``poly[j]`` is the coefficient of y^j in 2F1(-n, -n+1-2l; 2 alpha_n + 1; -y).
    """

    model: GmpModel
    level: LevelRecord
    log_N: float
    poly: np.ndarray

    @property
    def n(self) -> int:
        return self.level.n

    @property
    def alpha(self) -> float:
        return self.level.alpha_n

    @property
    def beta(self) -> float:
        return self.level.beta_n

    @property
    def N_n(self) -> float:
        return math.exp(self.log_N)

    def _parts(self, log_y):
        """Return (log prefactor, P/y^s, P'/y^s) with s = 0 for y<=1 and s = n for y>1.

        Splitting on y keeps the polynomial factor O(1) for tiny x (huge y).
        """
        log_y = np.asarray(log_y, dtype=float)
        log_1py = np.logaddexp(0.0, log_y)
        y = np.exp(np.minimum(log_y, 0.0))
        t = np.exp(-np.maximum(log_y, 0.0))
        n = self.n
        big = log_y > 0
        c = self.poly
        dc = c[1:] * np.arange(1, n + 1)

        p_small = _horner(c, y)
        dp_small = _horner(dc, y) if n else np.zeros_like(y)
        # P(y)/y^n = sum c_j t^(n-j);  P'(y)/y^n = t * sum j c_j t^(n-j)
        p_big = _horner(c[::-1], t)
        dp_big = t * _horner(dc[::-1], t) if n else np.zeros_like(t)

        log_pref = self.log_N + self.alpha * log_y - self.beta * log_1py
        log_pref = np.where(big, log_pref + n * log_y, log_pref)
        return log_y, log_1py, log_pref, np.where(big, p_big, p_small), np.where(big, dp_big, dp_small)

    def _phi_log(self, log_y):
        _, _, lp, p, _ = self._parts(log_y)
        return np.exp(lp) * p

    def _dphi_log(self, log_y):
        """Return dPhi/dy multiplied by y(1+y), i.e. -dpsi/dx."""
        log_y, log_1py, lp, p, dp = self._parts(log_y)
        # y(1+y) Phi' = pref * [(alpha (1+y) - beta y) P + y(1+y) P']; fold y(1+y) into log.
        inv_y = np.exp(-log_y)
        inv_1py = np.exp(-log_1py)
        bracket = (self.alpha * inv_y - self.beta * inv_1py) * p + dp
        return np.exp(lp + log_y + log_1py) * bracket

    def phi(self, y):
        y = np.asarray(y, dtype=float)
        if np.any(y <= 0):
            raise DomainError("y must be positive")
        out = self._phi_log(np.log(y))
        return out if out.ndim else float(out)

    def psi(self, x):
        out = self._phi_log(log_y_of_x(x))
        return out if out.ndim else float(out)

    def dphi_dy(self, y):
        y = np.asarray(y, dtype=float)
        if np.any(y <= 0):
            raise DomainError("y must be positive")
        out = self._dphi_log(np.log(y)) / (y * (1.0 + y))
        return out if out.ndim else float(out)

    def dpsi_dx(self, x):
        out = -self._dphi_log(log_y_of_x(x))
        return out if out.ndim else float(out)

    def tail_cutoff(self, tol: float = 1e-12) -> float:
        """x beyond which N e^(-alpha x) < tol."""
        return max((self.log_N - math.log(tol)) / self.alpha, 2.0 * self.model.x_e + 1.0)


def bound_state(model: GmpModel, n: int) -> BoundState:
    rec = level(model, n)
    coefs = hyp2f1_coefficients(n, -n + 1 - 2 * model.l, 2 * rec.alpha_n + 1)
    poly = coefs * (-1.0) ** np.arange(n + 1)
    return BoundState(model, rec, log_normalization(model, n), poly)


def eval_phi(state: BoundState, y):
    return state.phi(y)


def eval_psi(state: BoundState, x):
    return state.psi(x)


def eval_dphi_dy(state: BoundState, y):
    return state.dphi_dy(y)


def eval_dpsi_dx(state: BoundState, x):
    return state.dpsi_dx(x)


def physical_psi(state: BoundState, r):
    """Psi(r) = sqrt(a) psi(a r) for a model built from physical parameters."""
    p = state.model.physical
    if p is None:
        raise DomainError("state carries no physical parameters")
    return math.sqrt(p.a) * state.psi(p.a * np.asarray(r, dtype=float))


def state_from_label(l: float, m: float, g: float) -> BoundState:
    """Rebuild the bound state carrying (l, m, g), including its implied (k, b).

    With C = -l(l-1) and m = C (b+2)/(g b): b = 2C/(m g - C) and k = -C/b^2.
    """
    from genmorse.core import AlgebraLabel

    n = AlgebraLabel(l, m, g).require_bound()
    C = -l * (l - 1.0)
    den = m * g - C
    if den == 0:
        raise LabelError("m g == C gives no finite b")
    b = 2.0 * C / den
    if not b > 0:
        raise LabelError(f"label implies non-physical b = {b!r}")
    model = GmpModel(-C / (b * b), b)
    if n > model.n_max:
        raise LabelError(f"level {n} is not bound in the implied model")
    return bound_state(model, n)


def label_from_state(state: BoundState):
    from genmorse.core import AlgebraLabel

    return AlgebraLabel(state.model.l, state.alpha + state.beta, state.alpha - state.beta)
