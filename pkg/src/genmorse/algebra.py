"""so(2,2) = su(1,1) + su(1,1) acting on GMP bound states.

An extended wave function exp(i m xi) Phi(y) exp(i g eta) with m = alpha + beta and
g = alpha - beta is moved by G^{+-} (g -> g +- 1, m fixed) and M^{+-} (m -> m +- 1,
g fixed). Each step lands on a bound state of a *different* GMP, a satellite,
sharing k b^2 (and hence D b^2 / a^2). The auxiliary angles are never
discretized: derivatives in xi and eta act as i m and i g.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from genmorse.core import AlgebraLabel, GmpModel, PhysicalParams, level
from genmorse.errors import DomainError, StepError
from genmorse.wavefunction import BoundState, bound_state, hyp2f1_coefficients, label_from_state

__all__ = [
    "AlgebraLabel",
    "Direction",
    "SatelliteEnd",
    "SatelliteStep",
    "PtpMap",
    "ladder_coeff",
    "target_label",
    "reduced_ladder_apply",
    "satellite_step",
    "satellite_chain",
    "satellite_state",
    "casimir_check",
    "ptp_map",
    "ptp_bound_count",
    "ptp_potential",
    "ptp_chi",
    "is_integral",
]

RADICAND_DUST = 1e-12
_DEN_GUARD = 1e-14


class Direction(str, enum.Enum):
    G_PLUS = "g+"
    G_MINUS = "g-"
    M_PLUS = "m+"
    M_MINUS = "m-"
    G3 = "g3"
    M3 = "m3"

    @classmethod
    def parse(cls, value) -> "Direction":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower().replace("−", "-"))
        except ValueError:
            raise DomainError(f"unknown ladder direction {value!r}") from None

    @property
    def is_step(self) -> bool:
        return self not in (Direction.G3, Direction.M3)


def target_label(label: AlgebraLabel, direction) -> AlgebraLabel:
    d = Direction.parse(direction)
    dm, dg = {
        Direction.G_PLUS: (0, 1),
        Direction.G_MINUS: (0, -1),
        Direction.M_PLUS: (1, 0),
        Direction.M_MINUS: (-1, 0),
        Direction.G3: (0, 0),
        Direction.M3: (0, 0),
    }[d]
    return AlgebraLabel(label.l, label.m + dm, label.g + dg)


def _radical(num: float, den: float, what: str) -> float:
    if abs(den) < _DEN_GUARD:
        raise DomainError(f"{what}: vanishing denominator")
    r = num / den
    if r < -RADICAND_DUST:
        raise DomainError(f"{what}: negative radicand {r!r} outside the bound-state region")
    return math.sqrt(max(r, 0.0)) + 0.0


def _coeff(l: float, m: float, g: float, d: Direction) -> float:
    if d is Direction.G_PLUS:
        return 0.0 - _radical(
            (g + 1) * (m - g) * (m + g) * (g + l) * (g - l + 1), g * (m - g - 1) * (m + g + 1), "G+"
        )
    if d is Direction.G_MINUS:
        return 0.0 - _radical(
            (g - 1) * (m - g) * (m + g) * (g - l) * (g + l - 1), g * (m - g + 1) * (m + g - 1), "G-"
        )
    if d is Direction.M_PLUS:
        return _radical((m - g) * (m + g) * (m + l) * (m - l + 1), (m - g + 1) * (m + g + 1), "M+")
    if d is Direction.M_MINUS:
        return _radical((m - g) * (m + g) * (m - l) * (m + l - 1), (m - g - 1) * (m + g - 1), "M-")
    return g if d is Direction.G3 else m


def _label_function(label: AlgebraLabel, y):
    """Unnormalized y^alpha (1+y)^-beta 2F1(g+l, g+1-l; m+g+1; -y) and its y-derivative.

    Only terminating labels (g + l a non-positive integer) are supported; this
    covers the boundary weight vectors that are not normalizable bound states.
    """
    n = label.n
    if abs(n - round(n)) > 1e-9 * max(1.0, abs(n)) or round(n) < 0:
        raise DomainError("label does not give a terminating polynomial")
    n = int(round(n))
    coefs = hyp2f1_coefficients(n, label.g + 1 - label.l, label.m + label.g + 1)
    poly = coefs * (-1.0) ** np.arange(n + 1)
    p = np.polynomial.polynomial.polyval(y, poly)
    dp = np.polynomial.polynomial.polyval(y, poly[1:] * np.arange(1, n + 1)) if n else 0.0 * y
    base = np.exp(label.alpha * np.log(y) - label.beta * np.log1p(y))
    phi = base * p
    return phi, phi * (label.alpha / y - label.beta / (1.0 + y)) + base * dp


def ladder_coeff(label: AlgebraLabel, direction) -> float:
    """Coefficient of the target extended function for one generator.

    G+ -> -sqrt((g+1)(m-g)(m+g)(g+l)(g-l+1) / [g(m-g-1)(m+g+1)])
    G- -> -sqrt((g-1)(m-g)(m+g)(g-l)(g+l-1) / [g(m-g+1)(m+g-1)])
    M+ ->  sqrt((m-g)(m+g)(m+l)(m-l+1) / [(m-g+1)(m+g+1)])
    M- ->  sqrt((m-g)(m+g)(m-l)(m+l-1) / [(m-g-1)(m+g-1)])

    G3 and M3 are diagonal and return g and m. Radicands in [-1e-12, 0) are
    rounding dust at annihilation points and clamp to zero.
    """
    return _coeff(label.l, label.m, label.g, Direction.parse(direction))


def reduced_ladder_apply(state, direction, y) -> np.ndarray:
    """Pointwise action of a generator on Phi(y), phases stripped.

    ``state`` is a :class:`BoundState` or, for boundary weight vectors that are
    not normalizable, an :class:`AlgebraLabel` (acted on unnormalized).

    With d/dxi -> i m and d/deta -> i g the generators reduce to
        G+- Phi = -1/2 [-+2 s Phi' + (m+g) sqrt((1+y)/y) Phi - (m-g) sqrt(y/(1+y)) Phi]
        M+- Phi = +1/2 [-+2 s Phi' + (m+g) sqrt((1+y)/y) Phi + (m-g) sqrt(y/(1+y)) Phi]
    with s = sqrt(y (1+y)).
    """
    d = Direction.parse(direction)
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise DomainError("y must be positive")
    if isinstance(state, AlgebraLabel):
        lab = state
        phi, dphi = _label_function(lab, y)
    else:
        lab = label_from_state(state)
        phi, dphi = state.phi(y), None
    m, g = lab.m, lab.g
    if d is Direction.G3:
        return g * phi
    if d is Direction.M3:
        return m * phi
    s = np.sqrt(y * (1.0 + y))
    if dphi is None:
        dphi = state.dphi_dy(y)
    sign = -1.0 if d in (Direction.G_PLUS, Direction.M_PLUS) else 1.0
    inner = sign * 2.0 * s * dphi + (m + g) * np.sqrt((1.0 + y) / y) * phi
    tail = (m - g) * np.sqrt(y / (1.0 + y)) * phi
    if d in (Direction.G_PLUS, Direction.G_MINUS):
        return -0.5 * (inner - tail)
    return 0.5 * (inner + tail)


@dataclass(frozen=True)
class SatelliteEnd:
    k: float
    b: float
    n: int
    label: AlgebraLabel
    physical: Optional[PhysicalParams] = None

    @property
    def model(self) -> GmpModel:
        return GmpModel(self.k, self.b, physical=self.physical)


@dataclass(frozen=True)
class SatelliteStep:
    direction: Direction
    coeff: float
    source: SatelliteEnd
    target: SatelliteEnd


def satellite_step(model: GmpModel, n: int, direction) -> SatelliteStep:
    """Move level ``n`` of ``model`` to its satellite along one generator.

    G+-: b' = 2 g b / (2g +- b +- 2), n' = n -+ 1.
    M+-: b' = 2 C b / (2C +- g b),    n' = n.
    In both cases k' = k b^2 / b'^2. With physical parameters, a, mu and hbar
    are held fixed so D alone absorbs the change of k.
    """
    d = Direction.parse(direction)
    if not d.is_step:
        raise StepError(f"{d.value} is diagonal and has no satellite")
    src = AlgebraLabel.of_level(model, n)
    g, b, C = src.g, model.b, model.C
    if d is Direction.G_PLUS:
        den, num, n_new = 2 * g + b + 2, 2 * g * b, n - 1
    elif d is Direction.G_MINUS:
        den, num, n_new = 2 * g - b - 2, 2 * g * b, n + 1
    elif d is Direction.M_PLUS:
        den, num, n_new = 2 * C + g * b, 2 * C * b, n
    else:
        den, num, n_new = 2 * C - g * b, 2 * C * b, n
    if abs(den) < _DEN_GUARD:
        raise StepError(f"{d.value} from n={n}: vanishing denominator in b'")
    b_new = num / den
    if not b_new > 0:
        raise StepError(f"{d.value} from n={n}: b' = {b_new!r} leaves the physical domain")
    if n_new < 0:
        raise StepError(f"{d.value} annihilates the highest-weight state n=0")
    tgt = target_label(src, d)
    if tgt.alpha <= 0:
        raise StepError(f"{d.value} from n={n}: target alpha = {tgt.alpha!r} is not bound")
    k_new = model.kb2 / (b_new * b_new)

    p = model.physical
    p_new = None
    if p is not None:
        D_new = k_new * p.energy_scale
        p_new = PhysicalParams(D_new, p.a, math.log1p(b_new) / p.a, p.mu, p.hbar)
    target_model = GmpModel(k_new, b_new)
    if n_new > target_model.n_max:
        raise StepError(f"{d.value} from n={n}: level {n_new} not bound in the satellite")
    return SatelliteStep(
        d,
        ladder_coeff(src, d),
        SatelliteEnd(model.k, model.b, n, src, p),
        SatelliteEnd(k_new, b_new, n_new, tgt, p_new),
    )


def satellite_chain(model: GmpModel, n: int, directions: Sequence) -> list[SatelliteStep]:
    steps = []
    for d in directions:
        step = satellite_step(model, n, d)
        steps.append(step)
        model, n = step.target.model, step.target.n
    return steps


def satellite_state(step: SatelliteStep) -> BoundState:
    return bound_state(step.target.model, step.target.n)


def casimir_check(label: AlgebraLabel, which: str = "G") -> float:
    """Evaluate -X+ X- + X3^2 - X3 on the label through the ladder coefficients.

    The direct ordering needs the coefficient of X- at the label and of X+ one
    step down. Where X- leaves the region with real coefficients (e.g. its
    target has alpha < 0) the equivalent ordering -X- X+ + X3^2 + X3 is used,
    which at a highest weight reduces to X3^2 + X3 by annihilation.
    """
    l, m, g = label.l, label.m, label.g
    if which.upper() == "G":
        w, lower, raise_, shift = g, Direction.G_MINUS, Direction.G_PLUS, (0, -1)
    elif which.upper() == "M":
        w, lower, raise_, shift = m, Direction.M_MINUS, Direction.M_PLUS, (-1, 0)
    else:
        raise DomainError("which must be 'G' or 'M'")
    try:
        down = _coeff(l, m, g, lower)
        back = _coeff(l, m + shift[0], g + shift[1], raise_)
        return -back * down + w * w - w
    except DomainError:
        pass
    up = _coeff(l, m, g, raise_)
    if up == 0.0:
        return w * w + w
    back = _coeff(l, m - shift[0], g - shift[1], lower)
    return -back * up + w * w + w


@dataclass(frozen=True)
class PtpMap:
    m1_abs: float
    m2_abs: float
    eps_bar: float


def ptp_map(model: GmpModel, n: int) -> PtpMap:
    """Poeschl-Teller data of a bound level: |m1| = 2 beta_n, |m2| = 2 alpha_n, eps = 4C - 1."""
    rec = level(model, n)
    return PtpMap(2.0 * rec.beta_n, 2.0 * rec.alpha_n, 4.0 * model.C - 1.0)


def is_integral(value: float, tol: float = 1e-9) -> bool:
    return abs(value - round(value)) <= tol * max(1.0, abs(value))


def ptp_bound_count(m1_abs: float, m2_abs: float) -> int:
    """Number of L values L_max, L_max-2, ... >= 0 with L_max = |m1| - |m2| - 2.

    Zero whenever |m2| - |m1| >= -1. Non-integer differences (which arise from
    the GMP side) are counted the same way; see :func:`is_integral`.
    """
    if m1_abs < 0 or m2_abs < 0:
        raise DomainError("|m1| and |m2| must be non-negative")
    diff = m1_abs - m2_abs
    if -diff >= -1:
        return 0
    if is_integral(diff):
        d = int(round(diff))
        return d // 2 if (d - 2) % 2 == 0 else (d - 1) // 2
    return int(math.floor(diff / 2.0))


def ptp_potential(theta, m1_abs: float, m2_abs: float):
    """(m2^2 - 1/4)/sinh^2 theta - (m1^2 - 1/4)/cosh^2 theta."""
    theta = np.asarray(theta, dtype=float)
    return (m2_abs**2 - 0.25) / np.sinh(theta) ** 2 - (m1_abs**2 - 0.25) / np.cosh(theta) ** 2


def ptp_chi(state: BoundState, theta):
    """chi(theta) = [y(1+y)]^(1/4) Phi(y) at y = sinh^2 theta."""
    theta = np.asarray(theta, dtype=float)
    y = np.sinh(theta) ** 2
    return (y * (1.0 + y)) ** 0.25 * state.phi(y)
