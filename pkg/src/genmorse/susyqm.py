"""Factorization h = A+ A- + eps_0 of the GMP Hamiltonian and its partner chain.

A+- = -+ d/dx + W(x) with W = -(ln psi_0)'. The partner potential v + 2W' is
again a GMP with l -> l + 1, shifted by a constant R, which is what makes the
spectrum solvable level by level and yields the normalization recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from genmorse.core import GmpModel, level
from genmorse.errors import DomainError, SingularityError
from genmorse.wavefunction import BoundState, bound_state, log_y_of_x

__all__ = [
    "PartnerModel",
    "superpotential",
    "superpotential_derivative",
    "apply_A",
    "partner",
    "partner_chain",
    "partner_potential_direct",
    "partner_state",
    "intertwined_partner",
    "normalization_recursion",
    "log_normalization_recursion",
]


def _ground(model: GmpModel):
    if model.n_max < 0:
        raise DomainError("model has no bound states, W is undefined")
    return level(model, 0)


def superpotential(model: GmpModel, x):
    """W(x) = (alpha_0 e^x - beta_0)/(e^x - 1) = alpha_0 - l y."""
    rec = _ground(model)
    y = np.exp(log_y_of_x(x))
    return rec.alpha_n + (rec.alpha_n - rec.beta_n) * y


def superpotential_derivative(model: GmpModel, x):
    """W'(x) = l e^x / (e^x - 1)^2 = l y (1 + y)."""
    _ground(model)
    log_y = log_y_of_x(x)
    return model.l * np.exp(log_y + np.logaddexp(0.0, log_y))


def apply_A(state: BoundState, sign: int, x):
    """Values of A+ psi (sign=+1) or A- psi (sign=-1) on the grid ``x``."""
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    x = np.asarray(x, dtype=float)
    w = superpotential(state.model, x)
    return -sign * state.dpsi_dx(x) + w * state.psi(x)


@dataclass(frozen=True)
class PartnerModel:
    """Shape-invariant partner: v + 2W' = k' (1 - b'/(e^x-1))^2 + R."""

    k_prime: float
    b_prime: float
    R: float
    l_prime: float
    parent: GmpModel

    @property
    def model(self) -> GmpModel:
        return GmpModel(self.k_prime, self.b_prime)

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        return self.k_prime * (1.0 - self.b_prime / np.expm1(x)) ** 2 + self.R

    @property
    def R_closed(self) -> float:
        """The displayed closed form (k'b' - 1 + l')^2 / (k'b'^2 + 2 - 2l') - k'."""
        kp, bp, lp = self.k_prime, self.b_prime, self.l_prime
        return (kp * bp - 1 + lp) ** 2 / (kp * bp * bp + 2 - 2 * lp) - kp

    def energy(self, n: int) -> float:
        """Partner level n: k - alpha'_n^2 (= eps_{n+1} of the parent)."""
        return self.parent.k - float(self.model.alpha(n)) ** 2


def partner(model: GmpModel) -> PartnerModel:
    k, b, l = model.k, model.b, model.l
    kb_l = k * b - l
    if abs(kb_l) < 1e-12:
        raise SingularityError("k b == l: partner parameters are singular")
    s = k * b * b + 2 * l
    k_p = kb_l**2 / s
    b_p = s / kb_l
    # R = k(k', b') - k': the original depth re-expressed through the primed pair
    R = k - k_p
    l_p = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * k_p * b_p * b_p))
    return PartnerModel(k_p, b_p, R, l_p, model)


def partner_chain(model: GmpModel, depth: int) -> list[PartnerModel]:
    chain = []
    for _ in range(depth):
        p = partner(model)
        chain.append(p)
        model = p.model
    return chain


def partner_potential_direct(model: GmpModel, x):
    """v(x) + 2 W'(x) = k (1 - b/(e^x-1))^2 + 2 l e^x/(e^x-1)^2."""
    return model.potential(x) + 2.0 * superpotential_derivative(model, x)


def partner_state(model: GmpModel, n: int) -> BoundState:
    """Directly constructed partner eigenfunction psi^(1)_n."""
    return bound_state(partner(model).model, n)


def intertwined_partner(state: BoundState, x):
    """(alpha_0^2 - alpha_n^2)^(-1/2) A- psi_n, which must equal psi^(1)_{n-1}."""
    if state.n < 1:
        raise DomainError("A- annihilates the ground state")
    a0 = level(state.model, 0).alpha_n
    return apply_A(state, -1, x) / math.sqrt(a0 * a0 - state.alpha**2)


def _log_n0(alpha: float, l: float) -> float:
    return 0.5 * (gammaln(2 * alpha + 2 * l + 1) - gammaln(2 * alpha) - gammaln(2 * l + 1))


def log_normalization_recursion(model: GmpModel, n: int) -> float:
    """log N_n from N_n = sqrt[(n+2l)(2a_n+n) / (n(2a_n+n+2l))] N'_{n-1}, seeded by N_0.

    N' belongs to the partner model; l and alpha are re-derived from each
    partner's own (k', b') rather than from the shift rules.
    """
    level(model, n)
    log_n = 0.0
    current, j = model, n
    while j > 0:
        l = current.l
        a = float(current.alpha(j))
        log_n += 0.5 * (math.log(j + 2 * l) + math.log(2 * a + j) - math.log(j) - math.log(2 * a + j + 2 * l))
        current, j = partner(current).model, j - 1
    rec0 = level(current, 0)
    return log_n + _log_n0(rec0.alpha_n, current.l)


def normalization_recursion(model: GmpModel, n: int, a: float = 1.0) -> float:
    log_n = log_normalization_recursion(model, n) + 0.5 * math.log(a)
    if log_n > 709.0:
        raise OverflowError(f"N_{n} = exp({log_n:.1f}) is not representable as a float")
    return math.exp(log_n)
