import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from genmorse import DomainError, GmpModel, PhysicalParams, SingularityError, reduce
from genmorse.numerics import GridSpec, numerov_eigenvalue
from genmorse.susyqm import (
    apply_A,
    intertwined_partner,
    log_normalization_recursion,
    normalization_recursion,
    partner,
    partner_chain,
    partner_potential_direct,
    partner_state,
    superpotential,
    superpotential_derivative,
)
from genmorse.wavefunction import bound_state, log_normalization, normalization

SMALL = GmpModel(4.0, 2.0)
DEEP = reduce(PhysicalParams(10.0, 1.0, 2.5))
MODELS = [SMALL, DEEP]


class TestSuperpotential:
    def test_is_minus_log_derivative_of_ground_state(self):
        for m in MODELS:
            s = bound_state(m, 0)
            x = np.linspace(0.3, 3 * m.x_e + 4, 200)
            h = 1e-5
            fd = -(np.log(s.psi(x + h)) - np.log(s.psi(x - h))) / (2 * h)
            assert superpotential(m, x) == pytest.approx(fd, rel=1e-8, abs=1e-8)

    def test_limit_and_zero(self):
        r = SMALL.level(0)
        assert superpotential(SMALL, 60.0) == pytest.approx(r.alpha_n, rel=1e-14)
        x0 = math.log(r.beta_n / r.alpha_n)
        assert superpotential(SMALL, x0) == pytest.approx(0.0, abs=1e-13)
        assert bound_state(SMALL, 0).dpsi_dx(x0) == pytest.approx(0.0, abs=1e-12)

    def test_derivative(self):
        x = np.linspace(0.2, 6.0, 50)
        h = 1e-6
        fd = (superpotential(DEEP, x + h) - superpotential(DEEP, x - h)) / (2 * h)
        assert superpotential_derivative(DEEP, x) == pytest.approx(fd, rel=1e-7)

    def test_needs_a_bound_state(self):
        with pytest.raises(DomainError):
            superpotential(GmpModel(0.1, 0.1), 1.0)

    def test_rejects_non_positive_x(self):
        with pytest.raises(DomainError):
            superpotential(SMALL, 0.0)


class TestFactorization:
    def test_a_minus_annihilates_ground_state(self):
        for m in MODELS:
            s = bound_state(m, 0)
            x = np.linspace(0.05, 4 * m.x_e + 5, 500)
            assert np.max(np.abs(apply_A(s, -1, x))) <= 1e-10 * np.max(np.abs(s.psi(x)))

    def test_norm_of_a_minus_psi_is_the_level_gap(self):
        s = bound_state(SMALL, 1)
        val = quad(lambda x: apply_A(s, -1, x) ** 2, 0, 20, limit=400)[0] + quad(
            lambda x: apply_A(s, -1, x) ** 2, 20, 700, limit=400
        )[0]
        assert val == pytest.approx(SMALL.level(1).eps_n - SMALL.level(0).eps_n, rel=1e-8)

    def test_hamiltonian_is_a_plus_a_minus_plus_eps0(self):
        # A+ A- psi_n = (eps_n - eps_0) psi_n, with A+ applied by finite differences
        m = DEEP
        s = bound_state(m, 2)
        x = np.linspace(1.0, 8.0, 100)
        h = 1e-4
        am = lambda t: apply_A(s, -1, t)  # noqa: E731
        d = (am(x + h) - am(x - h)) / (2 * h)
        ap_am = -d + superpotential(m, x) * am(x)
        gap = m.level(2).eps_n - m.level(0).eps_n
        assert ap_am == pytest.approx(gap * s.psi(x), abs=1e-6)

    def test_sign_argument(self):
        with pytest.raises(DomainError):
            apply_A(bound_state(SMALL, 0), 0, np.array([1.0]))


class TestPartner:
    @pytest.mark.parametrize("m", MODELS, ids=["small", "deep"])
    def test_shape_invariance(self, m):
        p = partner(m)
        assert p.l_prime == pytest.approx(m.l + 1.0, rel=1e-12)
        assert p.model.l == pytest.approx(m.l + 1.0, rel=1e-12)
        for n in range(m.n_max):
            assert float(p.model.alpha(n)) == pytest.approx(float(m.alpha(n + 1)), rel=1e-12)
            assert float(p.model.beta(n)) == pytest.approx(float(m.beta(n + 1)), rel=1e-12)
        assert p.model.n_max == m.n_max - 1

    @pytest.mark.parametrize("m", MODELS, ids=["small", "deep"])
    def test_two_forms_of_the_partner_potential(self, m):
        p = partner(m)
        x = np.linspace(0.05, 3 * m.x_e + 5, 1000)
        direct = partner_potential_direct(m, x)
        assert np.max(np.abs(p.potential(x) - direct) / np.maximum(np.abs(direct), 1.0)) <= 1e-10

    def test_constant_shift_values(self):
        assert partner(SMALL).R == pytest.approx(3.519872989552276, rel=1e-13)
        assert partner(DEEP).R == pytest.approx(DEEP.k - partner(DEEP).k_prime, rel=1e-15)

    def test_displayed_closed_form_of_the_shift(self):
        # (k'b' - 1 + l')^2 / (k'b'^2 + 2 - 2l') - k' re-evaluated at the primed pair
        for m in MODELS:
            p = partner(m)
            assert p.R_closed == pytest.approx(p.R, rel=1e-10)

    @pytest.mark.parametrize("m", MODELS, ids=["small", "deep"])
    def test_partner_spectrum_by_numerov(self, m):
        p = partner(m)
        grid = GridSpec.for_model(p.model, 20000)
        for n in range(m.n_max):
            eps = numerov_eigenvalue(p.potential, n, grid)
            assert eps == pytest.approx(m.level(n + 1).eps_n, rel=1e-6)
            assert p.energy(n) == pytest.approx(m.level(n + 1).eps_n, rel=1e-12)

    def test_singular_point(self):
        # k b = l with l(l-1) = k b^2  ->  b = l - 1, k = l / (l - 1)
        l = 3.0
        with pytest.raises(SingularityError):
            partner(GmpModel(l / (l - 1), l - 1))

    @pytest.mark.parametrize("m", MODELS, ids=["small", "deep"])
    def test_chain_closes(self, m):
        chain = partner_chain(m, m.n_max)
        ls = [m.l] + [c.l_prime for c in chain]
        assert np.diff(ls) == pytest.approx(np.ones(len(chain)), abs=1e-10)
        ground = [float(c.model.alpha(0)) for c in chain]
        assert ground == pytest.approx([float(m.alpha(j)) for j in range(1, m.n_max + 1)], rel=1e-10)
        assert chain[-1].model.n_max == 0 if chain else True

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0.5, 80.0), st.floats(0.2, 30.0))
    def test_shape_invariance_holds_broadly(self, k, b):
        m = GmpModel(k, b)
        assume(m.n_max >= 1 and abs(k * b - m.l) > 1e-6)
        p = partner(m)
        assert p.model.l == pytest.approx(m.l + 1, rel=1e-12)
        assert float(p.model.alpha(0)) == pytest.approx(float(m.alpha(1)), rel=1e-9)


class TestIntertwining:
    @pytest.mark.parametrize("m", MODELS, ids=["small", "deep"])
    def test_a_minus_maps_onto_partner_states(self, m):
        for n in range(1, m.n_max + 1):
            s = bound_state(m, n)
            target = partner_state(m, n - 1)
            x = np.linspace(0.1, target.tail_cutoff(1e-10), 3000)
            a = intertwined_partner(s, x)
            b = target.psi(x)
            i = int(np.argmax(np.abs(b)))
            a *= np.sign(a[i]) * np.sign(b[i])
            assert np.max(np.abs(a - b)) <= 1e-8 * np.max(np.abs(b))

    def test_ground_state_has_no_image(self):
        with pytest.raises(DomainError):
            intertwined_partner(bound_state(SMALL, 0), np.array([1.0]))


class TestNormalizationRecursion:
    def test_base_case(self):
        for m in MODELS:
            a0, l = m.level(0).alpha_n, m.l
            want = 0.5 * (math.lgamma(2 * a0 + 2 * l + 1) - math.lgamma(2 * a0) - math.lgamma(2 * l + 1))
            assert log_normalization_recursion(m, 0) == pytest.approx(want, rel=1e-14)

    @pytest.mark.parametrize("m", MODELS, ids=["small", "deep"])
    def test_matches_closed_form(self, m):
        for n in range(m.n_max + 1):
            assert normalization_recursion(m, n) == pytest.approx(normalization(m, n), rel=1e-10)

    @settings(max_examples=60, deadline=None)
    @given(st.floats(0.5, 80.0), st.floats(0.2, 30.0))
    def test_matches_closed_form_broadly(self, k, b):
        m = GmpModel(k, b)
        assume(m.n_max >= 0)
        for n in range(m.n_max + 1):
            try:
                rec = log_normalization_recursion(m, n)
            except SingularityError:
                assume(False)
            assert math.expm1(abs(rec - log_normalization(m, n))) <= 1e-9

    def test_overflow(self):
        with pytest.raises(OverflowError):
            normalization_recursion(GmpModel(1e5, 100.0), 0)
