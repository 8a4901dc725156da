import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genmorse import DomainError, GmpModel, LevelIndexError, PhysicalParams, level, level_count, levels, reduce
from genmorse.core import dunham_coefficients, morse_energy, morse_energy_dimensionless, shape_constants

B_DEEP = math.exp(2.5) - 1.0

ks = st.floats(0.05, 200.0)
bs = st.floats(0.02, 60.0)


def mp_levels(k, b, dps=50):
    """Independent high-precision spectrum: (l, n_max, [eps_n])."""
    with mp.workdps(dps):
        k, b = mp.mpf(k), mp.mpf(b)
        l = (1 + mp.sqrt(1 + 4 * k * b * b)) / 2
        K = k * b * (b + 2)
        eps = []
        n = 0
        while True:
            alpha = (K / (n + l) - (n + l)) / 2
            if alpha <= 0:
                break
            eps.append(k - alpha**2)
            n += 1
        return l, n - 1, eps


class TestShapeConstants:
    def test_worked_model(self):
        l, C = shape_constants(4.0, 2.0)
        assert C == -16.0
        assert l == pytest.approx((1 + math.sqrt(65)) / 2, rel=1e-15)
        assert l * (l - 1) == pytest.approx(16.0, rel=1e-14)

    def test_l_is_three_halves_when_4kb2_is_3(self):
        b = math.sqrt(3.0 / (4 * 7.0))
        assert shape_constants(7.0, b)[0] == pytest.approx(1.5, rel=1e-15)

    def test_deep_well(self):
        l, C = shape_constants(20.0, B_DEEP)
        assert C == pytest.approx(-2500.9634236233933, rel=1e-14)
        assert l == pytest.approx(50.51213276419426, rel=1e-14)

    @pytest.mark.parametrize("k,b", [(0, 1), (-1, 1), (1, 0), (1, -2)])
    def test_rejects_non_positive(self, k, b):
        with pytest.raises(DomainError):
            GmpModel(k, b)


class TestReduce:
    def test_deep_well_maps_to_k20(self):
        m = reduce(PhysicalParams(10.0, 1.0, 2.5))
        assert m.k == 20.0
        assert m.b == pytest.approx(B_DEEP, rel=1e-15)
        assert m.physical.f == pytest.approx(10.0 * B_DEEP**2, rel=1e-15)

    def test_mass_and_hbar_enter_k(self):
        m = reduce(PhysicalParams(3.0, 2.0, 1.0, mu=5.0, hbar=0.5))
        assert m.k == pytest.approx(2 * 5.0 * 3.0 / (4.0 * 0.25))

    @pytest.mark.parametrize("field", ["D", "a", "r_e", "mu", "hbar"])
    def test_physical_params_validate(self, field):
        kw = dict(D=1.0, a=1.0, r_e=1.0)
        kw[field] = -1.0
        with pytest.raises(DomainError):
            PhysicalParams(**kw)


class TestLevelCount:
    def test_worked_models(self):
        assert level_count(GmpModel(4.0, 2.0)) == 1
        assert level_count(GmpModel(20.0, B_DEEP)) == 3

    def test_no_bound_states_gives_minus_one(self):
        m = GmpModel(0.1, 0.1)
        assert math.sqrt(m.K) <= m.l
        assert m.n_max == -1
        assert levels(m) == []

    def test_exact_boundary_is_excluded(self):
        # l = 5, b = 2.5, k = 3.2 gives K = 36 = (1 + l)^2, so alpha_1 = 0 exactly
        m = GmpModel(3.2, 2.5)
        assert (m.l, m.K) == (5.0, 36.0)
        assert float(m.alpha(1)) == 0.0
        assert m.n_max == 0
        assert GmpModel(3.2 * (1 - 1e-9), 2.5).n_max == 0
        assert GmpModel(3.2 * (1 + 1e-9), 2.5).n_max == 1

    @settings(max_examples=200, deadline=None)
    @given(ks, bs)
    def test_matches_high_precision_count(self, k, b):
        l, n_max, _ = mp_levels(k, b)
        m = GmpModel(k, b)
        assert m.l == pytest.approx(float(l), rel=1e-13)
        assert m.n_max == n_max


class TestLevel:
    def test_worked_model_values(self):
        r0 = level(GmpModel(4.0, 2.0), 0)
        assert r0.alpha_n == pytest.approx(1.2655644370746377, rel=1e-14)
        assert r0.eps_n == pytest.approx(2.398346655611955, rel=1e-14)
        assert r0.E_n is None

    def test_beta_minus_alpha_is_one_plus_l_at_n1(self):
        m = GmpModel(4.0, 2.0)
        r = level(m, 1)
        assert r.beta_n - r.alpha_n == pytest.approx(1 + m.l, rel=1e-14)

    def test_deep_well_energies_match_high_precision(self):
        m = reduce(PhysicalParams(10.0, 1.0, 2.5))
        _, n_max, eps = mp_levels(20.0, B_DEEP)
        assert n_max == 3
        got = [r.eps_n for r in levels(m)]
        assert got == pytest.approx([float(e) for e in eps], rel=1e-12)
        assert all(0 < e < m.k for e in got)
        assert np.all(np.diff(got) > 0)

    def test_two_energy_routes_agree(self):
        m = reduce(PhysicalParams(7.0, 0.8, 1.9, mu=2.0, hbar=1.3))
        s = m.physical.energy_scale
        for r in levels(m):
            assert r.E_n == pytest.approx(r.eps_n * s, rel=1e-12)

    @pytest.mark.parametrize("n", [2, -1, 0.5])
    def test_unbound_index_raises(self, n):
        with pytest.raises(LevelIndexError):
            level(GmpModel(4.0, 2.0), n)

    @settings(max_examples=150, deadline=None)
    @given(ks, bs)
    def test_exponent_identities(self, k, b):
        m = GmpModel(k, b)
        for r in levels(m):
            assert r.beta_n - r.alpha_n == pytest.approx(r.n + m.l, rel=1e-12)
            assert r.beta_n**2 - r.alpha_n**2 == pytest.approx(m.K, rel=1e-12)
            assert r.alpha_n > 0

    @settings(max_examples=150, deadline=None)
    @given(ks, bs)
    def test_spectrum_is_increasing_and_below_k(self, k, b):
        m = GmpModel(k, b)
        eps = [r.eps_n for r in levels(m)] + [m.k]
        assert np.all(np.diff(eps) > 0)


class TestDunham:
    def mp_taylor(self, k, b, order):
        with mp.workdps(40):
            k, b = mp.mpf(k), mp.mpf(b)
            l = (1 + mp.sqrt(1 + 4 * k * b * b)) / 2
            K = k * b * (b + 2)

            def E(nu):
                u = nu + l - mp.mpf(1) / 2
                return k - ((K / u - u) / 2) ** 2

            return [float(c) for c in mp.taylor(E, 0, order)]

    @pytest.mark.parametrize("k,b", [(4.0, 2.0), (20.0, B_DEEP), (20.0, 100.0), (3.0, 0.4)])
    def test_coefficients_match_high_precision_taylor(self, k, b):
        c = self.mp_taylor(k, b, 6)
        eps = dunham_coefficients(GmpModel(k, b), 6)
        sign = np.array([1, 1, -1, 1, -1, 1, -1])
        assert eps == pytest.approx(sign * np.array(c), rel=1e-9, abs=1e-12)

    def test_zeroth_coefficient_is_energy_at_nu_zero(self):
        m = GmpModel(4.0, 2.0)
        u = m.l - 0.5
        assert dunham_coefficients(m, 0)[0] == pytest.approx(m.k - 0.25 * (m.K / u - u) ** 2, rel=1e-15)

    def test_morse_limit_of_first_two_coefficients(self):
        p = PhysicalParams(10.0, 1.0, math.log1p(1e4))
        eps = dunham_coefficients(reduce(p), 2, physical=True)
        assert eps[1] == pytest.approx(math.sqrt(2 * p.D / p.mu) * p.a * p.hbar, rel=1e-3)
        assert eps[2] == pytest.approx(p.energy_scale, rel=1e-3)

    def test_third_coefficient_shrinks_with_b(self):
        e3 = [abs(dunham_coefficients(GmpModel(20.0, b), 3)[3]) for b in (10.0, 1e2, 1e3)]
        assert e3[0] > e3[1] > e3[2]

    @pytest.mark.parametrize("k,b", [(4.0, 2.0), (20.0, B_DEEP), (20.0, 10.0)])
    def test_partial_sum_bound(self, k, b):
        m = GmpModel(k, b)
        c = dunham_coefficients(m, 3)
        partial = c[0] + c[1] * 0.5 - c[2] * 0.25
        assert abs(partial - level(m, 0).eps_n) <= abs(c[3]) * 0.125 * 4

    def test_physical_needs_params(self):
        with pytest.raises(DomainError):
            dunham_coefficients(GmpModel(4.0, 2.0), 2, physical=True)

    def test_negative_order(self):
        with pytest.raises(DomainError):
            dunham_coefficients(GmpModel(4.0, 2.0), -1)


class TestMorse:
    def test_arithmetic(self):
        assert morse_energy_dimensionless(4.0, 0) == 1.75
        assert morse_energy_dimensionless(25.0, 2) == 18.75

    def test_physical_matches_dimensionless(self):
        p = PhysicalParams(6.0, 1.3, 2.0, mu=1.7, hbar=0.9)
        k = reduce(p).k
        assert morse_energy(p, 3) == pytest.approx(morse_energy_dimensionless(k, 3) * p.energy_scale, rel=1e-13)

    def test_negative_n(self):
        with pytest.raises(DomainError):
            morse_energy(PhysicalParams(1.0, 1.0, 1.0), -1)

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_gap_to_gmp_closes_like_one_over_b(self, n):
        bs_ = (1e2, 1e3, 1e4)
        gaps = [abs(level(GmpModel(20.0, b), n).eps_n - morse_energy_dimensionless(20.0, n)) for b in bs_]
        assert gaps[0] > gaps[1] > gaps[2]
        bg = [b * g for b, g in zip(bs_, gaps)]
        assert max(bg) / min(bg) < 4.0
