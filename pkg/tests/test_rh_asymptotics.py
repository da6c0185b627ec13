"""Riemann-Hilbert quantities: delta, F, d(A), and the profile evaluators."""

import cmath
import math

import numpy as np
import pytest

from nnlstep import (
    AsymptoticParams,
    CutSide,
    F_at,
    F_infinity,
    F_plus_at_zero,
    RegionMismatch,
    RegionTag,
    SingularStation,
    SolitonPole,
    Source,
    SpectralData,
    StepProfile,
    WindingOutOfRange,
    central_params,
    delta_data,
    modulated_params,
    q_central,
    q_modulated,
    q_soliton,
    q_transition,
    soliton_spectral,
    step_spectral,
    transition_continuous_at_zero,
    transition_dA,
    transition_params,
)
from nnlstep.quadrature import IntegrandSpec, cauchy_semiinfinite, tanh_sinh


def _g_centered_step(s):
    # 1 + r1 r2 = f^2/k^2 = 1 - 1/s^2 for the centered unit step.
    s = np.asarray(s, dtype=float)
    return (1.0 - 1.0 / s**2).astype(complex)


class TestDelta:
    def test_endpoint_zero_detected(self, step_sd):
        dd = delta_data(step_sd, -1.0)
        assert dd.zero_at_minus_A
        assert math.isnan(dd.nu.real)

    def test_delta_at_origin_golden(self, step_sd):
        # Analytic dilogarithm evaluation of the exponent integral gives
        # delta(0, -A) = exp(-i pi / 24) for the centered step.
        dd = delta_data(step_sd, -1.0)
        assert abs(dd.delta_at(0.0) - cmath.exp(-1j * math.pi / 24)) < 1e-6

    def test_modulated_nu_real_for_centered_step(self, step_sd):
        k1 = -1.2
        dd = delta_data(step_sd, k1)
        want = math.log(1.44 / 0.44) / (2 * math.pi)
        assert dd.nu == pytest.approx(want, abs=1e-9)
        assert abs(dd.Delta_k1) < 1e-9

    def test_boundary_jump_relation(self, step_sd):
        # delta_+ = delta_- (1 + r1 r2) on the ray.
        dd = delta_data(step_sd, -1.0)
        x0 = -2.0
        above = dd.delta_boundary(x0, CutSide.ABOVE)
        below = dd.delta_boundary(x0, CutSide.BELOW)
        g = complex(_g_centered_step(np.array([x0]))[0])
        assert abs(above - below * g) < 1e-6

    def test_endpoint_exponent_split_identity(self, step_sd):
        # Splitting off the constant ln g(k1) over the last unit cell turns
        # ln delta into i nu ln(k1 - k) plus regular integrals; the residual
        # certifies the (k - k1)^{i nu} local behavior.
        k1 = -1.2
        k = -1.0 + 0.5j
        dd = delta_data(step_sd, k1)
        lng_k1 = complex(np.log(_g_centered_step(np.array([k1]))[0]))

        def lng(s):
            return np.log(_g_centered_step(s))

        tail = cauchy_semiinfinite(
            IntegrandSpec(lng, decay_estimate=2.0), k1 - 1.0, k, tol=1e-10
        )
        middle, _ = tanh_sinh(
            lambda s: (lng(s) - lng_k1) / (s - k), k1 - 1.0, k1, tol=1e-10
        )
        local = lng_k1 * (np.log(k1 - k) - np.log(k1 - 1.0 - k))
        split = (tail + middle + local) / (2j * np.pi)
        assert abs(split - dd.log_delta_at(k)) < 1e-6
        # The ln(k1 - k) coefficient is exactly i nu.
        assert abs(lng_k1 / (2j * np.pi) - 1j * dd.nu) < 1e-9

    def test_k1_above_minus_A_rejected(self, step_sd):
        with pytest.raises(ValueError):
            delta_data(step_sd, -0.5)

    def test_winding_out_of_range(self):
        # Fabricated unimodular data whose argument winds past pi.
        def a1(k, side=CutSide.OFF):
            s = complex(k).real
            return complex(np.exp(-4j * np.exp(-((s + 1.5) ** 2))))

        def a2(k, side=CutSide.OFF):
            return 1.0 + 0.0j

        def b(k, side=CutSide.OFF):
            return 0.0 + 0.0j

        sd = SpectralData(
            A=1.0, a1=a1, a2=a2, b=b, a10=-1j,
            gamma_plus=-1.0, gamma_minus=-1.0, source=Source.NUMERIC_JOST,
        )
        with pytest.raises(WindingOutOfRange):
            delta_data(sd, -1.5)


class TestF:
    def test_F_infinity_at_minus_A_golden(self, step_sd):
        val = F_infinity(step_sd, -1.0)
        assert abs(val - (-math.pi / 8)) < 1e-6

    def test_F_infinity_scale_invariance(self):
        for A in (0.5, 2.0):
            sd = step_spectral(StepProfile(A=A, R=0.0))
            assert abs(F_infinity(sd, -A) - (-math.pi / 8)) < 1e-6

    def test_F_infinity_modulated_golden(self, step_sd):
        # Frozen value cross-checked against nested double quadrature.
        assert abs(F_infinity(step_sd, -1.2) - (-0.09255104408553899)) < 1e-6

    def test_F_plus_at_zero_golden(self, step_sd):
        dd = delta_data(step_sd, -1.0)
        want = math.sqrt(2.0) * cmath.exp(-1j * math.pi / 24)
        assert abs(F_plus_at_zero(step_sd, dd) - want) < 1e-6

    def test_product_identity_on_cut(self, step_sd):
        # F_+ F_- = delta^2 on (-A, A).
        dd = delta_data(step_sd, -1.0)
        x0 = -0.3
        prod = F_at(step_sd, dd, x0, CutSide.ABOVE) * F_at(step_sd, dd, x0, CutSide.BELOW)
        assert abs(prod - dd.delta_at(x0) ** 2) < 1e-6

    def test_large_k_limit(self, step_sd):
        dd = delta_data(step_sd, -1.0)
        val = F_at(step_sd, dd, 400.0 + 400.0j)
        assert abs(val - cmath.exp(-1j * math.pi / 8)) < 5e-3

    def test_transition_dA_golden(self, step_sd):
        dA = transition_dA(step_sd)
        assert abs(dA - (-2j)) < 1e-6

    def test_transition_dA_soliton(self):
        sd = soliton_spectral(1.5, 0.4)
        assert transition_dA(sd) == pytest.approx(3.0 * cmath.exp(0.4j))


class TestProfiles:
    def test_reflectionless_reduction_exact(self):
        for phi0 in (0.0, 0.8):
            sd = soliton_spectral(1.0, phi0)
            t = 7.0
            # Modulated and central plane waves match the soliton's far field.
            qm = q_modulated(sd, 0.75, t)
            assert abs(qm - q_soliton(1.0, phi0, 4 * 0.75 * t, t)) < 1e-10
            qc = q_central(sd, 0.2, 40.0)
            assert abs(qc - q_soliton(1.0, phi0, 4 * 0.2 * 40.0, 40.0)) < 1e-10
            for x in (0.5, -0.9, 2.0):
                qt = q_transition(sd, x, t)
                assert abs(qt - q_soliton(1.0, phi0, x, t)) < 1e-12

    def test_modulated_amplitude_and_phase(self, step_sd):
        p = modulated_params(step_sd, 0.75)
        t = 12.0
        q = q_modulated(step_sd, 0.75, t, params=p)
        assert abs(q) == pytest.approx(math.exp(-2 * p.F_inf.imag), abs=1e-12)
        want_phase = -2 * t + 2 * p.F_inf.real
        assert cmath.phase(q * cmath.exp(-1j * want_phase)) == pytest.approx(0.0, abs=1e-12)
        assert p.error_exponent == pytest.approx(0.5, abs=1e-6)  # nu real here

    def test_central_is_xi_independent(self, step_sd):
        t = 9.0
        q_a = q_central(step_sd, 0.1, t)
        q_b = q_central(step_sd, 0.4, t)
        assert abs(q_a - q_b) < 1e-12

    def test_central_sides_differ_by_sign_for_real_F(self, step_sd):
        t = 3.0
        assert abs(q_central(step_sd, 0.2, t) + q_central(step_sd, -0.2, t)) < 1e-9

    def test_transition_interpolates_tanh_for_centered_step(self, step_sd):
        # d(A) = -2iA collapses both branches to A tanh(Ax) times the
        # central plane wave.
        tp = transition_params(step_sd)
        t = 5.0
        plane = q_central(step_sd, 0.2, t)
        for x in (0.5, 1.0, -0.5, -2.0):
            q = q_transition(step_sd, x, t, params=tp)
            assert abs(q - plane * math.tanh(x)) < 1e-6

    def test_transition_limits_match_central_constants(self, step_sd):
        tp = transition_params(step_sd)
        t = 4.0
        assert abs(q_transition(step_sd, 25.0, t, params=tp) - q_central(step_sd, 0.2, t)) < 1e-6
        assert abs(q_transition(step_sd, -25.0, t, params=tp) - q_central(step_sd, -0.2, t)) < 1e-6

    def test_continuity_predicate(self, step_sd):
        assert transition_continuous_at_zero(step_sd)
        assert transition_continuous_at_zero(soliton_spectral(1.0, 0.0))
        # d = 2iA is the excluded pole configuration.
        assert not transition_continuous_at_zero(soliton_spectral(1.0, math.pi / 2))

    def test_region_mismatch_errors(self, step_sd):
        with pytest.raises(RegionMismatch):
            q_modulated(step_sd, 0.2, 5.0)
        with pytest.raises(RegionMismatch):
            q_central(step_sd, 0.75, 5.0)
        with pytest.raises(RegionMismatch):
            modulated_params(step_sd, 0.5)
        with pytest.raises(RegionMismatch):
            q_transition(step_sd, 0.0, 5.0)

    def test_singular_station_guard(self, step_sd):
        x0 = 0.5
        crafted = AsymptoticParams(
            region=RegionTag.TRANSITION_AXIS, A=1.0, k1=-1.0,
            F_inf=0.0 + 0.0j, error_exponent=math.inf,
            dA=2j * math.exp(2.0 * x0),
        )
        with pytest.raises(SingularStation):
            q_transition(step_sd, x0, 5.0, params=crafted)

    def test_soliton_pole(self):
        with pytest.raises(SolitonPole):
            q_soliton(1.0, math.pi / 2, 0.0, 1.0)
        # Away from the pole configuration the profile is regular.
        assert abs(q_soliton(1.0, 0.0, 0.0, 0.0) - cmath.tanh(-0.25j * math.pi)) < 1e-12
