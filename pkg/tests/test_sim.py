"""Direct method-of-lines solver: grid, stepping, recording, comparison."""

import math

import numpy as np
import pytest

from nnlstep import (
    BlowupDetected,
    Field,
    Grid,
    GridTooCoarse,
    InitialData,
    SimConfig,
    SolitonSpec,
    StepProfile,
    compare,
    evolve,
    init_field,
    q_soliton,
    step,
)


class TestGrid:
    def test_symmetric_nodes(self):
        g = Grid(L=5.0, N=10)
        x = g.x
        assert x[0] == -5.0 and x[-1] == 5.0 and x[5] == 0.0
        assert np.allclose(x, -x[::-1])
        assert g.dx == pytest.approx(1.0)

    def test_odd_n_rejected(self):
        with pytest.raises(ValueError):
            Grid(L=5.0, N=11)

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            Grid(L=0.0, N=10)


class TestSimConfig:
    def test_cfl_violation(self):
        g = Grid(L=5.0, N=100)  # dx = 0.1, bound = 0.002
        with pytest.raises(ValueError):
            SimConfig(dt=0.01, t_end=1.0).check_cfl(g)
        SimConfig(dt=0.002, t_end=1.0).check_cfl(g)  # boundary case passes

    def test_unknown_bc_rejected(self):
        with pytest.raises(ValueError):
            SimConfig(dt=0.001, t_end=1.0, bc_mode="Periodic")


class TestInitField:
    def test_step_midpoint_convention(self):
        g = Grid(L=5.0, N=10)
        with pytest.warns(GridTooCoarse):
            fld = init_field(StepProfile(A=1.0, R=0.0), g)
        assert fld.values[5] == 0.0
        assert fld.values[0] == -1.0 and fld.values[-1] == 1.0

    def test_mollified_step_no_warning(self):
        g = Grid(L=5.0, N=100)
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("error")
            fld = init_field(StepProfile(A=1.0, R=0.0), g, mollify_width=1.0)
        assert abs(fld.values[-1] - math.tanh(5.0)) < 1e-12

    def test_soliton_matches_exact_profile(self):
        g = Grid(L=10.0, N=200)
        fld = init_field(SolitonSpec(A=1.0, phi0=0.3), g)
        for i in (0, 50, 100, 137):
            assert abs(fld.values[i] - q_soliton(1.0, 0.3, g.x[i], 0.0)) < 1e-12

    def test_sampled_data(self):
        g = Grid(L=8.0, N=64)
        data = InitialData(sampler=lambda x: complex(np.tanh(x)), decay_width=8.0)
        fld = init_field(data, g)
        assert fld.values[32] == 0.0
        assert abs(fld.values[-1] - math.tanh(8.0)) < 1e-12

    def test_unsupported_type(self):
        with pytest.raises(TypeError):
            init_field(object(), Grid(L=1.0, N=2))


class TestStepping:
    def test_zero_dt_is_identity(self):
        g = Grid(L=10.0, N=100)
        fld = init_field(SolitonSpec(A=1.0), g)
        out = step(fld, SimConfig(dt=0.0, t_end=0.0), 1.0)
        assert out.t == 0.0
        assert np.array_equal(out.values, fld.values)
        assert out.values is not fld.values

    def test_boundary_orbit(self):
        g = Grid(L=10.0, N=100)
        cfg = SimConfig(dt=0.005, t_end=0.1)
        fld = init_field(SolitonSpec(A=1.0), g)
        for _ in range(20):
            fld = step(fld, cfg, 1.0)
        bc = np.exp(-2j * fld.t)
        assert abs(fld.values[-1] - bc) < 1e-14
        assert abs(fld.values[0] + bc) < 1e-14

    def test_short_soliton_run_accuracy(self):
        A = 1.0
        g = Grid(L=20.0, N=400)
        cfg = SimConfig(dt=0.002, t_end=0.2, record_times=(0.2,))
        snaps = evolve(init_field(SolitonSpec(A=A), g), cfg, A)
        fld = snaps[-1]
        exact = np.array([q_soliton(A, 0.0, x, fld.t) for x in g.x])
        err = np.max(np.abs(fld.values - exact))
        assert err < 5e-3

    def test_blowup_detected(self):
        g = Grid(L=5.0, N=50)
        data = InitialData(sampler=lambda x: 80.0 * complex(np.tanh(x)), decay_width=5.0)
        fld = init_field(data, g)
        with pytest.raises(BlowupDetected) as exc:
            step(fld, SimConfig(dt=0.002, t_end=0.002), 1.0)
        assert exc.value.max_abs > 50.0


class TestEvolveAndCompare:
    def test_record_times(self):
        g = Grid(L=10.0, N=100)
        cfg = SimConfig(dt=0.005, t_end=0.1, record_times=(0.0, 0.05, 0.1))
        snaps = evolve(init_field(SolitonSpec(A=1.0), g), cfg, 1.0)
        assert [round(s.t, 10) for s in snaps] == [0.0, 0.05, 0.1]

    def test_compare_exact_predictor(self):
        A = 1.0
        g = Grid(L=15.0, N=600)
        cfg = SimConfig(dt=5e-4, t_end=0.1, record_times=(0.05, 0.1))
        snaps = evolve(init_field(SolitonSpec(A=A), g), cfg, A)
        table = compare(snaps, lambda x, t: q_soliton(A, 0.0, x, t), (-5.0, 5.0))
        assert len(table.times) == 2
        assert max(table.sup_errors) < 2e-3
        assert max(table.l2_errors) < 2e-3

    def test_compare_fitted_exponent(self):
        g = Grid(L=1.0, N=10)
        fields = [
            Field(t=t, values=(t**-0.5) * np.ones(11, dtype=complex), grid=g)
            for t in (4.0, 8.0, 16.0)
        ]
        table = compare(fields, lambda x, t: 0.0, (-1.0, 1.0))
        assert table.fitted_exponent == pytest.approx(-0.5, abs=1e-12)

    def test_empty_window_rejected(self):
        g = Grid(L=1.0, N=10)
        fld = Field(t=1.0, values=np.ones(11, dtype=complex), grid=g)
        with pytest.raises(ValueError):
            compare([fld], lambda x, t: 0.0, (2.0, 3.0))
