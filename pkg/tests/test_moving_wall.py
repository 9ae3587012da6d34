"""Breathing-wall machinery: wall law, coupling, expansion, clock, dynamics."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from boxhhg.basis import BoxSpec, build_tables
from boxhhg.errors import ConfigurationError
from boxhhg.integrator import PropagationGrid, StateVector, basis_state, propagate
from boxhhg.moving_wall import (
    WallMotion,
    build_rhs,
    effective_coupling,
    moving_rhs,
    multichromatic_expansion,
    run_moving,
    tau_of_t,
    unit_tables,
    wall_position,
)
from boxhhg.static_drive import DriveParams, run_static


def motion(a=10.0, b=5.0, w0=1.0, N=16, n0=1, periods=2):
    return WallMotion(
        base=a, amplitude=b, frequency=w0, dimension=N,
        initial_state=n0, periods=periods,
    )


wall_strategy = st.tuples(
    st.floats(1.0, 30.0),          # a
    st.floats(0.0, 0.9),           # b as a fraction of a
    st.floats(0.05, 5.0),          # w0
).map(lambda t: motion(a=t[0], b=t[0] * t[1], w0=t[2]))


class TestWallLaw:
    def test_extremes(self):
        m = motion(a=10.0, b=5.0, w0=1.0)
        assert wall_position(0.0, m) == pytest.approx(15.0, abs=1e-14)
        assert wall_position(np.pi, m) == pytest.approx(5.0, abs=1e-13)

    def test_static_limit(self):
        m = motion(a=4.0, b=0.0)
        t = np.linspace(0.0, 20.0, 50)
        assert np.array_equal(wall_position(t, m), np.full(50, 4.0))

    def test_validation(self):
        with pytest.raises(ConfigurationError):
            motion(a=5.0, b=7.0)
        with pytest.raises(ConfigurationError):
            motion(a=5.0, b=5.0)
        with pytest.raises(ConfigurationError):
            motion(b=-1.0)
        with pytest.raises(ConfigurationError):
            motion(w0=0.0)
        with pytest.raises(ConfigurationError):
            motion(n0=17, N=16)


class TestEffectiveCoupling:
    def test_static_limit_vanishes(self):
        m = motion(b=0.0)
        assert effective_coupling(1.23, m) == 0.0

    def test_zero_at_quarter_period(self):
        m = motion(w0=2.0)
        assert abs(effective_coupling(np.pi / 4.0, m)) < 1e-10

    def test_direct_product_value(self):
        m = motion(a=10.0, b=5.0, w0=1.0)
        assert effective_coupling(0.0, m) == pytest.approx(-16875.0, abs=1e-9)

    def test_acceleration_against_finite_difference(self):
        m = motion(a=7.0, b=3.0, w0=1.7)
        h = 1e-5
        for t in (0.0, 0.4, 1.9):
            ldd = (
                wall_position(t + h, m) - 2.0 * wall_position(t, m) + wall_position(t - h, m)
            ) / h**2
            expected = wall_position(t, m) ** 3 * ldd
            assert effective_coupling(t, m) == pytest.approx(expected, rel=1e-6)


class TestMultichromaticExpansion:
    def test_reference_coefficients(self):
        c = multichromatic_expansion(motion(a=10.0, b=5.0, w0=1.0))
        assert c.c0 == pytest.approx(-3984.375, abs=1e-12)
        assert c.c1 == pytest.approx(-7812.5, abs=1e-12)
        assert c.c2 == pytest.approx(-4062.5, abs=1e-12)
        assert c.c3 == pytest.approx(-937.5, abs=1e-12)
        assert c.c4 == pytest.approx(-78.125, abs=1e-12)

    def test_static_limit_all_zero(self):
        c = multichromatic_expansion(motion(b=0.0))
        assert (c.c0, c.c1, c.c2, c.c3, c.c4) == (0.0, 0.0, 0.0, 0.0, 0.0)

    @settings(max_examples=30, deadline=None)
    @given(wall_strategy)
    def test_reconstruction_identity(self, m):
        coeffs = multichromatic_expansion(m)
        t = np.linspace(0.0, m.period, 257)
        g = effective_coupling(t, m)
        scale = np.max(np.abs(g))
        if scale == 0.0:
            assert np.max(np.abs(coeffs.reconstruct(t))) == 0.0
        else:
            assert np.max(np.abs(coeffs.reconstruct(t) - g)) <= 1e-9 * scale


class TestTau:
    def test_zero_at_origin(self):
        assert tau_of_t(0.0, motion()) == 0.0

    def test_static_limit(self):
        m = motion(a=5.0, b=0.0)
        assert tau_of_t(3.0, m) == pytest.approx(3.0 / 25.0, abs=1e-12)

    def test_one_period_closed_form(self):
        # integral over a period of dt/(a + b cos)^2 = 2 pi a / (a^2-b^2)^(3/2)
        m = motion(a=10.0, b=5.0, w0=1.0)
        expected = 2.0 * np.pi * 10.0 / 75.0**1.5
        assert tau_of_t(2.0 * np.pi, m) == pytest.approx(expected, abs=1e-10)
        assert expected == pytest.approx(0.096735, abs=1e-6)

    def test_strictly_increasing(self):
        m = motion(a=3.0, b=2.5, w0=2.0)
        taus = [tau_of_t(t, m) for t in np.linspace(0.0, 3.0 * m.period, 25)]
        assert np.all(np.diff(taus) > 0.0)

    def test_rejects_negative_time(self):
        with pytest.raises(ConfigurationError):
            tau_of_t(-1.0, motion())


class TestMovingRHS:
    def test_static_limit_matches_box_spectrum(self):
        m = motion(a=4.0, b=0.0, N=6)
        tables = unit_tables(6)
        c = np.zeros(6, dtype=complex)
        c[2] = 1.0
        out = moving_rhs(0.9, c, tables, m)
        e_static = build_tables(BoxSpec(4.0, 6)).energies
        assert np.max(np.abs(out - (-1j) * e_static * c)) < 1e-14

    def test_diagonal_when_wall_acceleration_vanishes(self):
        m = motion(w0=1.0, N=6)
        tables = unit_tables(6)
        rng = np.random.default_rng(5)
        c = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        out = moving_rhs(np.pi / 2.0, c, tables, m)
        L = wall_position(np.pi / 2.0, m)
        assert np.max(np.abs(out - (-1j) * tables.energies / L**2 * c)) < 1e-10

    def test_against_dense_matrix_oracle(self):
        m = motion(a=10.0, b=5.0, w0=1.0, N=3)
        tables = unit_tables(3)
        H = np.diag(tables.energies) / 225.0 + 15.0 * (-5.0) * tables.Q
        c = np.zeros(3, dtype=complex)
        c[0] = 1.0
        expected = -1j * (H @ c)
        assert np.max(np.abs(moving_rhs(0.0, c, tables, m) - expected)) < 1e-15
        rhs = build_rhs(tables, m)
        assert np.max(np.abs(rhs(0.0, c) - expected)) < 1e-15

    def test_dimension_mismatch(self):
        with pytest.raises(ConfigurationError):
            moving_rhs(0.0, np.zeros(4, dtype=complex), unit_tables(6), motion(N=6))


class TestRunMoving:
    def test_static_ground_state_dipole(self):
        s = run_moving(motion(a=6.0, b=0.0, N=8))
        assert np.max(np.abs(s.values + 3.0)) < 1e-10

    def test_initial_dipole_is_half_initial_box(self):
        s = run_moving(motion(a=10.0, b=5.0, N=16, periods=1))
        assert s.values[0] == pytest.approx(-7.5, abs=1e-12)

    def test_dipole_bounded_by_wall(self):
        m = motion(a=10.0, b=5.0, N=32, periods=2)
        s = run_moving(m)
        assert np.all(np.abs(s.values) <= wall_position(s.times, m) + 1e-9)
        assert s.metadata["max_norm_drift"] <= 1e-8

    def test_static_reduction_matches_static_solver(self):
        a, N = 3.0, 12
        sm = run_moving(motion(a=a, b=0.0, N=N, periods=3))
        ss = run_static(
            DriveParams(box=BoxSpec(a, N), field_strength=0.0, drive_frequency=1.0, periods=3)
        )
        assert sm.times.shape == ss.times.shape
        assert np.max(np.abs(sm.values - ss.values)) < 1e-8

    def test_frame_consistency_with_rescaled_clock(self):
        """Physical-time propagation against the tau-frame system with the
        augmented clock dt/dtau = L^2 (the formulation the transformation
        actually produces); final states must agree to 1e-7."""
        m = motion(a=10.0, b=5.0, w0=1.0, N=12, periods=1)
        tables = unit_tables(12)

        grid_t = PropagationGrid(0.0, m.period, m.period / 2**19, sample_stride=2**19)
        phys = propagate(basis_state(12, 1), build_rhs(tables, m), grid_t)

        tau_end = tau_of_t(m.period, m)

        def tau_rhs(tau, y):
            c, t = y[:12], y[12].real
            L = float(wall_position(t, m))
            g = effective_coupling(t, m)
            dc = -1j * (tables.energies * c + g * (tables.Q @ c))
            out = np.empty(13, dtype=complex)
            out[:12] = dc
            out[12] = L * L
            return out

        y0 = np.zeros(13, dtype=complex)
        y0[0] = 1.0
        n = 60000
        grid_tau = PropagationGrid(0.0, tau_end, tau_end / n, sample_stride=n)
        alt = propagate(StateVector(y0), tau_rhs, grid_tau)
        c_alt = alt.final_state.amplitudes[:12]
        assert abs(alt.final_state.amplitudes[12].real - m.period) < 1e-7
        assert np.max(np.abs(c_alt - phys.final_state.amplitudes)) < 1e-7

    def test_norm_against_quadrature_of_wavefunction(self):
        # sum |C_n|^2 equals the physical norm integral for the scaled state
        m = motion(a=2.0, b=0.8, w0=1.0, N=10, periods=1)
        s = run_moving(m)
        assert s.metadata["max_norm_drift"] < 1e-9

        # independent: reconstruct |psi|^2 at t=0 from C = e_1 and integrate
        L0 = wall_position(0.0, m)
        val, _ = quad(lambda x: (2.0 / L0) * np.sin(np.pi * x / L0) ** 2, 0.0, L0)
        assert val == pytest.approx(1.0, abs=1e-12)
