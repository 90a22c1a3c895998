import numpy as np
import pytest
from scipy.special import erf

from cavity_grover import (
    GaussianPulse,
    PulsePair,
    cumulative_area,
    design_schedule,
    figure3_pulse,
    ratio_from_rho,
    verify_adiabaticity,
)


class TestGaussianPulse:
    def test_value_and_window(self):
        p = GaussianPulse(peak=2.0, width=1.5, cutoff=4)
        assert p.value(0.0) == pytest.approx(2.0)
        assert p.value(1.5) == pytest.approx(2.0 * np.exp(-1.0))
        assert p.window == (-6.0, 6.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            GaussianPulse(peak=-1.0, width=1.0)
        with pytest.raises(ValueError):
            GaussianPulse(peak=1.0, width=1.0, cutoff=2.0)

    def test_area_exact_full_window(self):
        p = GaussianPulse(peak=3.0, width=2.0, cutoff=4)
        full = 3.0 * 2.0 * np.sqrt(np.pi) * erf(4.0)
        assert p.area_exact(p.window[1]) == pytest.approx(full)
        assert p.area_exact(p.window[0]) == pytest.approx(0.0)

    def test_cumulative_area_matches_closed_form(self):
        p = GaussianPulse(peak=1.7, width=0.8, cutoff=4)
        for t in (-3.0, -1.0, 0.0, 0.5, 2.5, p.window[1]):
            assert cumulative_area(p, t) == pytest.approx(p.area_exact(t), abs=1e-10)

    def test_cumulative_area_outside_window(self):
        p = GaussianPulse(peak=1.0, width=1.0)
        with pytest.raises(ValueError):
            cumulative_area(p, 10.0)


class TestRatio:
    def test_switch_on_together(self):
        assert ratio_from_rho(8, 0.05, 0.0) == pytest.approx(1.0)

    def test_completion(self):
        assert ratio_from_rho(8, 0.05, np.sqrt(7) / 0.05) == pytest.approx(0.0, abs=1e-15)

    def test_n2_midpoint(self):
        # eps*A = 0.5 at N=2: rho = 0.5 / sqrt(1.75)
        assert ratio_from_rho(2, 0.1, 5.0) == pytest.approx(0.5 / np.sqrt(1.75))

    def test_monotone_decreasing(self):
        areas = np.linspace(0.0, np.sqrt(7) / 0.05, 500)
        rho = ratio_from_rho(8, 0.05, areas)
        assert np.all(np.diff(rho) < 0)
        assert np.all((0 <= rho) & (rho <= 1))

    def test_clamps_past_completion(self):
        assert ratio_from_rho(4, 0.1, 1e6) == 0.0

    def test_rejects_negative_area(self):
        with pytest.raises(ValueError):
            ratio_from_rho(4, 0.1, -1.0)


class TestDesignSchedule:
    def test_figure3_peak_amplitude(self, fig3_schedule):
        # Omega_peak * width = sqrt(7)/(0.05 sqrt(pi)), then /erf(4) for truncation
        expect = np.sqrt(7) / (0.05 * np.sqrt(np.pi)) / erf(4.0)
        assert fig3_schedule.meta["omega_peak"] == pytest.approx(expect, rel=1e-5)
        # the sampled grid need not land exactly on the pulse center
        assert fig3_schedule.omega.max() == pytest.approx(
            fig3_schedule.meta["omega_peak"], rel=1e-5)
        assert expect == pytest.approx(29.854, abs=2e-3)

    def test_final_area_exact(self, fig3_schedule):
        assert fig3_schedule.epsilon * fig3_schedule.area[-1] == np.sqrt(7)

    def test_duration_law(self, fig3_schedule):
        assert fig3_schedule.omega_bar * fig3_schedule.duration == pytest.approx(
            np.sqrt(7) / 0.05)

    def test_second_pulse_area(self, fig3_schedule):
        # eps * int Omega' dt = (sqrt(N)-1)/sqrt(N-1)
        expect = (np.sqrt(8) - 1) / np.sqrt(7)
        got = 0.05 * fig3_schedule.omega_prime_area()
        assert got == pytest.approx(expect, rel=1e-6)
        assert got == pytest.approx(0.6911, abs=1e-4)

    def test_switching_conditions(self, fig3_schedule):
        s = fig3_schedule
        assert s.omega_prime[0] == pytest.approx(s.omega[0])
        assert s.omega_prime[-1] == 0.0
        assert s.omega[-1] > 0.0

    def test_theta_sweeps_its_range(self, fig3_schedule):
        th = fig3_schedule.theta
        assert th[0] == pytest.approx(np.arctan2(-np.sqrt(7), 1.0))
        assert th[-1] == 0.0
        assert np.all(np.diff(th) > 0)

    def test_duration_scales_with_sqrt_n(self):
        eps = 0.05
        for n in (2, 8, 32):
            s = design_schedule(n, eps, figure3_pulse(n, eps), n_samples=500)
            assert s.omega_bar * s.duration == pytest.approx(np.sqrt(n - 1) / eps)

    def test_epsilon_bounds(self):
        with pytest.raises(ValueError):
            design_schedule(8, 0.0)
        with pytest.raises(ValueError):
            design_schedule(8, 0.5)

    def test_minimum_samples(self):
        with pytest.raises(ValueError):
            design_schedule(8, 0.05, n_samples=10)

    def test_serialization_columns(self, fig3_schedule):
        lines = fig3_schedule.to_text().strip().splitlines()
        assert lines[0].startswith("# n_atoms 8")
        header = [ln for ln in lines if ln.startswith("# t ")]
        assert header == ["# t omega omega_prime area theta"]
        data = [ln for ln in lines if not ln.startswith("#")]
        assert len(data) == len(fig3_schedule.grid)
        assert len(data[0].split()) == 5


class TestPulsePair:
    def test_invariants(self):
        grid = np.linspace(0, 1, 50)
        with pytest.raises(ValueError):
            PulsePair(0.1, 4, grid[::-1], grid, grid, grid)
        with pytest.raises(ValueError):
            PulsePair(0.1, 4, grid, -np.ones(50), grid, grid)

    def test_without_second_pulse(self, fig3_schedule):
        bare = fig3_schedule.without_second_pulse()
        assert isinstance(bare, PulsePair)
        assert np.all(bare.omega_prime == 0.0)
        assert np.array_equal(bare.omega, fig3_schedule.omega)
        assert np.all(bare.theta == 0.0)

    def test_amplitudes_at_interpolates(self, fig3_schedule):
        t = 0.5 * (fig3_schedule.grid[10] + fig3_schedule.grid[11])
        om, omp = fig3_schedule.amplitudes_at(t)
        assert om == pytest.approx(
            0.5 * (fig3_schedule.omega[10] + fig3_schedule.omega[11]))
        assert omp == pytest.approx(
            0.5 * (fig3_schedule.omega_prime[10] + fig3_schedule.omega_prime[11]))


class TestVerifyAdiabaticity:
    def test_designed_schedule_holds_ratio(self, fig3_schedule):
        report = verify_adiabaticity(fig3_schedule)
        assert report.max_deviation <= 0.01 * fig3_schedule.epsilon

    def test_discretization_error_shrinks_with_refinement(self):
        eps = 0.05
        coarse = verify_adiabaticity(design_schedule(8, eps, n_samples=1000))
        fine = verify_adiabaticity(design_schedule(8, eps, n_samples=2000))
        assert coarse.max_deviation / fine.max_deviation >= 3.5  # second order

    def test_frozen_ratio_violates_design(self):
        # keep Omega'/Omega fixed at its switch-on value: theta stays constant,
        # so the measured ratio theta_dot/Lambda deviates by the full epsilon
        s = design_schedule(8, 0.05, n_samples=2000)
        frozen = PulsePair(epsilon=s.epsilon, n_atoms=8, grid=s.grid,
                           omega=s.omega, omega_prime=s.omega.copy(), area=s.area)
        report = verify_adiabaticity(frozen)
        assert report.max_deviation == pytest.approx(0.05, abs=1e-8)
