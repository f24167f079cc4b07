"""Unit tests for the mean-field recursion.

Run with: pytest tests/unit/test_meanfield.py -v
"""
import numpy as np
import pytest

from rebalancing.demand import build_poisson_table, eval_g, g_oracle
from rebalancing.equilibrium import solve_x_star
from rebalancing.errors import InvalidParameterError
from rebalancing.meanfield import (
    MeanFieldState,
    ModelParams,
    convergence_time,
    error_decay_slope,
    mf_step,
    mf_trajectory,
    mf_trajectory_pooled,
    predicted_decay_exponent,
    steady_state_window,
)


class TestMeanFieldStep:
    """Tests for one step of the recursion."""

    def test_arithmetic(self, baseline_params, baseline_table):
        """q_bar, n_bar' and gamma at the baseline initial state."""
        state = MeanFieldState(x_bar=0.25, n_bar=4.0)
        nxt, diag = mf_step(state, baseline_params, baseline_table)
        assert diag.q_bar == pytest.approx(0.35)
        assert nxt.n_bar == pytest.approx(4.35)
        assert diag.gamma == pytest.approx(0.35 / 4.35)
        assert nxt.epoch == 1

    def test_adherence_update(self, baseline_params, baseline_table):
        """x' = x + gamma (s - x) with s = g(35.65)."""
        state = MeanFieldState(x_bar=0.25, n_bar=4.0)
        nxt, diag = mf_step(state, baseline_params, baseline_table)
        s = g_oracle(35.65, 50.0)
        assert diag.s == pytest.approx(s, abs=1e-11)
        assert nxt.x_bar == pytest.approx(0.25 + (0.35 / 4.35) * (s - 0.25), abs=1e-11)

    def test_control_at_baseline(self, baseline_params, baseline_table):
        """u = p makes q_bar independent of x_bar."""
        params = baseline_params.with_u(0.3)
        for x in (0.0, 0.4, 1.0):
            _, diag = mf_step(MeanFieldState(x_bar=x, n_bar=2.0), params, baseline_table)
            assert diag.q_bar == pytest.approx(0.3)

    def test_invalid_state(self):
        """States outside the invariant set are rejected."""
        with pytest.raises(InvalidParameterError):
            MeanFieldState(x_bar=1.2, n_bar=1.0)
        with pytest.raises(InvalidParameterError):
            MeanFieldState(x_bar=0.5, n_bar=0.0)


class TestMeanFieldTrajectory:
    """Tests for trajectories."""

    def test_zero_horizon(self, baseline_params, baseline_table):
        """T = 0 returns the initial state only."""
        traj = mf_trajectory(baseline_params, 0.25, 4.0, 0, baseline_table)
        assert traj.x_bar.tolist() == [0.25]
        assert traj.n_bar.tolist() == [4.0]

    def test_approaches_fixed_point(self, baseline_params, baseline_table):
        """x_bar(T) approaches x*(0.5): ~3e-3 at T=1000, below 1e-3 at T=10^4."""
        x_star = solve_x_star(0.5, baseline_params, baseline_table).x_star
        short = mf_trajectory(baseline_params, 0.25, 4.0, 1000, baseline_table)
        assert abs(short.x_bar[-1] - x_star) <= 1e-2
        traj = mf_trajectory(baseline_params, 0.25, 4.0, 10_000, baseline_table)
        assert abs(traj.x_bar[-1] - x_star) <= 1e-3

    def test_fixed_point_is_stationary(self, baseline_params, baseline_table):
        """Starting at x* stays at x*."""
        x_star = solve_x_star(0.5, baseline_params, baseline_table).x_star
        traj = mf_trajectory(baseline_params, x_star, 7.0, 200, baseline_table)
        assert np.max(np.abs(traj.x_bar - x_star)) <= 1e-9

    def test_frame_columns(self, baseline_params, baseline_table):
        """CSV column order and throughput = q_bar * s."""
        frame = mf_trajectory(baseline_params, 0.25, 4.0, 10, baseline_table).to_frame()
        assert list(frame.columns) == ["t", "x_bar", "n_bar", "q_bar", "s", "gamma", "throughput"]
        assert len(frame) == 11
        np.testing.assert_allclose(frame["throughput"], frame["q_bar"] * frame["s"])

    def test_invariance_random_parameterizations(self):
        """x_bar stays in [0, 1] and n_bar is nondecreasing."""
        rng = np.random.default_rng(123)
        for _ in range(1000):
            k = int(rng.integers(1, 60))
            params = ModelParams(
                k_agents=k, p_base=float(rng.random()), lam=float(rng.uniform(0.1, 80)), u=float(rng.random())
            )
            table = build_poisson_table(params.lam, k)
            traj = mf_trajectory(params, float(rng.random()), float(rng.uniform(0.01, 20)), 30, table)
            assert np.all((traj.x_bar >= 0) & (traj.x_bar <= 1))
            assert np.all(np.diff(traj.n_bar) >= 0)

    def test_step_size_sandwich(self, baseline_params, baseline_table):
        """For u >= p: p / (n0 + t + 1) <= gamma(t) <= 1 / (n0 + t p)."""
        p, n0 = baseline_params.p_base, 4.0
        for u in (0.3, 0.6, 1.0):
            traj = mf_trajectory(baseline_params.with_u(u), 0.25, n0, 2000, baseline_table)
            t = traj.t
            assert np.all(traj.gamma >= p / (n0 + t + 1) - 1e-15)
            assert np.all(traj.gamma <= 1 / (n0 + t * p) + 1e-15)

    def test_pooled_form_matches_closed_recursion(self, baseline_params, baseline_table):
        """Evolving (alpha_bar, n_bar) gives the same trajectory."""
        for u in (0.3, 0.5, 0.9):
            params = baseline_params.with_u(u)
            traj = mf_trajectory(params, 0.25, 4.0, 2000, baseline_table)
            pooled_x, pooled_n = mf_trajectory_pooled(params, 0.25, 4.0, 2000, baseline_table)
            np.testing.assert_allclose(pooled_x, traj.x_bar, rtol=0, atol=1e-12)
            np.testing.assert_allclose(pooled_n, traj.n_bar, rtol=1e-14)

    def test_invalid_inputs(self, baseline_params, baseline_table):
        """n0 <= 0 and negative horizons are rejected."""
        with pytest.raises(InvalidParameterError):
            mf_trajectory(baseline_params, 0.25, 0.0, 10, baseline_table)
        with pytest.raises(InvalidParameterError):
            mf_trajectory(baseline_params, 0.25, 4.0, -1, baseline_table)


class TestConvergenceTime:
    """Tests for the epsilon-convergence time."""

    def test_constant_trajectory(self):
        """Already converged gives 0."""
        assert convergence_time([0.4] * 10, 0.4, 1e-6) == 0

    def test_entry_into_band(self):
        """Last exit from the band determines the time."""
        assert convergence_time([0.0, 0.5, 0.0, 0.39, 0.41, 0.40], 0.4, 0.02) == 3

    def test_baseline_finite(self, baseline_params, baseline_table):
        """The baseline trajectory enters the 0.01 band."""
        traj = mf_trajectory(baseline_params, 0.25, 4.0, 1000, baseline_table)
        x_star = solve_x_star(0.5, baseline_params, baseline_table).x_star
        t_eps = convergence_time(traj, x_star, 0.01)
        assert t_eps is not None and 0 < t_eps <= 1000

    def test_not_reached(self):
        """Ending outside the band reports not reached."""
        assert convergence_time([0.4, 0.4, 0.9], 0.4, 0.01) is None

    def test_invalid(self):
        """Empty trajectories and nonpositive epsilon are rejected."""
        with pytest.raises(InvalidParameterError):
            convergence_time([], 0.4, 0.01)
        with pytest.raises(InvalidParameterError):
            convergence_time([0.4], 0.4, 0.0)


class TestRateDiagnostics:
    """Tests for steady-state averaging and error decay."""

    def test_steady_state_window(self, baseline_params, baseline_table):
        """The transient estimate lands near the equilibrium."""
        x_mean, throughput = steady_state_window(
            baseline_params, 0.25, 4.0, 1000, 200, baseline_table
        )
        x_star = solve_x_star(0.5, baseline_params, baseline_table).x_star
        # the transient error after 1000 epochs is still a few 1e-3
        assert abs(x_mean - x_star) <= 1e-2
        assert throughput == pytest.approx((0.3 + 0.2 * x_star) * x_star, abs=1e-2)

    def test_slope_of_power_law(self):
        """A pure power law is recovered exactly."""
        t = np.arange(2000, dtype=float)
        series = 0.5 + np.where(t > 0, 3.0 * np.maximum(t, 1) ** -1.0, 1.0)
        assert error_decay_slope(series, 0.5, 10, 1999) == pytest.approx(-1.0, abs=1e-9)

    def test_predicted_exponent_at_baseline(self, baseline_params, baseline_table):
        """u = p predicts a C/t decay."""
        params = baseline_params.with_u(0.3)
        x_star = solve_x_star(0.3, params, baseline_table).x_star
        assert predicted_decay_exponent(x_star, params, baseline_table) == pytest.approx(1.0)

    def test_slope_tracks_prediction(self, baseline_params, baseline_table):
        """Measured decay slope follows the linearized exponent."""
        params = baseline_params.with_u(0.5)
        x_star = solve_x_star(0.5, params, baseline_table).x_star
        traj = mf_trajectory(params, 0.25, 4.0, 10_000, baseline_table)
        slope = error_decay_slope(traj, x_star)
        predicted = predicted_decay_exponent(x_star, params, baseline_table)
        assert slope == pytest.approx(-predicted, abs=0.15)
