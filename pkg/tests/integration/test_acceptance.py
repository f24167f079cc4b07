"""End-to-end checks on the published experiment settings.

K=100, p=0.3, lambda=50, x_bar(0)=0.25 and n_bar(0)=4 unless a test says
otherwise.

Run with: pytest tests/integration/test_acceptance.py -v
"""
import numpy as np
import pytest

from rebalancing.cli.config import build_config, load_recipe
from rebalancing.cli.experiments import run_experiment
from rebalancing.control import (
    frontier,
    gamma_prime_at_p,
    grid_scan_u_max,
    optimal_u,
    steady_state_metrics,
    steady_state_throughput,
)
from rebalancing.demand import build_poisson_table, eval_g, g_oracle
from rebalancing.equilibrium import scan_fixed_points, solve_x_star, uniqueness_certificate
from rebalancing.meanfield import error_decay_slope, mf_trajectory, predicted_decay_exponent
from rebalancing.micro import uniform_match
from rebalancing.schemas import CertificateRegime, ControlStatus, ModelParams

U_GRID = [round(0.3 + 0.05 * i, 2) for i in range(15)]


@pytest.mark.timeout(30)
@pytest.mark.parametrize("lam", [1.0, 10.0, 50.0, 80.0])
def test_closed_form_matches_oracle(lam):
    """eval_g agrees with direct summation on 1000 points of [1, K]."""
    table = build_poisson_table(lam, 100)
    for a in np.linspace(1.0, 100.0, 1000):
        assert abs(eval_g(float(a), table) - g_oracle(float(a), lam)) <= 1e-11


@pytest.mark.timeout(300)
def test_mean_field_tracks_heterogeneous_micro(tmp_path):
    """100 Monte Carlo runs of a heterogeneous population stay within 0.02 of the recursion."""
    recipe = load_recipe("micro_validation")
    data = recipe.model_dump(by_alias=True)
    data["output_path"] = str(tmp_path)
    outcome = run_experiment(build_config(data))
    assert outcome.report["runs"] == 100 and outcome.report["horizon"] == 200
    assert outcome.report["max_gap_pooled"] <= 0.02
    assert outcome.report["max_gap_direct"] <= 0.02


@pytest.mark.timeout(120)
def test_unique_equilibrium_for_controls_above_baseline():
    """50 random instances with u >= p: one root, equal to the bisection solve."""
    rng = np.random.default_rng(20240601)
    for _ in range(50):
        k = int(rng.integers(2, 201))
        p = float(rng.random())
        u = float(rng.uniform(p, 1.0))
        params = ModelParams(k_agents=k, p_base=p, lam=float(rng.uniform(0.5, 100.0)))
        table = build_poisson_table(params.lam, k)
        scan = scan_fixed_points(u, params, table)
        assert len(scan.roots) == 1
        assert scan.roots[0] == pytest.approx(solve_x_star(u, params, table).x_star, abs=1e-8)


@pytest.mark.timeout(60)
def test_multiple_equilibria_at_small_control():
    """K=50, p=0.9, lambda=10: several roots at u=0.05, one at u=0.6."""
    params = ModelParams(k_agents=50, p_base=0.9, lam=10.0)
    table = build_poisson_table(params.lam, params.k_agents)

    crowded = uniqueness_certificate(0.05, params, table)
    assert crowded.regime == CertificateRegime.INCONCLUSIVE
    assert crowded.lipschitz_constant >= 1.0
    assert len(scan_fixed_points(0.05, params, table).roots) >= 2

    relaxed = uniqueness_certificate(0.6, params, table)
    assert relaxed.regime == CertificateRegime.CONTRACTION
    assert len(scan_fixed_points(0.6, params, table).roots) == 1


@pytest.mark.timeout(120)
def test_global_convergence(baseline_params, baseline_table):
    """x_bar(10^4) is within 1e-3 of x*(u) and decreases with u."""
    finals = []
    for u in (0.3, 0.5, 0.7, 0.9):
        traj = mf_trajectory(baseline_params.with_u(u), 0.25, 4.0, 10_000, baseline_table)
        x_star = solve_x_star(u, baseline_params, baseline_table).x_star
        assert abs(traj.x_bar[-1] - x_star) <= 1e-3
        finals.append(traj.x_bar[-1])
    assert all(b <= a for a, b in zip(finals, finals[1:]))


@pytest.mark.timeout(120)
@pytest.mark.parametrize("u", [0.5, 0.7, 0.9])
def test_error_decay_signature(baseline_params, baseline_table, u):
    """Log-log slope of the error follows the linearized exponent."""
    params = baseline_params.with_u(u)
    x_star = solve_x_star(u, baseline_params, baseline_table).x_star
    traj = mf_trajectory(params, 0.25, 4.0, 10_000, baseline_table)
    slope = error_decay_slope(traj, x_star, 100, 10_000)
    predicted = -predicted_decay_exponent(x_star, params, baseline_table)
    assert slope < 0
    assert slope == pytest.approx(predicted, abs=0.15)
    # the C/t band only where linearization puts the exponent inside it
    if -1.4 <= predicted <= -0.6:
        assert -1.4 <= slope <= -0.6


@pytest.mark.timeout(300)
def test_frontier_shape_and_transient_agreement(baseline_params, baseline_table):
    """x_inf nonincreasing; transient averages agree with equilibrium points."""
    eq = frontier(baseline_params, U_GRID, baseline_table)
    xs = [pt.x_inf for pt in eq]
    assert all(b <= a + 1e-9 for a, b in zip(xs, xs[1:]))

    # 1000 epochs from x_bar(0)=0.25 leave an O(n0 / n(T)) transient near u = p
    short = frontier(baseline_params, U_GRID, baseline_table, method="transient", horizon=1000, window=200)
    for a, b in zip(eq, short):
        assert abs(a.x_inf - b.x_inf) <= 1.5e-2
        if a.u >= 0.5:
            assert abs(a.x_inf - b.x_inf) <= 5e-3

    long = frontier(baseline_params, U_GRID, baseline_table, method="transient", horizon=10_000, window=200)
    for a, b in zip(eq, long):
        assert abs(a.x_inf - b.x_inf) <= 5e-3


@pytest.mark.timeout(300)
def test_optimal_control(baseline_params, baseline_table):
    """Bisection agrees with a 10^4-point grid and handles both edge cases."""
    result = optimal_u(baseline_params, 0.9, table=baseline_table)
    assert result.status == ControlStatus.OPTIMAL
    assert abs(result.x_at_u_star - 0.9) <= 1e-4

    points = 10_000
    grid_best = grid_scan_u_max(baseline_params, 0.9, baseline_table, points=points)
    spacing = 0.7 / (points - 1)
    assert grid_best <= result.u_star + result.delta_u
    assert result.u_star - grid_best <= spacing + result.delta_u

    x_p = steady_state_metrics(0.3, baseline_params, baseline_table).x_inf
    above = optimal_u(baseline_params, x_p + (1 - x_p) / 2, table=baseline_table)
    assert above.status == ControlStatus.INFEASIBLE

    x_one = steady_state_metrics(1.0, baseline_params, baseline_table).x_inf
    below = optimal_u(baseline_params, x_one / 2, table=baseline_table)
    assert below.status == ControlStatus.SATURATED_AT_ONE
    assert below.u_star == 1.0


@pytest.mark.timeout(600)
def test_optimal_control_matches_grid_on_random_instances():
    """20 random instances with a binding floor: bisection within one grid spacing of the scan."""
    rng = np.random.default_rng(5)
    points = 2001
    checked = 0
    while checked < 20:
        k = int(rng.integers(2, 200))
        p = float(rng.uniform(0.05, 0.9))
        params = ModelParams(k_agents=k, p_base=p, lam=float(rng.uniform(1.0, 100.0)))
        table = build_poisson_table(params.lam, k)
        x_p = steady_state_metrics(p, params, table).x_inf
        x_one = steady_state_metrics(1.0, params, table).x_inf
        # demand far above supply leaves x_inf flat in u
        if x_p - x_one < 1e-2:
            continue
        x_floor = x_one + (x_p - x_one) / 2

        result = optimal_u(params, x_floor, table=table)
        assert result.status == ControlStatus.OPTIMAL
        grid_best = grid_scan_u_max(params, x_floor, table, points=points)
        spacing = (1.0 - p) / (points - 1)
        assert grid_best is not None
        assert grid_best <= result.u_star + result.delta_u
        assert result.u_star - grid_best <= spacing + result.delta_u
        checked += 1


@pytest.mark.timeout(120)
def test_uniform_matching_frequencies():
    """d=3, n=10 over 10^5 draws: each driver wins 0.3 of the time."""
    rng = np.random.default_rng(99)
    active = np.arange(10)
    wins = np.zeros(10)
    for _ in range(100_000):
        chosen = uniform_match(active, 3, rng)
        assert len(chosen) == 3
        wins[chosen] += 1
    np.testing.assert_allclose(wins / 100_000, 0.3, atol=5e-3)


@pytest.mark.timeout(60)
def test_throughput_slope_at_baseline(baseline_params, baseline_table):
    """Closed-form slope at u = p vs central difference; positive slope raises throughput."""
    h = 1e-4
    fd = (
        steady_state_throughput(0.3 + h, baseline_params, baseline_table)
        - steady_state_throughput(0.3 - h, baseline_params, baseline_table)
    ) / (2 * h)
    slope = gamma_prime_at_p(baseline_params, baseline_table)
    assert slope == pytest.approx(fd, rel=1e-2)
    if slope > 0:
        base = steady_state_metrics(0.3, baseline_params, baseline_table)
        nudged = steady_state_metrics(0.301, baseline_params, baseline_table)
        assert nudged.throughput > base.throughput
        assert nudged.x_inf <= base.x_inf
