"""Experiment dispatch: one runner per experiment kind."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from ..config import DEFAULTS
from ..control import (
    frontier,
    gamma_prime_at_p,
    optimal_u,
    throughput_monotonicity_certificate,
)
from ..demand import PoissonTable, build_poisson_table
from ..equilibrium import fixed_point_map, scan_fixed_points, solve_x_star, uniqueness_certificate
from ..errors import ConfigError, RegimeError
from ..meanfield import (
    convergence_time,
    error_decay_slope,
    mf_trajectory,
    predicted_decay_exponent,
)
from ..micro import (
    MicroState,
    heterogeneous_population,
    make_init_stream,
    pooled_mean,
    run_monte_carlo,
)
from ..schemas import ControlStatus
from .config import ExperimentConfig, ExperimentName
from .output import write_json, write_manifest, write_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID_CONFIG = 2
EXIT_INFEASIBLE = 3


@dataclass
class ExperimentOutcome:
    """Exit status, written artifacts and the JSON report of a run."""

    exit_code: int
    files: List[Path] = field(default_factory=list)
    report: Dict[str, Any] = field(default_factory=dict)


def _u_tag(u: float) -> str:
    return f"u{u:.4f}"


def _x_star_or_none(u: float, config: ExperimentConfig, table: PoissonTable) -> Optional[float]:
    try:
        return solve_x_star(u, config.params, table, config.tolerances.delta_x).x_star
    except RegimeError:
        return None


def _initial_population(config: ExperimentConfig) -> MicroState:
    init, k = config.init, config.params.k_agents
    if init.heterogeneous:
        return heterogeneous_population(
            k,
            make_init_stream(config.seed),
            alpha_range=init.alpha_range,
            beta_range=init.beta_range,
            p_range=init.p_range,
        )
    if not 0.0 < init.x0 < 1.0:
        raise ConfigError("homogeneous micro populations need 0 < x0 < 1", field="init.x0")
    return MicroState.homogeneous(
        k,
        alpha=init.x0 * init.n0,
        beta=(1.0 - init.x0) * init.n0,
        p_base=config.params.p_base,
    )


def run_micro_validate(config: ExperimentConfig, table: PoissonTable, out_dir: Path) -> ExperimentOutcome:
    """Monte Carlo micro simulation against the mean-field recursion."""
    initial = _initial_population(config)
    result = run_monte_carlo(
        config.params,
        initial,
        horizon=config.horizon,
        runs=config.runs,
        seed=config.seed,
        table=table,
        workers=config.workers,
    )

    # mean-field reference from the population averages
    mf_params = config.params.model_copy(update={"p_base": float(initial.p_base.mean())})
    traj = mf_trajectory(
        mf_params, pooled_mean(initial), float(initial.n.mean()), config.horizon, table
    )

    summary = result.summary()
    summary["mean_field_x_bar"] = traj.x_bar.tolist()
    summary["max_gap_direct"] = float(np.max(np.abs(result.mean_direct - traj.x_bar)))
    summary["max_gap_pooled"] = float(np.max(np.abs(result.mean_pooled - traj.x_bar)))

    files = [
        write_table(result.to_frame(), out_dir, "micro_trajectories", config.output_format),
        write_json(summary, out_dir / "micro_summary.json"),
    ]
    report = {k: summary[k] for k in ("runs", "horizon", "seed", "max_gap_direct", "max_gap_pooled")}
    return ExperimentOutcome(EXIT_OK, files, report)


def run_mf_trajectory(config: ExperimentConfig, table: PoissonTable, out_dir: Path) -> ExperimentOutcome:
    """Mean-field trajectories for each control with their convergence times."""
    files = []
    entries = []
    for u in config.controls():
        traj = mf_trajectory(config.params.with_u(u), config.init.x0, config.init.n0, config.horizon, table)
        files.append(write_table(traj.to_frame(), out_dir, f"mf_trajectory_{_u_tag(u)}", config.output_format))
        x_star = _x_star_or_none(u, config, table)
        entries.append(
            {
                "u": u,
                "x_bar_final": float(traj.x_bar[-1]),
                "throughput_final": float(traj.throughput[-1]),
                "x_star": x_star,
                "convergence_time": (
                    convergence_time(traj, x_star, config.tolerances.epsilon)
                    if x_star is not None
                    else None
                ),
            }
        )
    report = {"epsilon": config.tolerances.epsilon, "trajectories": entries}
    files.append(write_json(report, out_dir / "mf_summary.json"))
    return ExperimentOutcome(EXIT_OK, files, report)


def run_error_decay(config: ExperimentConfig, table: PoissonTable, out_dir: Path) -> ExperimentOutcome:
    """Error |x_bar(t) - x*(u)| with its log-log slope per control."""
    t_min, t_max = config.decay_window
    files = []
    entries = []
    for u in config.controls():
        params = config.params.with_u(u)
        x_star = solve_x_star(u, config.params, table, config.tolerances.delta_x).x_star
        traj = mf_trajectory(params, config.init.x0, config.init.n0, config.horizon, table)
        frame = pd.DataFrame(
            {"t": traj.t, "x_bar": traj.x_bar, "x_star": x_star, "abs_error": np.abs(traj.x_bar - x_star)}
        )
        files.append(write_table(frame, out_dir, f"error_decay_{_u_tag(u)}", config.output_format))
        entries.append(
            {
                "u": u,
                "x_star": x_star,
                "slope": error_decay_slope(traj, x_star, t_min, t_max),
                "predicted_slope": -predicted_decay_exponent(x_star, params, table),
            }
        )
    report = {"window": [t_min, t_max], "controls": entries}
    files.append(write_json(report, out_dir / "error_decay_summary.json"))
    return ExperimentOutcome(EXIT_OK, files, report)


def run_equilibrium_scan(config: ExperimentConfig, table: PoissonTable, out_dir: Path) -> ExperimentOutcome:
    """Fixed-point structure at params.u."""
    u = config.params.u
    scan = scan_fixed_points(u, config.params, table, config.grid_size)
    certificate = uniqueness_certificate(u, config.params, table)
    files = [
        write_table(
            pd.DataFrame({"x_grid": scan.x_grid, "phi": scan.phi}),
            out_dir,
            "fixed_point_scan",
            config.output_format,
        ),
        write_table(fixed_point_map(u, config.params, table), out_dir, "fixed_point_map", config.output_format),
    ]
    report = {
        "u": u,
        "roots": scan.roots,
        "tangential": scan.tangential,
        "certificate": certificate.model_dump(mode="json"),
        "x_star": _x_star_or_none(u, config, table),
    }
    files.append(write_json(report, out_dir / "equilibrium_report.json"))
    return ExperimentOutcome(EXIT_OK, files, report)


def run_frontier(config: ExperimentConfig, table: PoissonTable, out_dir: Path) -> ExperimentOutcome:
    """Adherence/throughput frontier plus the shape certificates."""
    u_values = config.u_values if config.u_values is not None else list(DEFAULTS.u_grid)
    points = frontier(
        config.params,
        u_values,
        table,
        method=config.frontier_method,
        delta_x=config.tolerances.delta_x,
        x0=config.init.x0,
        n0=config.init.n0,
        horizon=config.horizon,
        window=config.steady_state_window,
    )
    frame = pd.DataFrame([m.model_dump() for m in points], columns=["u", "x_inf", "q_star", "throughput"])
    files = [write_table(frame, out_dir, "frontier", config.output_format)]

    certificate = throughput_monotonicity_certificate(
        config.params, table, config.certificate_resolution, config.tolerances.delta_x
    )
    report: Dict[str, Any] = {
        "method": config.frontier_method,
        "gamma_prime_at_p": gamma_prime_at_p(config.params, table),
        "monotonicity": certificate.model_dump(mode="json"),
    }
    if config.x_floor is not None:
        report["optimum"] = optimal_u(
            config.params, config.x_floor, config.tolerances.delta_u, config.tolerances.delta_x, table
        ).model_dump(mode="json")
    files.append(write_json(report, out_dir / "frontier_report.json"))
    return ExperimentOutcome(EXIT_OK, files, report)


def run_optimal_u(config: ExperimentConfig, table: PoissonTable, out_dir: Path) -> ExperimentOutcome:
    """Largest control meeting the adherence floor."""
    result = optimal_u(
        config.params, config.x_floor, config.tolerances.delta_u, config.tolerances.delta_x, table
    )
    report = result.model_dump(mode="json")
    report["tolerances"] = {"delta_u": result.delta_u, "delta_x": result.delta_x}
    exit_code = EXIT_OK
    if result.status == ControlStatus.INFEASIBLE:
        report["message"] = (
            f"INFEASIBLE: adherence floor {config.x_floor} exceeds the adherence at u = p"
        )
        exit_code = EXIT_INFEASIBLE
    files = [write_json(report, out_dir / "optimal_u.json")]
    return ExperimentOutcome(exit_code, files, report)


RUNNERS: Dict[ExperimentName, Callable[[ExperimentConfig, PoissonTable, Path], ExperimentOutcome]] = {
    ExperimentName.MICRO_VALIDATE: run_micro_validate,
    ExperimentName.MF_TRAJECTORY: run_mf_trajectory,
    ExperimentName.ERROR_DECAY: run_error_decay,
    ExperimentName.EQUILIBRIUM_SCAN: run_equilibrium_scan,
    ExperimentName.FRONTIER: run_frontier,
    ExperimentName.OPTIMAL_U: run_optimal_u,
}


def run_experiment(config: ExperimentConfig) -> ExperimentOutcome:
    """Run the configured experiment and write its artifacts and manifest.

    Args:
        config: Validated experiment configuration

    Returns:
        ExperimentOutcome; exit_code is EXIT_INFEASIBLE for an infeasible
        adherence floor

    Raises:
        RebalancingError: If a module rejects the configured values
    """
    out_dir = Path(config.output_path)
    logger.info(
        f"Running {config.experiment.value}: K={config.params.k_agents}, p={config.params.p_base}, "
        f"lambda={config.params.lam}, seed={config.seed}, out={out_dir}"
    )
    table = build_poisson_table(config.params.lam, config.params.k_agents)
    outcome = RUNNERS[config.experiment](config, table, out_dir)
    outcome.files.append(write_manifest(config, out_dir, outcome.files))
    logger.info(f"{config.experiment.value} finished with exit code {outcome.exit_code}")
    return outcome
