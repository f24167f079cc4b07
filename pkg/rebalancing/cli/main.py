#!/usr/bin/env python3
"""Command-line entry point.

Examples:
    rebalancing mean-field --recipe convergence --out results/convergence
    rebalancing optimal-u --config my.cfg --x-floor 0.85
    rebalancing frontier --config results/frontier/manifest.json --out rerun
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from ..config import DEFAULTS
from ..errors import ConfigError, RebalancingError
from .config import ExperimentConfig, ExperimentName, build_config, list_recipes, load_config, load_recipe
from .experiments import EXIT_INVALID_CONFIG, run_experiment

logger = logging.getLogger(__name__)

SUBCOMMANDS = {
    "simulate-micro": ExperimentName.MICRO_VALIDATE,
    "mean-field": ExperimentName.MF_TRAJECTORY,
    "error-decay": ExperimentName.ERROR_DECAY,
    "equilibrium-scan": ExperimentName.EQUILIBRIUM_SCAN,
    "frontier": ExperimentName.FRONTIER,
    "optimal-u": ExperimentName.OPTIMAL_U,
}


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--config", type=str, help="Config file (key=value, JSON or manifest)")
    source.add_argument(
        "--recipe", type=str, help=f"Shipped recipe name ({', '.join(list_recipes())})"
    )
    parser.add_argument("--seed", type=int, default=None, help="Override the config seed")
    parser.add_argument("--out", type=str, default=None, help="Output directory")
    parser.add_argument(
        "--format", choices=["csv", "json"], default=None, help="Table format (default: csv)"
    )
    parser.add_argument("--verbose", action="store_true", help="Debug logging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rebalancing",
        description="Adherence-coupled rebalancing experiments",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, experiment in SUBCOMMANDS.items():
        sub = subparsers.add_parser(name, help=f"Run the {experiment.value} experiment")
        _add_common_flags(sub)
        if experiment == ExperimentName.OPTIMAL_U:
            sub.add_argument("--x-floor", type=float, default=None, help="Adherence floor")
    return parser


def _default_config(experiment: ExperimentName) -> dict:
    """Baseline parameters used when neither --config nor --recipe is given."""
    return {
        "experiment": experiment.value,
        "params": {
            "k_agents": DEFAULTS.k_agents,
            "p_base": DEFAULTS.p_base,
            "lambda": DEFAULTS.lam,
            "u": DEFAULTS.p_base,
        },
    }


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """Load the config named on the command line and apply flag overrides.

    Raises:
        ConfigError: If loading or validation fails, or the config is for a
            different experiment than the subcommand
    """
    experiment = SUBCOMMANDS[args.command]
    if args.config:
        config = load_config(args.config)
    elif args.recipe:
        config = load_recipe(args.recipe)
    else:
        data = _default_config(experiment)
        if getattr(args, "x_floor", None) is not None:
            data["x_floor"] = args.x_floor
        config = build_config(data)

    if config.experiment != experiment:
        raise ConfigError(
            f"config is for '{config.experiment.value}', not '{args.command}'", field="experiment"
        )

    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.out is not None:
        overrides["output_path"] = args.out
    if args.format is not None:
        overrides["output_format"] = args.format
    if getattr(args, "x_floor", None) is not None:
        overrides["x_floor"] = args.x_floor
    if overrides:
        data = config.model_dump(by_alias=True)
        data.update(overrides)
        config = build_config(data)
    return config


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point. Returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        config = resolve_config(args)
    except ConfigError as e:
        logger.error(f"Invalid configuration ({e.field or 'config'}): {e}")
        return EXIT_INVALID_CONFIG

    try:
        outcome = run_experiment(config)
    except RebalancingError as e:
        logger.error(f"Experiment rejected its configuration: {e}")
        return EXIT_INVALID_CONFIG

    print(json.dumps(outcome.report, indent=2))
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
