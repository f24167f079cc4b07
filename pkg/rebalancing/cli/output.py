"""Artifact writers.

Outputs carry no timestamps or host data so that identical configs produce
byte-identical files.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List

import pandas as pd

from .. import __version__
from .config import ExperimentConfig

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
MANIFEST_VERSION = 1


def write_table(frame: pd.DataFrame, out_dir: Path, stem: str, fmt: str = "csv") -> Path:
    """Write a table as CSV or as a JSON list of records."""
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        path = out_dir / f"{stem}.csv"
        frame.to_csv(path, index=False)
    elif fmt == "json":
        path = out_dir / f"{stem}.json"
        write_json(frame.to_dict(orient="records"), path)
    else:
        raise ValueError(f"unknown output format '{fmt}'")
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def write_json(payload: Any, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    return path


def write_manifest(config: ExperimentConfig, out_dir: Path, artifacts: List[Path]) -> Path:
    """Record the full config, seed and artifact list next to the outputs."""
    manifest: Dict[str, Any] = {
        "manifest_version": MANIFEST_VERSION,
        "package_version": __version__,
        "experiment": config.experiment.value,
        "seed": config.seed,
        # output location is not part of the experiment
        "config": config.model_dump(mode="json", by_alias=True, exclude={"output_path"}),
        "artifacts": sorted(p.name for p in artifacts),
    }
    path = write_json(manifest, out_dir / MANIFEST_NAME)
    logger.info(f"Manifest written to {path}")
    return path
