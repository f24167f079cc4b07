#!/usr/bin/env python3
"""Compare two experiment output directories for reproducibility.

Both directories must hold the same artifact names. Files that are not
byte-identical are compared value by value: CSV tables through pandas,
JSON documents recursively. Floats may differ by at most --tolerance
(default 0, i.e. exact).
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, List, Optional, Tuple

import numpy as np
import pandas as pd


def compare_values(a: Any, b: Any, tolerance: float, where: str) -> Optional[str]:
    """Recursive comparison of decoded JSON values.

    Returns:
        None if the values match, error message if they differ
    """
    if isinstance(a, dict) and isinstance(b, dict):
        if set(a) != set(b):
            return f"{where}: keys differ: {sorted(set(a) ^ set(b))}"
        for key in a:
            error = compare_values(a[key], b[key], tolerance, f"{where}.{key}")
            if error:
                return error
        return None
    if isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            return f"{where}: length differs: {len(a)} vs {len(b)}"
        for i, (v1, v2) in enumerate(zip(a, b)):
            error = compare_values(v1, v2, tolerance, f"{where}[{i}]")
            if error:
                return error
        return None
    if isinstance(a, float) and isinstance(b, float):
        if abs(a - b) > tolerance:
            return f"{where}: {a} vs {b}"
        return None
    if a != b:
        return f"{where}: {a} vs {b}"
    return None


def compare_tables(path1: Path, path2: Path, tolerance: float) -> Optional[str]:
    frame1, frame2 = pd.read_csv(path1), pd.read_csv(path2)
    if list(frame1.columns) != list(frame2.columns):
        return f"columns differ: {list(frame1.columns)} vs {list(frame2.columns)}"
    if len(frame1) != len(frame2):
        return f"row count differs: {len(frame1)} vs {len(frame2)}"
    for column in frame1.columns:
        v1, v2 = frame1[column].to_numpy(), frame2[column].to_numpy()
        if not np.allclose(v1, v2, rtol=0.0, atol=tolerance, equal_nan=True):
            row = int(np.argmax(~np.isclose(v1, v2, rtol=0.0, atol=tolerance, equal_nan=True)))
            return f"column '{column}' row {row}: {v1[row]} vs {v2[row]}"
    return None


def compare_file(path1: Path, path2: Path, tolerance: float) -> Optional[str]:
    if path1.read_bytes() == path2.read_bytes():
        return None
    if tolerance == 0.0:
        return "contents differ"
    if path1.suffix == ".csv":
        return compare_tables(path1, path2, tolerance)
    if path1.suffix == ".json":
        try:
            doc1, doc2 = json.loads(path1.read_text()), json.loads(path2.read_text())
        except json.JSONDecodeError as e:
            return f"invalid JSON: {e}"
        return compare_values(doc1, doc2, tolerance, "$")
    return "contents differ"


def compare_dirs(dir1: Path, dir2: Path, tolerance: float = 0.0) -> Tuple[bool, List[str]]:
    """Compare every artifact in two output directories.

    Returns:
        (is_match, error messages)
    """
    for directory in (dir1, dir2):
        if not directory.is_dir():
            return False, [f"Directory not found: {directory}"]

    names1 = sorted(p.name for p in dir1.iterdir() if p.is_file())
    names2 = sorted(p.name for p in dir2.iterdir() if p.is_file())
    if names1 != names2:
        return False, [f"Artifact sets differ: {sorted(set(names1) ^ set(names2))}"]
    if not names1:
        return False, ["No artifacts found"]

    errors = []
    for name in names1:
        error = compare_file(dir1 / name, dir2 / name, tolerance)
        if error:
            errors.append(f"{name}: {error}")
    return not errors, errors


def main() -> int:
    parser = argparse.ArgumentParser(description="Compare two experiment output directories")
    parser.add_argument("run1", type=Path)
    parser.add_argument("run2", type=Path)
    parser.add_argument("--tolerance", type=float, default=0.0, help="Allowed float difference")
    args = parser.parse_args()

    is_match, errors = compare_dirs(args.run1, args.run2, args.tolerance)
    if is_match:
        print("Reproducibility: PASS")
        print("All artifacts match across runs.")
        return 0
    print("Reproducibility: FAIL")
    for error in errors:
        print(f"Error: {error}")
    return 1


if __name__ == "__main__":
    sys.exit(main())
