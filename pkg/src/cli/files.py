import csv
import json
import logging
import os
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from scipy import stats

from src.costs import CostSpec, Modulus, modulus_from_dict
from src.dual_core import DualPotentials
from src.errors import ConfigError
from src.measures import Coupling, DiscreteMeasure, grid_discretize, make_measure
from src.solvers import format_float

logger = logging.getLogger(__name__)


def read_json(path: str) -> Any:
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: invalid JSON ({e})") from e


def write_json(path: str, data: Any) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, sort_keys=True, indent=2, allow_nan=True)
        fh.write("\n")
    return path


# --- Measures ----------------------------------------------------------------------
def density_from_dict(spec: Dict[str, Any]) -> Callable[[np.ndarray], float]:
    """{"kind": "constant", "value": v} or {"kind": "gaussian", "mean": [...], "cov": ...}."""
    kind = spec.get("kind", "constant")
    if kind == "constant":
        value = float(spec.get("value", 1.0))
        return lambda x: value
    if kind == "gaussian":
        if "mean" not in spec:
            raise ConfigError("gaussian density needs 'mean'")
        try:
            dist = stats.multivariate_normal(mean=spec["mean"], cov=spec.get("cov", 1.0))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid gaussian density: {e}") from e
        return lambda x: float(dist.pdf(x))
    raise ConfigError(f"unknown density kind {kind!r}")


def measure_from_dict(data: Dict[str, Any]) -> DiscreteMeasure:
    if not isinstance(data, dict):
        raise ConfigError("measure JSON must be an object")
    if "grid" in data:
        grid = data["grid"]
        missing = [k for k in ("lower", "upper", "cells_per_axis") if k not in grid]
        if missing:
            raise ConfigError(f"grid block needs {', '.join(repr(k) for k in missing)}")
        try:
            cells = int(grid["cells_per_axis"])
            box = (np.asarray(grid["lower"], dtype=float), np.asarray(grid["upper"], dtype=float))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid grid block: {e}") from e
        return grid_discretize(density_from_dict(grid.get("density", {})), box, cells)
    if "points" not in data or "weights" not in data:
        raise ConfigError("measure JSON needs 'points' and 'weights', or a 'grid' block")
    try:
        points = np.asarray(data["points"], dtype=float)
        weights = np.asarray(data["weights"], dtype=float)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"non-numeric points or weights: {e}") from e
    return make_measure(points, weights)


def _measure_from_csv(path: str) -> DiscreteMeasure:
    """Rows of coordinates followed by the weight; a header line is skipped."""
    rows: List[List[float]] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for record in csv.reader(fh):
            if not record:
                continue
            try:
                rows.append([float(v) for v in record])
            except ValueError:
                if rows:
                    raise ConfigError(f"{path}: non-numeric row {record!r}")
    if not rows:
        raise ConfigError(f"{path}: no data rows")
    arr = np.asarray(rows, dtype=float)
    return make_measure(arr[:, :-1], arr[:, -1])


def load_measure(path: str) -> DiscreteMeasure:
    if path.lower().endswith(".csv"):
        if not os.path.exists(path):
            raise FileNotFoundError(path)
        return _measure_from_csv(path)
    return measure_from_dict(read_json(path))


# --- Costs, moduli, potentials -----------------------------------------------------
def load_cost(path: str) -> CostSpec:
    data = read_json(path)
    if "kind" not in data:
        raise ConfigError(f"{path}: cost JSON needs a 'kind'")
    return CostSpec.from_dict(data)


def load_modulus(path: str) -> Modulus:
    return modulus_from_dict(read_json(path))


def load_potentials(path: str) -> DualPotentials:
    data = read_json(path)
    if "f" not in data or "g" not in data:
        raise ConfigError(f"{path}: potentials JSON needs 'f' and 'g'")
    return DualPotentials.from_dict(data)


def save_potentials(pot: DualPotentials, path: str) -> str:
    return write_json(path, pot.to_dict())


def save_coupling_csv(coupling: Coupling, path: str) -> str:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["i", "j", "mass"])
        for i, j, mass in zip(coupling.rows, coupling.cols, coupling.masses):
            writer.writerow([int(i), int(j), format_float(float(mass))])
    return path


def save_columns_csv(header: List[str], columns: List[List[Optional[float]]], path: str) -> str:
    """Write ragged columns side by side; missing cells are empty."""
    length = max((len(c) for c in columns), default=0)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for k in range(length):
            writer.writerow([format_float(c[k]) if k < len(c) else "" for c in columns])
    return path
