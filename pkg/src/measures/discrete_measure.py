import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.spatial.distance import cdist, pdist

from src.errors import (
    AllZeroDensity,
    EmptySupport,
    InvalidGrid,
    LengthMismatch,
    NegativeWeight,
    NonpositiveRadius,
    WeightsNotNormalized,
    ZeroTotalMass,
)

logger = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-9

BoxBound = Union[float, Sequence[float]]


@dataclass(frozen=True, eq=False)
class GridInfo:
    """Provenance of a measure produced by `grid_discretize`."""

    lower: np.ndarray
    upper: np.ndarray
    cells_per_axis: int

    @property
    def cell_volume(self) -> float:
        widths = (self.upper - self.lower) / self.cells_per_axis
        return float(np.prod(widths))


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Weighted point cloud; `points` has shape (n, d) and `weights` shape (n,)."""

    points: np.ndarray
    weights: np.ndarray
    grid: Optional[GridInfo] = None

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    @property
    def size(self) -> int:
        return int(self.weights.shape[0])

    def cell_densities(self) -> Optional[np.ndarray]:
        """Density of the discretized measure on each grid cell (mass / cell volume)."""
        if self.grid is None:
            return None
        return self.weights / self.grid.cell_volume

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "points": self.points.tolist(),
            "weights": self.weights.tolist(),
        }


def _as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 0:
        pts = pts.reshape(1, 1)
    elif pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    return pts


def make_measure(points, weights, *, grid: Optional[GridInfo] = None) -> DiscreteMeasure:
    """Validate and build a discrete measure.

    Duplicate points are merged (weights summed) keeping first-occurrence order, and the
    weights are renormalized to sum exactly to one.
    """
    pts = _as_points(points)
    w = np.asarray(weights, dtype=float).reshape(-1)
    if pts.shape[0] != w.shape[0]:
        raise LengthMismatch(f"{pts.shape[0]} points but {w.shape[0]} weights")
    if w.shape[0] == 0:
        raise EmptySupport("a measure needs at least one atom")
    if np.any(w < 0):
        raise NegativeWeight(f"negative weight {w.min()!r}")
    total = w.sum()
    if total <= 0:
        raise ZeroTotalMass("weights sum to zero")
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise WeightsNotNormalized(f"weights sum to {total!r}, expected 1 within {NORMALIZATION_TOL}")

    uniq, first_idx, inverse = np.unique(pts, axis=0, return_index=True, return_inverse=True)
    if uniq.shape[0] < pts.shape[0]:
        logger.debug("Merging %d duplicate atoms", pts.shape[0] - uniq.shape[0])
    merged = np.bincount(np.reshape(inverse, -1), weights=w, minlength=uniq.shape[0])
    order = np.argsort(first_idx, kind="stable")
    pts = uniq[order]
    w = merged[order]
    w = w / w.sum()

    pts.setflags(write=False)
    w.setflags(write=False)
    return DiscreteMeasure(points=pts, weights=w, grid=grid)


def grid_discretize(
    density: Callable[[np.ndarray], float],
    box: Tuple[BoxBound, BoxBound],
    cells_per_axis: int,
) -> DiscreteMeasure:
    """Discretize a density on an axis-aligned box into atoms at the cell centers.

    `density` receives a point as an array of shape (d,). Cells where the density vanishes
    carry no mass and are dropped from the support.
    """
    if cells_per_axis < 1:
        raise InvalidGrid(f"cells_per_axis must be >= 1, got {cells_per_axis!r}")
    lower = np.atleast_1d(np.asarray(box[0], dtype=float))
    upper = np.atleast_1d(np.asarray(box[1], dtype=float))
    if lower.shape != upper.shape or np.any(upper <= lower):
        raise InvalidGrid(f"invalid box {box!r}")

    axes = []
    for lo, hi in zip(lower, upper):
        edges = np.linspace(lo, hi, cells_per_axis + 1)
        axes.append(0.5 * (edges[:-1] + edges[1:]))
    mesh = np.meshgrid(*axes, indexing="ij")
    centers = np.stack([m.reshape(-1) for m in mesh], axis=1)

    values = np.array([float(density(c)) for c in centers])
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise NegativeWeight("density must be finite and nonnegative at every cell center")
    if values.sum() <= 0:
        raise AllZeroDensity("density vanishes at every cell center")

    keep = values > 0
    info = GridInfo(lower=lower, upper=upper, cells_per_axis=int(cells_per_axis))
    mass = values[keep] * info.cell_volume
    return make_measure(centers[keep], mass / mass.sum(), grid=info)


def ball_measure_inf(mu: DiscreteMeasure, r: float) -> float:
    """min over support points y of mu(B_r(y)), with B_r the open ball."""
    if not r > 0:
        raise NonpositiveRadius(f"radius must be positive, got {r!r}")
    dist = cdist(mu.points, mu.points)
    masses = (dist < r) @ mu.weights
    return float(min(masses.min(), 1.0))


def diameter(mu: DiscreteMeasure) -> float:
    if mu.size < 2:
        return 0.0
    return float(pdist(mu.points).max())


def empirical_cone_constant(mu: DiscreteMeasure) -> float:
    """Largest delta <= 1 with mu(B_r(x)) >= delta * min(r^d, 1) for every atom x and r > 0.

    The ratio only decreases towards a jump of r -> mu(B_r(x)), so it suffices to evaluate it at
    the distinct distances from x, where the open ball still excludes the atoms on its boundary.
    """
    d = mu.dim
    dist = cdist(mu.points, mu.points)
    delta = 1.0
    for row in dist:
        order = np.argsort(row, kind="stable")
        radii = row[order]
        prefix = np.concatenate(([0.0], np.cumsum(mu.weights[order])))
        cand = np.unique(radii[radii > 0])
        if cand.size == 0:
            continue
        inside = prefix[np.searchsorted(radii, cand, side="left")]
        ratios = inside / np.minimum(cand ** d, 1.0)
        delta = min(delta, float(ratios.min()))
    return delta
