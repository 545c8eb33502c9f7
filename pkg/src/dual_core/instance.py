from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.costs import CostSpec, build_cost_matrix
from src.errors import DimensionMismatch, InputError
from src.measures import DiscreteMeasure, GeometryConstants


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """Marginals, materialized cost and regularization: everything a solve depends on."""

    P: DiscreteMeasure
    Q: DiscreteMeasure
    cost: np.ndarray
    eps: float
    geometry: Optional[GeometryConstants] = None

    def __post_init__(self):
        cost = np.asarray(self.cost, dtype=float)
        if cost.shape != (self.P.size, self.Q.size):
            raise DimensionMismatch(f"cost has shape {cost.shape}, expected ({self.P.size}, {self.Q.size})")
        if not self.eps > 0:
            raise InputError(f"eps must be positive, got {self.eps!r}")
        object.__setattr__(self, "cost", cost)
        object.__setattr__(self, "eps", float(self.eps))

    @classmethod
    def build(
        cls,
        P: DiscreteMeasure,
        Q: DiscreteMeasure,
        spec: CostSpec,
        eps: float,
        geometry: Optional[GeometryConstants] = None,
    ) -> "ProblemInstance":
        return cls(P=P, Q=Q, cost=build_cost_matrix(spec, P, Q), eps=eps, geometry=geometry)

    @property
    def p(self) -> np.ndarray:
        return self.P.weights

    @property
    def q(self) -> np.ndarray:
        return self.Q.weights

    @property
    def n(self) -> int:
        return self.P.size

    @property
    def m(self) -> int:
        return self.Q.size


@dataclass(frozen=True, eq=False)
class DualPotentials:
    """Potentials (f, g) over supp P and supp Q, identified up to (f + a, g - a)."""

    f: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        f = np.array(self.f, dtype=float).reshape(-1)
        g = np.array(self.g, dtype=float).reshape(-1)
        if not (np.all(np.isfinite(f)) and np.all(np.isfinite(g))):
            raise InputError("potentials must be finite")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)

    @classmethod
    def zeros(cls, n: int, m: int) -> "DualPotentials":
        return cls(np.zeros(n), np.zeros(m))

    @classmethod
    def from_dict(cls, data: dict) -> "DualPotentials":
        return cls(data["f"], data["g"])

    def to_dict(self) -> dict:
        return {"f": self.f.tolist(), "g": self.g.tolist()}

    def shifted(self, a: float) -> "DualPotentials":
        return DualPotentials(self.f + a, self.g - a)

    def check_dims(self, inst: ProblemInstance) -> None:
        if self.f.shape[0] != inst.n or self.g.shape[0] != inst.m:
            raise DimensionMismatch(
                f"potentials have lengths ({self.f.shape[0]}, {self.g.shape[0]}), "
                f"instance has ({inst.n}, {inst.m})"
            )
