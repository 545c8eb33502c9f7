from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.sparse as sp


@dataclass(frozen=True, eq=False)
class Coupling:
    """Sparse transport plan: parallel arrays of row index, column index and positive mass."""

    rows: np.ndarray
    cols: np.ndarray
    masses: np.ndarray
    n: int
    m: int

    @classmethod
    def from_dense(cls, plan: np.ndarray, threshold: float = 0.0) -> "Coupling":
        plan = np.asarray(plan, dtype=float)
        rows, cols = np.nonzero(plan > threshold)
        return cls(rows=rows, cols=cols, masses=plan[rows, cols], n=plan.shape[0], m=plan.shape[1])

    @classmethod
    def empty(cls, n: int, m: int) -> "Coupling":
        idx = np.zeros(0, dtype=int)
        return cls(rows=idx, cols=idx, masses=np.zeros(0), n=n, m=m)

    @property
    def support_size(self) -> int:
        return int(self.masses.shape[0])

    def row_sums(self) -> np.ndarray:
        return np.bincount(self.rows, weights=self.masses, minlength=self.n)

    def col_sums(self) -> np.ndarray:
        return np.bincount(self.cols, weights=self.masses, minlength=self.m)

    def to_dense(self) -> np.ndarray:
        plan = np.zeros((self.n, self.m))
        plan[self.rows, self.cols] = self.masses
        return plan

    def to_sparse(self) -> sp.coo_matrix:
        return sp.coo_matrix((self.masses, (self.rows, self.cols)), shape=(self.n, self.m))

    def marginal_residual(self, p: np.ndarray, q: np.ndarray) -> Tuple[float, float]:
        """(max_i |row_i - p_i|, max_j |col_j - q_j|)."""
        return (
            float(np.max(np.abs(self.row_sums() - p))),
            float(np.max(np.abs(self.col_sums() - q))),
        )
