import numpy as np

from src.errors import InputError, LengthMismatch, ZeroWeights


def solve_1d_foc_rows(breakpoints: np.ndarray, weights: np.ndarray, eps: float) -> np.ndarray:
    """Row-wise root t_k of sum_j w_j (t - B_kj)_+ = eps.

    Sorting each row and accumulating active weight W and active sum S, the root lies on the
    first piece [b_k, b_k+1) where W_k * b_k+1 - S_k reaches eps, at t = (eps + S_k) / W_k.
    """
    B = np.atleast_2d(np.asarray(breakpoints, dtype=float))
    w = np.asarray(weights, dtype=float).reshape(-1)
    if B.shape[1] != w.shape[0]:
        raise LengthMismatch(f"{B.shape[1]} breakpoints per row but {w.shape[0]} weights")
    if not eps > 0:
        raise InputError(f"eps must be positive, got {eps!r}")
    if np.any(w < 0) or not w.sum() > 0:
        raise ZeroWeights("weights must be nonnegative with positive total")

    order = np.argsort(B, axis=1, kind="stable")
    b = np.take_along_axis(B, order, axis=1)
    ws = w[order]
    W = np.cumsum(ws, axis=1)
    S = np.cumsum(ws * b, axis=1)

    # value of the map at the next breakpoint; the last piece is unbounded
    reach = W[:, :-1] * b[:, 1:] - S[:, :-1]
    hit = np.concatenate([reach >= eps, np.ones((B.shape[0], 1), dtype=bool)], axis=1)
    k = np.argmax(hit, axis=1)
    rows = np.arange(B.shape[0])
    return (eps + S[rows, k]) / W[rows, k]


def solve_1d_foc(breakpoints, weights, eps: float) -> float:
    """Exact root of t -> sum_j w_j (t - b_j)_+ - eps."""
    return float(solve_1d_foc_rows(np.asarray(breakpoints, dtype=float).reshape(1, -1), weights, eps)[0])
