"""Least-squares readout and the linear-regression baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .io import write_csv

RANK_RTOL = 1e-10


class DegenerateDesignError(DomainError):
    pass


@dataclass
class ReadoutWeights:
    w: np.ndarray
    include_bias: bool = False
    bias: float = 0.0

    def __len__(self):
        return len(self.w)


@dataclass
class LinearBaseline:
    w0: float
    w1: float

    def predict(self, u) -> np.ndarray:
        return self.w0 + self.w1 * np.asarray(u, dtype=np.float64)


def _as_matrix(phi):
    phi = np.asarray(phi, dtype=np.float64)
    if phi.ndim == 1:
        phi = phi[:, None]
    if phi.ndim != 2:
        raise ValueError(f"design matrix must be 2-D, got shape {phi.shape}")
    return phi


def solve_least_squares(phi, y, include_bias=False) -> ReadoutWeights:
    """Minimize ``||phi @ w - y||^2``.

    Uses an SVD solve, which equals ``(phi^T phi)^{-1} phi^T y`` on full-rank
    designs.  Singular values below ``1e-10`` times the largest are
    discarded, giving the minimum-norm solution on rank-deficient designs.
    With ``include_bias`` a constant column is appended and its weight is
    returned as ``bias``.
    """
    phi = _as_matrix(phi)
    y = np.asarray(y, dtype=np.float64).ravel()
    if phi.shape[0] != y.size:
        raise ValueError(f"design has {phi.shape[0]} rows but target has {y.size} values")
    if not (np.all(np.isfinite(phi)) and np.all(np.isfinite(y))):
        raise DomainError("design matrix and target must be finite")
    if include_bias:
        phi = np.column_stack([phi, np.ones(phi.shape[0])])
    w, *_ = np.linalg.lstsq(phi, y, rcond=RANK_RTOL)
    if include_bias:
        return ReadoutWeights(w[:-1], include_bias=True, bias=float(w[-1]))
    return ReadoutWeights(w)


def predict(phi, weights: ReadoutWeights) -> np.ndarray:
    phi = _as_matrix(phi)
    if phi.shape[1] != len(weights.w):
        raise ValueError(f"design has {phi.shape[1]} columns but there are {len(weights.w)} weights")
    out = phi @ weights.w
    if weights.include_bias:
        out = out + weights.bias
    return out


def fit_linear_baseline(u, y) -> LinearBaseline:
    """Ordinary least squares of ``y`` on ``(1, u)`` in closed form."""
    u = np.asarray(u, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if u.size != y.size:
        raise ValueError("u and y must have equal lengths")
    if u.size < 2 or np.ptp(u) == 0:
        raise DegenerateDesignError("baseline needs at least two distinct input values")
    du = u - u.mean()
    w1 = float(du @ (y - y.mean()) / (du @ du))
    w0 = float(y.mean() - w1 * u.mean())
    return LinearBaseline(w0, w1)


def write_weights_csv(weights: ReadoutWeights, path) -> None:
    rows = [(j, w) for j, w in enumerate(weights.w, start=1)]
    if weights.include_bias:
        rows.append(("bias", weights.bias))
    write_csv(path, ["j", "w"], rows)
