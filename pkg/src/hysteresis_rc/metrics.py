"""Imitation accuracy metrics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class EvalWindow:
    """Inclusive 1-based time window ``[t_start, t_end]``."""

    t_start: int
    t_end: int

    def __post_init__(self):
        if not 1 <= self.t_start <= self.t_end:
            raise ValueError(f"invalid window [{self.t_start}, {self.t_end}]")

    def slice(self) -> slice:
        return slice(self.t_start - 1, self.t_end)

    def __len__(self):
        return self.t_end - self.t_start + 1


def nmse(y, y_hat, window: EvalWindow | None = None) -> float:
    """Mean squared error over the window divided by the window variance of ``y``.

    Population variance (divisor = window length).  Equals 1 for the
    predictor that outputs the window mean.
    """
    y = np.asarray(y, dtype=np.float64).ravel()
    y_hat = np.asarray(y_hat, dtype=np.float64).ravel()
    if y.size != y_hat.size:
        raise ValueError("y and y_hat must have equal lengths")
    if window is None:
        window = EvalWindow(1, y.size)
    if window.t_end > y.size:
        raise ValueError(f"window ends at {window.t_end} but sequences have length {y.size}")
    yw = y[window.slice()]
    err = yw - y_hat[window.slice()]
    dev = yw - yw.mean()
    var = np.mean(dev * dev)
    if var == 0:
        raise DomainError("target is constant over the evaluation window")
    return float(np.mean(err * err) / var)


def success_rate(trials) -> float:
    """Fraction of ``(nmse_model, nmse_lr)`` pairs where the model is strictly better."""
    trials = list(trials)
    if not trials:
        raise ValueError("success_rate needs at least one trial")
    wins = sum(1 for model, lr in trials if model < lr)
    return wins / len(trials)
