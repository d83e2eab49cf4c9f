"""Benchmark target systems: second-order NARMA, NARMA-N and modified NARMA-N."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .io import write_csv

DIVERGENCE_BOUND = 1e6
INPUT_LEVELS = np.arange(11) / 20.0


@dataclass(frozen=True)
class SecondOrderNarmaParams:
    a: float = 0.4
    b: float = 0.4
    c: float = 0.6
    d_coef: float = 0.1

    # number of steps between the newest input in the recurrence and t
    input_lag = 0

    @property
    def label(self) -> str:
        return f"narma2nd(a={self.a:g},b={self.b:g},c={self.c:g},d={self.d_coef:g})"


@dataclass(frozen=True)
class NarmaNParams:
    n: int = 10
    alpha: float = 0.3
    beta: float = 0.05
    gamma: float = 1.5
    delta: float = 0.1
    modified: bool = False

    def __post_init__(self):
        if int(self.n) < 1:
            raise ValueError(f"NARMA order must be >= 1, got {self.n}")

    input_lag = 1

    @property
    def label(self) -> str:
        kind = "narmaNmod" if self.modified else "narmaN"
        return f"{kind}(N={self.n},gamma={self.gamma:g})"


TaskSpec = Union[SecondOrderNarmaParams, NarmaNParams]


@dataclass
class TargetSequence:
    """Target output ``y(1..L)``.

    On divergence ``values`` is truncated right after the first step with
    ``|y| > DIVERGENCE_BOUND`` and ``diverged_at`` holds that 1-based time.
    """

    values: np.ndarray
    diverged_at: Optional[int] = None

    @property
    def diverged(self) -> bool:
        return self.diverged_at is not None

    def __len__(self):
        return len(self.values)


def gen_input(length: int, rng) -> np.ndarray:
    """``length`` i.i.d. draws from the 11 levels ``0, 0.05, ..., 0.5``."""
    length = int(length)
    if length < 1:
        raise ValueError(f"length must be positive, got {length}")
    rng = np.random.default_rng(rng)
    return rng.integers(0, 11, size=length) / 20.0


def second_order_narma(u, p: SecondOrderNarmaParams = SecondOrderNarmaParams()) -> TargetSequence:
    u = np.asarray(u, dtype=np.float64)
    y = np.zeros(u.size)
    y1 = y2 = 0.0  # y(t-1), y(t-2)
    for t in range(u.size):
        yt = p.a * y1 + p.b * y1 * y2 + p.c * u[t] ** 3 + p.d_coef
        y[t] = yt
        if not abs(yt) <= DIVERGENCE_BOUND:
            return TargetSequence(y[: t + 1], diverged_at=t + 1)
        y2, y1 = y1, yt
    return TargetSequence(y)


def narma_n_step(y_past, u_past, p: NarmaNParams) -> float:
    """Right-hand side of the NARMA-N recurrence for one time step ``t``.

    ``y_past`` holds ``y(t-N), ..., y(t-1)`` and ``u_past`` holds
    ``u'(t-N), ..., u'(t-1)`` (oldest first, length ``N`` each).
    """
    n = int(p.n)
    y_prev = y_past[-1]
    u_prev = u_past[-1]
    drive = u_prev * u_prev if p.modified else u_past[-n] * u_prev
    return p.alpha * y_prev + p.beta * y_prev * float(np.sum(y_past[-n:])) + p.gamma * drive + p.delta


def narma_n(u, p: NarmaNParams) -> TargetSequence:
    """NARMA-N recurrence with zero history for both ``y`` and ``u'``.

    Standard input term is ``gamma * u'(t-N) * u'(t-1)``; the modified
    variant uses ``gamma * u'(t-1)**2`` instead.
    """
    u = np.asarray(u, dtype=np.float64)
    n = int(p.n)
    L = u.size
    # slot k holds time k - n + 1; the first n slots are the zero history
    up = np.concatenate([np.zeros(n), u])
    yp = np.zeros(L + n)
    for k in range(n, L + n):
        yt = narma_n_step(yp[k - n:k], up[k - n:k], p)
        yp[k] = yt
        if not abs(yt) <= DIVERGENCE_BOUND:
            return TargetSequence(yp[n:k + 1].copy(), diverged_at=k - n + 1)
    return TargetSequence(yp[n:].copy())


def target(u, task: TaskSpec) -> TargetSequence:
    if isinstance(task, SecondOrderNarmaParams):
        return second_order_narma(u, task)
    if isinstance(task, NarmaNParams):
        return narma_n(u, task)
    raise TypeError(f"unknown task spec {task!r}")


def write_target_csv(u_prime, y: TargetSequence, path) -> None:
    rows = ((t, u_prime[t - 1], v) for t, v in enumerate(y.values, start=1))
    write_csv(path, ["t", "u_prime", "y"], rows)
