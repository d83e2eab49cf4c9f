"""Discrete Preisach model: hysterons and their normalized aggregate.

A hysteron has two thresholds ``low <= high``.  Its state becomes 1 when the
input drops to ``low`` or below, 0 when the input reaches ``high`` or above,
and is retained in between.  A :class:`PreisachSystem` stores ``n_h`` such
elements as parallel arrays and outputs the fraction of elements in state 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .io import write_csv

__all__ = [
    "Hysteron",
    "InitialStatePolicy",
    "PreisachSystem",
    "build_system",
    "hysteron_step",
    "system_output",
    "reset",
    "sweep_loop",
    "sweep_path",
    "write_trace_csv",
]


class InitialStatePolicy(enum.Enum):
    """State of hysterons whose hold band contains the initial input 0."""

    ALL_UP = "all_up"
    ALL_DOWN = "all_down"
    RANDOM_HALF = "random_half"

    @classmethod
    def parse(cls, value: "InitialStatePolicy | str") -> "InitialStatePolicy":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_")
        aliases = {"allup": "all_up", "alldown": "all_down", "randomhalf": "random_half"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ValueError(f"unknown initial state policy: {value!r}") from None


@dataclass
class Hysteron:
    low: float
    high: float
    state: int = 1

    def __post_init__(self):
        if self.low > self.high:
            self.low, self.high = self.high, self.low
        self.state = 1 if self.state else 0


def hysteron_step(h: Hysteron, x: float) -> int:
    """Apply input ``x`` to a single hysteron and return its new state.

    The ``x <= low`` branch is checked first, so a degenerate element with
    ``low == high`` acts as a plain threshold switch.
    """
    if x <= h.low:
        h.state = 1
    elif x >= h.high:
        h.state = 0
    return h.state


class PreisachSystem:
    """Aggregate of hysterons with thresholds drawn from ``[-r, r]``.

    Parameters
    ----------
    low, high : array_like
        Threshold arrays in construction order. Pairs are canonicalized so
        that ``low <= high`` element-wise.
    range_half_width : float
        The ``r`` of the threshold range; every threshold must lie in
        ``[-r, r]``.
    policy : InitialStatePolicy or str
        Initial state rule for hysterons straddling 0.
    seed : int, optional
        Seed for the ``RANDOM_HALF`` policy.  Re-applying the policy with the
        same seed reproduces the same states.
    """

    def __init__(self, low, high, range_half_width, policy=InitialStatePolicy.ALL_UP, seed=None):
        low = np.asarray(low, dtype=np.float64).ravel()
        high = np.asarray(high, dtype=np.float64).ravel()
        if low.shape != high.shape:
            raise ValueError("low and high must have the same length")
        if low.size == 0:
            raise ValueError("a Preisach system needs at least one hysteron")
        if not range_half_width > 0:
            raise ValueError(f"range_half_width must be positive, got {range_half_width}")
        lo = np.minimum(low, high)
        hi = np.maximum(low, high)
        r = float(range_half_width)
        if lo.min() < -r or hi.max() > r:
            raise ValueError("thresholds fall outside [-range_half_width, range_half_width]")
        self.low = lo
        self.high = hi
        self.range_half_width = r
        self.seed = seed
        self.state = np.ones(lo.size, dtype=bool)
        self.last_input = 0.0
        reset(self, policy)

    @property
    def n_h(self) -> int:
        return self.low.size

    def __len__(self):
        return self.low.size

    def __getitem__(self, i) -> Hysteron:
        # a detached copy; mutate the system through step()/reset()
        return Hysteron(float(self.low[i]), float(self.high[i]), int(self.state[i]))

    @property
    def hysterons(self) -> list[Hysteron]:
        return [self[i] for i in range(self.n_h)]

    def output(self) -> float:
        """Current aggregate output without applying a new input."""
        return np.count_nonzero(self.state) / self.state.size

    def step(self, x: float) -> float:
        return system_output(self, x)

    def copy(self) -> "PreisachSystem":
        new = object.__new__(PreisachSystem)
        new.low = self.low.copy()
        new.high = self.high.copy()
        new.range_half_width = self.range_half_width
        new.seed = self.seed
        new.state = self.state.copy()
        new.last_input = self.last_input
        return new

    def __repr__(self):
        return (f"PreisachSystem(n_h={self.n_h}, range_half_width={self.range_half_width}, "
                f"Y={self.output():.4f})")


def _step_states(state, low, high, x):
    # in-place; the "x <= low" branch wins when low == high
    state &= ~(x >= high)
    state |= x <= low


def build_system(range_half_width, n_h, rng, policy=InitialStatePolicy.ALL_UP, seed=None):
    """Draw ``n_h`` threshold pairs uniformly on ``[-r, r]`` and build a system.

    Each pair is two independent uniform draws sorted into ``(low, high)``.
    ``rng`` may be a ``numpy.random.Generator`` or anything accepted by
    ``numpy.random.default_rng``.
    """
    if not range_half_width > 0:
        raise ValueError(f"range_half_width must be positive, got {range_half_width}")
    n_h = int(n_h)
    if n_h < 1:
        raise ValueError(f"n_h must be at least 1, got {n_h}")
    rng = np.random.default_rng(rng)
    r = float(range_half_width)
    pairs = rng.uniform(-r, r, size=(n_h, 2))
    return PreisachSystem(pairs[:, 0], pairs[:, 1], r, policy=policy, seed=seed)


def system_output(sys: PreisachSystem, x: float) -> float:
    """Step every hysteron with ``x`` and return the mean state."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"non-finite input {x!r}")
    _step_states(sys.state, sys.low, sys.high, x)
    sys.last_input = x
    return sys.output()


def reset(sys: PreisachSystem, policy=InitialStatePolicy.ALL_UP, seed=None) -> None:
    """Initialize states as if the input had been held at 0.

    Hysterons with ``low >= 0`` get state 1 and those with ``high <= 0`` get
    state 0.  The remaining ones (``low < 0 < high``) follow ``policy``.
    ``RANDOM_HALF`` draws fair coins from ``seed`` (falls back to the seed
    the system was built with, then to 0).
    """
    policy = InitialStatePolicy.parse(policy)
    straddle = (sys.low < 0) & (sys.high > 0)
    if policy is InitialStatePolicy.ALL_UP:
        fill = np.ones(sys.n_h, dtype=bool)
    elif policy is InitialStatePolicy.ALL_DOWN:
        fill = np.zeros(sys.n_h, dtype=bool)
    else:
        if seed is None:
            seed = sys.seed if sys.seed is not None else 0
        fill = np.random.default_rng(seed).random(sys.n_h) < 0.5
    state = np.where(straddle, fill, sys.low >= 0)
    sys.state[:] = state
    sys.last_input = 0.0


def sweep_path(x_min, x_max, increment, cycles=1):
    """Input path 0 -> x_max -> x_min -> x_max, the closed part repeated.

    Grid points are generated as integer multiples of ``increment`` so that
    ``0.1`` steps land exactly on ``-1.0``, ``0.0`` and ``1.0``.
    """
    if not increment > 0:
        raise ValueError(f"increment must be positive, got {increment}")
    if not x_min < x_max:
        raise ValueError("x_min must be smaller than x_max")
    if not (x_min <= 0 <= x_max):
        raise ValueError("the sweep starts at 0, which must lie in [x_min, x_max]")
    k_hi = round(x_max / increment)
    k_lo = round(x_min / increment)
    tol = 1e-9 * max(1.0, abs(x_max), abs(x_min))
    if abs(k_hi * increment - x_max) > tol or abs(k_lo * increment - x_min) > tol:
        raise ValueError("increment must divide the sweep range")
    up0 = np.arange(0, k_hi + 1)
    down = np.arange(k_hi - 1, k_lo - 1, -1)
    up = np.arange(k_lo + 1, k_hi + 1)
    ks = [up0] + [np.concatenate([down, up])] * int(cycles)
    return np.concatenate(ks) * increment


def sweep_loop(sys: PreisachSystem, x_min, x_max, increment, cycles=1):
    """Trace a quasi-static hysteresis loop.

    Returns an ``(n, 2)`` array of ``(x, Y)`` pairs, one per applied input.
    """
    xs = sweep_path(x_min, x_max, increment, cycles)
    ys = np.array([system_output(sys, x) for x in xs])
    return np.column_stack([xs, ys])


def write_trace_csv(trace, path) -> None:
    rows = [(i, x, y) for i, (x, y) in enumerate(np.asarray(trace))]
    write_csv(path, ["step", "x", "Y"], rows)
