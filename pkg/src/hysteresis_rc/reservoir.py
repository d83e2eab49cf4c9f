"""Bank of independent Preisach systems with graded threshold ranges."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .io import write_csv
from .preisach import InitialStatePolicy, PreisachSystem, build_system, reset

INPUT_RANGE = (-5.0, 5.0)


def system_seed(base_seed: int, j: int) -> np.random.SeedSequence:
    """Seed sequence of the ``j``-th system (1-based).

    Depends only on ``(base_seed, j)``, so adding systems to a bank never
    changes the thresholds of the existing ones.
    """
    return np.random.SeedSequence([int(base_seed), int(j)])


class HysteresisReservoir:
    """``m`` Preisach systems, the ``j``-th drawing thresholds from ``[-d j/2, d j/2]``."""

    def __init__(self, systems, d, n_h, base_seed, policy=InitialStatePolicy.ALL_UP):
        if len(systems) == 0:
            raise ValueError("a reservoir needs at least one system")
        self.systems = list(systems)
        self.d = d
        self.n_h = n_h
        self.base_seed = base_seed
        self.policy = InitialStatePolicy.parse(policy)

    @property
    def m(self) -> int:
        return len(self.systems)

    @property
    def half_widths(self) -> np.ndarray:
        return np.array([s.range_half_width for s in self.systems])

    def reset(self) -> None:
        for s in self.systems:
            reset(s, self.policy)

    def outputs(self) -> np.ndarray:
        return np.array([s.output() for s in self.systems])

    def __repr__(self):
        return f"HysteresisReservoir(d={self.d}, m={self.m}, n_h={self.n_h}, base_seed={self.base_seed})"


def build_reservoir(d, m=10, n_h=10_000, policy=InitialStatePolicy.ALL_UP, base_seed=0):
    if not d > 0:
        raise ValueError(f"width parameter d must be positive, got {d}")
    if int(m) < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    if int(n_h) < 1:
        raise ValueError(f"n_h must be at least 1, got {n_h}")
    systems = []
    for j in range(1, int(m) + 1):
        ss = system_seed(base_seed, j)
        # second child stream seeds the RANDOM_HALF policy
        draw_ss, policy_ss = ss.spawn(2)
        systems.append(
            build_system(0.5 * d * j, n_h, np.random.default_rng(draw_ss), policy=policy,
                         seed=policy_ss)
        )
    return HysteresisReservoir(systems, d=d, n_h=int(n_h), base_seed=base_seed, policy=policy)


def scale_input(u_prime):
    """Map task inputs on ``[0, 0.5]`` to reservoir inputs ``-5 + 20 u'``."""
    arr = np.asarray(u_prime, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > 0.5):
        raise DomainError("u_prime must lie in [0, 0.5]")
    out = -5.0 + 20.0 * arr
    return float(out) if out.ndim == 0 else out


def drive(res: HysteresisReservoir, u) -> np.ndarray:
    """Feed ``u(1..L)`` to every system; return the ``L x m`` design matrix.

    Row ``t`` holds the outputs after input ``u(t)``.  The reservoir state is
    mutated, so successive calls continue from where the last one stopped.
    """
    u = np.asarray(u, dtype=np.float64).ravel()
    bad = np.flatnonzero(~np.isfinite(u))
    if bad.size:
        raise DomainError(f"non-finite input at index {bad[0]} (t={bad[0] + 1})")
    systems = res.systems
    sizes = [s.n_h for s in systems]
    # Stack all hysterons once; systems stay independent because each
    # column is a separate slice of the stacked state.
    low = np.concatenate([s.low for s in systems])
    high = np.concatenate([s.high for s in systems])
    state = np.concatenate([s.state for s in systems])
    bounds = np.cumsum([0] + sizes)
    counts_at = bounds[:-1]
    n = np.asarray(sizes, dtype=np.float64)

    phi = np.empty((u.size, len(systems)))
    for t, x in enumerate(u):
        state &= high > x
        state |= low >= x
        phi[t] = np.add.reduceat(state, counts_at, dtype=np.int64) / n
    for s, a, b in zip(systems, bounds[:-1], bounds[1:]):
        s.state[:] = state[a:b]
        if u.size:
            s.last_input = float(u[-1])
    return phi


def write_design_matrix_csv(phi, path) -> None:
    phi = np.asarray(phi)
    header = ["t"] + [f"Y{j}" for j in range(1, phi.shape[1] + 1)]
    write_csv(path, header, ([t, *row] for t, row in enumerate(phi, start=1)))
