"""Experiment definitions for each figure of the hysteretic-reservoir study."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .harness import ReservoirConfig, TrialConfig, run_experiment, run_trial
from .output import emit_outputs
from .preisach import InitialStatePolicy, build_system, sweep_loop
from .tasks import NarmaNParams, SecondOrderNarmaParams

PRESET_NAMES = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6")

PAPER_N_H = 100_000
D_SWEEP = (0.5, 1.0, 2.0, 5.0, 10.0, 20.0)
NARMA2ND_CASES = (
    (0.4, 0.4, 0.6, 0.1),
    (0.4, 0.4, 0.2, 0.1),
    (0.4, 0.2, 0.6, 0.1),
    (0.2, 0.4, 0.6, 0.1),
)
NARMA_ORDERS = (2, 3, 10)


@dataclass(frozen=True)
class SweepSpec:
    range_half_width: float
    n_h: int = PAPER_N_H
    increment: float = 0.1
    seed: int = 0

    @property
    def label(self) -> str:
        return f"r{self.range_half_width:g}"


@dataclass
class Preset:
    """What to run for one figure.

    ``kind`` is ``"sweep"`` (hysteresis loops), ``"trials"`` (single traced
    trials, one per condition) or ``"experiment"`` (repeated trials with a
    summary table).
    """

    name: str
    kind: str
    conditions: list[TrialConfig] = field(default_factory=list)
    sweeps: list[SweepSpec] = field(default_factory=list)
    n_trials: int = 10

    def with_n_h(self, n_h: Optional[int]) -> "Preset":
        if n_h is None:
            return self
        conds = [replace(c, reservoir=replace(c.reservoir, n_h=int(n_h))) for c in self.conditions]
        sweeps = [replace(s, n_h=int(n_h)) for s in self.sweeps]
        return replace(self, conditions=conds, sweeps=sweeps)


def narma_n_conditions(reservoir: ReservoirConfig):
    conds = []
    for modified in (False, True):
        for n in NARMA_ORDERS:
            # modified NARMA-10 diverges at gamma=1.5
            gamma = 1.0 if (modified and n == 10) else 1.5
            task = NarmaNParams(n=n, gamma=gamma, modified=modified)
            kind = "modified" if modified else "standard"
            conds.append(TrialConfig(task=task, reservoir=reservoir, label=f"NARMA-{n} {kind}"))
    return conds


def preset(name: str) -> Preset:
    res = ReservoirConfig(d=5.0, n_h=PAPER_N_H)
    if name == "fig1":
        return Preset(name, "sweep", sweeps=[SweepSpec(1.0), SweepSpec(2.0)])
    if name == "fig2":
        return Preset(name, "trials", [TrialConfig(reservoir=res, label="second-order NARMA d=5")], n_trials=1)
    if name == "fig3":
        conds = [TrialConfig(reservoir=replace(res, d=d), label=f"d={d:g}") for d in D_SWEEP]
        return Preset(name, "experiment", conds)
    if name == "fig4":
        conds = [
            TrialConfig(task=SecondOrderNarmaParams(*p), reservoir=res, label=f"Case {i}")
            for i, p in enumerate(NARMA2ND_CASES, start=1)
        ]
        return Preset(name, "experiment", conds)
    if name == "fig5":
        return Preset(name, "trials", narma_n_conditions(res), n_trials=1)
    if name == "fig6":
        return Preset(name, "experiment", narma_n_conditions(res))
    raise ValueError(f"unknown preset {name!r}; expected one of {', '.join(PRESET_NAMES)}")


def run_sweep(spec: SweepSpec, policy=None):
    """Trace one closed hysteresis loop over ``[-r, r]``."""
    rng = np.random.default_rng(np.random.SeedSequence([int(spec.seed), 0]))
    system = build_system(spec.range_half_width, spec.n_h, rng, policy=policy or InitialStatePolicy.ALL_UP)
    r = spec.range_half_width
    return sweep_loop(system, -r, r, spec.increment)


def run_preset(name: str, n_trials: Optional[int] = None, seed: int = 0, n_h: Optional[int] = None,
               out_dir=None, workers: int = 1):
    """Run a figure preset, optionally writing its tables and plots to ``out_dir``.

    Returns the sweep traces (``fig1``), the list of traced trial results
    (``fig2``, ``fig5``) or the experiment summary.
    """
    p = preset(name).with_n_h(n_h)
    if p.kind == "sweep":
        result = {s.label: run_sweep(replace(s, seed=seed)) for s in p.sweeps}
        if out_dir is not None:
            emit_outputs(result, out_dir)
        return result
    if p.kind == "trials":
        results = [run_trial(replace(c, seed=seed), keep_traces=True) for c in p.conditions]
        if out_dir is not None:
            for i, r in enumerate(results):
                stem = "trial" if len(results) == 1 else f"trial_{i:02d}"
                emit_outputs(r, out_dir, stem=stem)
        return results
    summary = run_experiment(p.conditions, n_trials or p.n_trials, base_seed=seed, workers=workers)
    if out_dir is not None:
        emit_outputs(summary, out_dir)
    return summary
