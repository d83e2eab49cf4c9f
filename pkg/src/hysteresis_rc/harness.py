"""Seeded trial and experiment runner.

A trial generates a random input sequence, computes the target, drives a
freshly built reservoir through the whole sequence in one continuous run,
trains the readout and the linear baseline on ``t = 1..train_end`` and
scores both on ``t = train_end+1..eval_end``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import metrics, readout
from .preisach import InitialStatePolicy
from .reservoir import build_reservoir, drive, scale_input
from .tasks import NarmaNParams, SecondOrderNarmaParams, TaskSpec, gen_input, target

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReservoirConfig:
    d: float = 5.0
    m: int = 10
    n_h: int = 10_000
    policy: InitialStatePolicy = InitialStatePolicy.ALL_UP

    def __post_init__(self):
        if not self.d > 0:
            raise ValueError(f"d must be positive, got {self.d}")
        if self.m < 1 or self.n_h < 1:
            raise ValueError("m and n_h must be positive")
        object.__setattr__(self, "policy", InitialStatePolicy.parse(self.policy))


@dataclass(frozen=True)
class TrialConfig:
    """Everything that determines one trial.

    ``align_input`` pairs target ``y(t)`` with the reservoir state after the
    newest input the target recurrence uses, i.e. the input sequence fed to
    the reservoir and to the baseline is delayed by ``task.input_lag`` steps
    (zero-padded).  With ``align_input=False`` row ``t`` always follows
    ``u(t)``.
    """

    task: TaskSpec = field(default_factory=SecondOrderNarmaParams)
    reservoir: ReservoirConfig = field(default_factory=ReservoirConfig)
    train_end: int = 1000
    eval_end: int = 2000
    seed: int = 0
    include_bias: bool = False
    align_input: bool = True
    label: Optional[str] = None

    def __post_init__(self):
        if not 1 <= self.train_end < self.eval_end:
            raise ValueError(f"need 1 <= train_end < eval_end, got {self.train_end}, {self.eval_end}")

    @property
    def name(self) -> str:
        return self.label or f"{self.task.label},d={self.reservoir.d:g}"


@dataclass
class Traces:
    u_prime: np.ndarray
    u: np.ndarray  # reservoir input actually applied at each step
    y: np.ndarray
    yhat_model: np.ndarray
    yhat_lr: np.ndarray
    train_end: int


@dataclass
class TrialResult:
    config: TrialConfig
    nmse_model: float
    nmse_lr: float
    diverged: bool = False
    diverged_at: Optional[int] = None
    weights: Optional[readout.ReadoutWeights] = None
    baseline: Optional[readout.LinearBaseline] = None
    traces: Optional[Traces] = None

    @property
    def success(self) -> bool:
        return not self.diverged and self.nmse_model < self.nmse_lr


def _streams(seed):
    ss = np.random.SeedSequence(int(seed))
    input_ss, reservoir_ss = ss.spawn(2)
    base_seed = int(reservoir_ss.generate_state(1)[0])
    return np.random.default_rng(input_ss), base_seed


def run_trial(config: TrialConfig, keep_traces: bool = False, return_design: bool = False):
    """Run one trial.

    With ``return_design`` the design matrix is returned as well, as
    ``(result, phi)``.
    """
    L, T = config.eval_end, config.train_end
    input_rng, base_seed = _streams(config.seed)
    u_prime = gen_input(L, input_rng)
    y = target(u_prime, config.task)
    if y.diverged:
        log.debug("target diverged at t=%d (%s)", y.diverged_at, config.name)
        res = TrialResult(config, float("nan"), float("nan"), diverged=True, diverged_at=y.diverged_at)
        return (res, None) if return_design else res

    lag = config.task.input_lag if config.align_input else 0
    fed = np.concatenate([np.zeros(lag), u_prime[: L - lag]]) if lag else u_prime
    u = scale_input(fed)

    rc = config.reservoir
    res = build_reservoir(rc.d, rc.m, rc.n_h, policy=rc.policy, base_seed=base_seed)
    phi = drive(res, u)

    weights = readout.solve_least_squares(phi[:T], y.values[:T], include_bias=config.include_bias)
    baseline = readout.fit_linear_baseline(u[:T], y.values[:T])
    yhat_model = readout.predict(phi, weights)
    yhat_lr = baseline.predict(u)

    window = metrics.EvalWindow(T + 1, L)
    result = TrialResult(
        config,
        nmse_model=metrics.nmse(y.values, yhat_model, window),
        nmse_lr=metrics.nmse(y.values, yhat_lr, window),
        weights=weights,
        baseline=baseline,
    )
    if keep_traces:
        result.traces = Traces(u_prime, u, y.values, yhat_model, yhat_lr, T)
    return (result, phi) if return_design else result


@dataclass
class ConditionSummary:
    condition: str
    n_trials: int
    n_diverged: int
    success_rate: float
    nmse_model_mean_all: float
    nmse_model_std_all: float
    nmse_model_mean_success: float
    nmse_lr_mean: float
    nmse_lr_std: float


@dataclass
class ExperimentSummary:
    conditions: list[ConditionSummary]
    trials: list[list[TrialResult]]

    def __getitem__(self, key) -> ConditionSummary:
        if isinstance(key, str):
            for c in self.conditions:
                if c.condition == key:
                    return c
            raise KeyError(key)
        return self.conditions[key]

    def __len__(self):
        return len(self.conditions)


def _std(x) -> float:
    # sample std; a single trial reports 0
    return float(np.std(x, ddof=1)) if len(x) > 1 else 0.0


def _mean(x) -> float:
    return float(np.mean(x)) if len(x) else float("nan")


def summarize(label: str, results: list[TrialResult]) -> ConditionSummary:
    ok = [r for r in results if not r.diverged]
    model = [r.nmse_model for r in ok]
    lr = [r.nmse_lr for r in ok]
    won = [r.nmse_model for r in ok if r.success]
    return ConditionSummary(
        condition=label,
        n_trials=len(results),
        n_diverged=len(results) - len(ok),
        success_rate=metrics.success_rate(zip(model, lr)) if ok else float("nan"),
        nmse_model_mean_all=_mean(model),
        nmse_model_std_all=_std(model) if ok else float("nan"),
        nmse_model_mean_success=_mean(won),
        nmse_lr_mean=_mean(lr),
        nmse_lr_std=_std(lr) if ok else float("nan"),
    )


def trial_seed(base_seed: int, condition: int, trial: int) -> int:
    ss = np.random.SeedSequence([int(base_seed), int(condition), int(trial)])
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def _run_job(job):
    config, keep_traces = job
    return run_trial(config, keep_traces=keep_traces)


def run_experiment(conditions, n_trials=10, base_seed=0, workers=1, keep_traces=False) -> ExperimentSummary:
    """Run ``n_trials`` seeded trials for each condition template.

    The ``seed`` field of each template is ignored; trial seeds come from
    ``(base_seed, condition index, trial index)``.  ``workers > 1`` runs
    trials in a process pool with results identical to serial execution.
    """
    if int(n_trials) < 1:
        raise ValueError("n_trials must be at least 1")
    conditions = list(conditions)
    jobs = [
        (replace(cfg, seed=trial_seed(base_seed, ci, ti)), keep_traces)
        for ci, cfg in enumerate(conditions)
        for ti in range(int(n_trials))
    ]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            flat = list(pool.map(_run_job, jobs))
    else:
        flat = [_run_job(j) for j in jobs]

    per_condition = [flat[i * n_trials:(i + 1) * n_trials] for i in range(len(conditions))]
    labels = _unique_labels([c.name for c in conditions])
    summaries = [summarize(lab, res) for lab, res in zip(labels, per_condition)]
    return ExperimentSummary(summaries, per_condition)


def _unique_labels(names):
    seen: dict[str, int] = {}
    out = []
    for n in names:
        k = seen.get(n, 0)
        seen[n] = k + 1
        out.append(n if k == 0 else f"{n}#{k}")
    return out


def task_from_string(kind: str, params=None, n=None) -> TaskSpec:
    """Build a task spec from CLI-style arguments.

    ``kind`` is ``narma2nd``, ``narmaN`` or ``narmaNmod``; ``params`` is the
    four coefficients ``a,b,c,d`` (or ``alpha,beta,gamma,delta``) as a
    comma-separated string or a sequence.
    """
    if isinstance(params, str):
        params = [float(v) for v in params.split(",") if v.strip()]
    if params is not None and len(params) != 4:
        raise ValueError(f"expected 4 task coefficients, got {len(params)}")
    key = kind.strip().lower()
    if key in ("narma2nd", "second_order", "second-order"):
        return SecondOrderNarmaParams(*params) if params else SecondOrderNarmaParams()
    if key in ("narman", "narmanmod"):
        modified = key == "narmanmod"
        n = 10 if n is None else int(n)
        if params:
            return NarmaNParams(n, *params, modified=modified)
        return NarmaNParams(n, modified=modified)
    raise ValueError(f"unknown task kind {kind!r}")
