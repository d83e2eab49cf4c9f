"""CSV tables and SVG line plots for trials, summaries and sweeps."""

from __future__ import annotations

from pathlib import Path

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from .harness import ExperimentSummary, TrialResult
from .io import write_csv

# fixed element ids so re-emitted SVGs are byte-identical
matplotlib.rcParams["svg.hashsalt"] = "hysteresis_rc"

TRIAL_HEADER = ["t", "u_prime", "u", "y", "yhat_model", "yhat_lr", "phase"]
SUMMARY_HEADER = [
    "condition", "n_trials", "n_diverged", "success_rate",
    "nmse_model_mean_all", "nmse_model_std_all", "nmse_model_mean_success",
    "nmse_lr_mean", "nmse_lr_std",
]
TRIALS_HEADER = ["condition", "trial", "seed", "diverged", "diverged_at", "nmse_model", "nmse_lr"]


def _save_svg(fig: Figure, path: Path) -> Path:
    try:
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc
    return path


def plot_trial(result: TrialResult, path) -> Path:
    tr = result.traces
    t = np.arange(1, len(tr.y) + 1)
    fig = Figure(figsize=(8, 3.5))
    ax = fig.add_subplot()
    ax.plot(t, tr.y, color="black", lw=0.8, label="target")
    ax.plot(t, tr.yhat_lr, color="tab:orange", lw=0.8, label=f"LR (NMSE={result.nmse_lr:.3f})")
    ax.plot(t, tr.yhat_model, color="tab:blue", lw=0.8, label=f"reservoir (NMSE={result.nmse_model:.3f})")
    ax.axvline(tr.train_end + 0.5, color="gray", ls="--", lw=1)
    ax.set_xlabel("t")
    ax.set_ylabel("y")
    ax.set_title(result.config.name, fontsize=9)
    ax.legend(fontsize=7, loc="upper right")
    fig.tight_layout()
    return _save_svg(fig, Path(path))


def plot_sweeps(traces: dict, path) -> Path:
    fig = Figure(figsize=(4.5, 3.5))
    ax = fig.add_subplot()
    for label, trace in traces.items():
        ax.plot(trace[:, 0], trace[:, 1], lw=1, marker=".", ms=2, label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("Y")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return _save_svg(fig, Path(path))


def write_trial_csv(result: TrialResult, path) -> Path:
    tr = result.traces
    rows = (
        (t, tr.u_prime[t - 1], tr.u[t - 1], tr.y[t - 1], tr.yhat_model[t - 1], tr.yhat_lr[t - 1],
         "train" if t <= tr.train_end else "eval")
        for t in range(1, len(tr.y) + 1)
    )
    return write_csv(path, TRIAL_HEADER, rows)


def write_summary_csv(summary: ExperimentSummary, path) -> Path:
    rows = ([getattr(c, k) for k in SUMMARY_HEADER] for c in summary.conditions)
    return write_csv(path, SUMMARY_HEADER, rows)


def write_trials_csv(summary: ExperimentSummary, path) -> Path:
    rows = []
    for cond, results in zip(summary.conditions, summary.trials):
        for i, r in enumerate(results):
            rows.append((cond.condition, i, r.config.seed, r.diverged,
                         "" if r.diverged_at is None else r.diverged_at, r.nmse_model, r.nmse_lr))
    return write_csv(path, TRIALS_HEADER, rows)


def write_sweep_csv(trace, path) -> Path:
    rows = ((i, x, y) for i, (x, y) in enumerate(np.asarray(trace)))
    return write_csv(path, ["step", "x", "Y"], rows)


def emit_outputs(result, out_dir, stem: str | None = None) -> list[Path]:
    """Write the tables (and plots, when traces exist) for ``result``.

    ``TrialResult`` -> ``<stem>.csv`` + ``<stem>.svg`` (``stem`` defaults to
    ``trial``); a diverged or trace-less trial writes nothing.
    ``ExperimentSummary`` -> ``summary.csv`` and ``trials.csv``.
    A dict of sweep traces ``{label: (n, 2) array}`` -> ``sweep_<label>.csv``
    per loop and ``sweep.svg``; a bare array -> ``sweep.csv``.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if isinstance(result, TrialResult):
        stem = stem or "trial"
        if result.traces is None:
            return []
        return [write_trial_csv(result, out / f"{stem}.csv"), plot_trial(result, out / f"{stem}.svg")]
    if isinstance(result, ExperimentSummary):
        stem = stem or "summary"
        return [write_summary_csv(result, out / f"{stem}.csv"), write_trials_csv(result, out / "trials.csv")]
    if isinstance(result, dict):
        files = [write_sweep_csv(tr, out / f"sweep_{label}.csv") for label, tr in result.items()]
        files.append(plot_sweeps(result, out / f"{stem or 'sweep'}.svg"))
        return files
    arr = np.asarray(result)
    if arr.ndim == 2 and arr.shape[1] == 2:
        stem = stem or "sweep"
        return [write_sweep_csv(arr, out / f"{stem}.csv"), plot_sweeps({stem: arr}, out / f"{stem}.svg")]
    raise TypeError(f"don't know how to emit {type(result).__name__}")
