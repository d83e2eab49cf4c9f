from dataclasses import replace

import numpy as np
import pytest

from hysteresis_rc.harness import (
    ReservoirConfig,
    TrialConfig,
    TrialResult,
    run_experiment,
    run_trial,
    summarize,
    task_from_string,
    trial_seed,
)
from hysteresis_rc.metrics import EvalWindow, nmse
from hysteresis_rc.readout import fit_linear_baseline, predict, solve_least_squares
from hysteresis_rc.reservoir import build_reservoir, drive, scale_input
from hysteresis_rc.tasks import NarmaNParams, SecondOrderNarmaParams, gen_input, target

FAST = ReservoirConfig(d=5.0, n_h=500)


def test_trial_deterministic():
    cfg = TrialConfig(reservoir=FAST, seed=3)
    a, b = run_trial(cfg, keep_traces=True), run_trial(cfg, keep_traces=True)
    assert a.nmse_model == b.nmse_model and a.nmse_lr == b.nmse_lr
    assert np.array_equal(a.weights.w, b.weights.w)
    assert np.array_equal(a.traces.yhat_model, b.traces.yhat_model)


def test_different_seeds_differ():
    a = run_trial(TrialConfig(reservoir=FAST, seed=1))
    b = run_trial(TrialConfig(reservoir=FAST, seed=2))
    assert a.nmse_model != b.nmse_model


@pytest.mark.parametrize("task", [SecondOrderNarmaParams(), NarmaNParams(n=3)])
def test_trial_protocol_integrity(task):
    """Rebuild a trial from its parts: one uninterrupted drive, train on
    1..1000, score on 1001..2000."""
    cfg = TrialConfig(task=task, reservoir=FAST, seed=11)
    result, phi = run_trial(cfg, keep_traces=True, return_design=True)
    tr = result.traces

    y = target(tr.u_prime, task).values
    lag = task.input_lag
    fed = np.concatenate([np.zeros(lag), tr.u_prime[:2000 - lag]])
    u = scale_input(fed)
    assert np.array_equal(tr.u, u)
    assert np.array_equal(tr.y, y)

    res = build_reservoir(FAST.d, FAST.m, FAST.n_h, base_seed=result_base_seed(cfg))
    whole = drive(res, u)
    assert np.array_equal(phi, whole)

    w = solve_least_squares(whole[:1000], y[:1000])
    lr = fit_linear_baseline(u[:1000], y[:1000])
    win = EvalWindow(1001, 2000)
    assert result.nmse_model == nmse(y, predict(whole, w), win)
    assert result.nmse_lr == nmse(y, lr.predict(u), win)


def result_base_seed(cfg):
    from hysteresis_rc.harness import _streams

    return _streams(cfg.seed)[1]


def test_unaligned_protocol_feeds_current_input():
    cfg = TrialConfig(task=NarmaNParams(n=2), reservoir=FAST, seed=1, align_input=False)
    r = run_trial(cfg, keep_traces=True)
    assert np.array_equal(r.traces.u, scale_input(r.traces.u_prime))


def test_aligned_second_order_feeds_current_input():
    r = run_trial(TrialConfig(reservoir=FAST, seed=1), keep_traces=True)
    assert np.array_equal(r.traces.u, scale_input(r.traces.u_prime))


def test_diverged_trial():
    cfg = TrialConfig(task=NarmaNParams(n=10, gamma=1.5, modified=True), reservoir=FAST, seed=0)
    r = run_trial(cfg)
    assert r.diverged and r.diverged_at is not None
    assert np.isnan(r.nmse_model) and r.weights is None
    assert not r.success


def test_input_and_reservoir_streams_are_seeded():
    cfg = TrialConfig(reservoir=FAST, seed=5)
    r = run_trial(cfg, keep_traces=True)
    from hysteresis_rc.harness import _streams

    rng, _ = _streams(5)
    assert np.array_equal(r.traces.u_prime, gen_input(2000, rng))


def test_trial_config_validation():
    with pytest.raises(ValueError):
        TrialConfig(train_end=2000, eval_end=2000)
    with pytest.raises(ValueError):
        ReservoirConfig(d=0)


def test_include_bias_flag():
    r = run_trial(TrialConfig(reservoir=FAST, seed=2, include_bias=True))
    assert r.weights.include_bias


# -- aggregation -------------------------------------------------------------

def _fake(model, lr, diverged=False):
    return TrialResult(TrialConfig(), model, lr, diverged=diverged)


def test_summary_hand_aggregation():
    results = [_fake(0.2, 0.4), _fake(0.5, 0.3), _fake(0.1, 0.45), _fake(np.nan, np.nan, True)]
    s = summarize("c", results)
    model = [0.2, 0.5, 0.1]
    lr = [0.4, 0.3, 0.45]
    mean = sum(model) / 3
    std = (sum((m - mean) ** 2 for m in model) / 2) ** 0.5
    lr_mean = sum(lr) / 3
    lr_std = (sum((v - lr_mean) ** 2 for v in lr) / 2) ** 0.5
    assert (s.n_trials, s.n_diverged) == (4, 1)
    assert s.success_rate == pytest.approx(2 / 3)
    assert s.nmse_model_mean_all == pytest.approx(mean)
    assert s.nmse_model_std_all == pytest.approx(std)
    assert s.nmse_model_mean_success == pytest.approx(0.15)
    assert s.nmse_lr_mean == pytest.approx(lr_mean)
    assert s.nmse_lr_std == pytest.approx(lr_std)


def test_single_trial_std_zero():
    s = summarize("c", [_fake(0.2, 0.4)])
    assert s.nmse_model_std_all == 0 and s.nmse_lr_std == 0


def test_all_diverged_summary():
    s = summarize("c", [_fake(np.nan, np.nan, True)] * 2)
    assert s.n_diverged == 2 and np.isnan(s.success_rate)


def test_experiment_matches_individual_trials():
    conds = [TrialConfig(reservoir=FAST), TrialConfig(reservoir=replace(FAST, d=2.0))]
    summary = run_experiment(conds, n_trials=2, base_seed=4)
    assert len(summary) == 2
    for ci, cond in enumerate(conds):
        for ti in range(2):
            r = run_trial(replace(cond, seed=trial_seed(4, ci, ti)))
            assert summary.trials[ci][ti].nmse_model == r.nmse_model


def test_parallel_equals_serial():
    conds = [TrialConfig(reservoir=FAST), TrialConfig(task=NarmaNParams(n=2), reservoir=FAST)]
    serial = run_experiment(conds, n_trials=3, base_seed=1, workers=1)
    parallel = run_experiment(conds, n_trials=3, base_seed=1, workers=2)
    assert serial.conditions == parallel.conditions


def test_experiment_seed_discipline():
    conds = [TrialConfig(reservoir=FAST)]
    assert run_experiment(conds, 2, base_seed=7).conditions == run_experiment(conds, 2, base_seed=7).conditions
    assert run_experiment(conds, 2, base_seed=7).conditions != run_experiment(conds, 2, base_seed=8).conditions


def test_experiment_rejects_zero_trials():
    with pytest.raises(ValueError):
        run_experiment([TrialConfig(reservoir=FAST)], n_trials=0)


def test_duplicate_labels_made_unique():
    s = run_experiment([TrialConfig(reservoir=FAST, label="x")] * 2, n_trials=1)
    assert [c.condition for c in s.conditions] == ["x", "x#1"]
    assert s["x#1"] is s.conditions[1]


def test_task_from_string():
    assert task_from_string("narma2nd") == SecondOrderNarmaParams()
    assert task_from_string("narma2nd", "0.4,0.4,0.2,0.1") == SecondOrderNarmaParams(0.4, 0.4, 0.2, 0.1)
    assert task_from_string("narmaNmod", [0.3, 0.05, 1.0, 0.1], 10) == NarmaNParams(10, 0.3, 0.05, 1.0, 0.1, True)
    assert task_from_string("narmaN", None, 3) == NarmaNParams(n=3)
    with pytest.raises(ValueError):
        task_from_string("lorenz")
    with pytest.raises(ValueError):
        task_from_string("narma2nd", "1,2")
