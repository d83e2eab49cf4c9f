"""Command line entry point: ``hysteresis-rc {sweep,trial,experiment}``.

Options may also come from a YAML file given with ``--config``; keys match
the long option names (``task``, ``task-params``, ``n``, ``d``, ``m``,
``nh``, ``policy``, ``seed``, ``trace``, ...).  Flags given on the command
line override file values.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import yaml

from .errors import DomainError
from .harness import ReservoirConfig, TrialConfig, run_trial, task_from_string
from .output import emit_outputs
from .presets import PRESET_NAMES, SweepSpec, run_preset, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2

DEFAULTS = {
    "sweep": {"range": 1.0, "nh": 100_000, "increment": 0.1, "seed": 0, "out": "out"},
    "trial": {
        "task": "narma2nd", "task_params": None, "n": 10, "d": 5.0, "m": 10, "nh": 10_000,
        "policy": "all_up", "seed": 0, "trace": False, "include_bias": False, "align_input": True,
        "train_end": 1000, "eval_end": 2000, "out": "out",
    },
    "experiment": {"preset": None, "trials": None, "seed": 0, "nh": None, "workers": 1, "out": "out"},
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _bool(text):
    v = str(text).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hysteresis-rc", description="Hysteretic reservoir computing experiments.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sweep", help="trace a Preisach hysteresis loop")
    p.add_argument("--config", type=Path)
    p.add_argument("--range", type=float, help="threshold half-width r (loop spans [-r, r])")
    p.add_argument("--nh", type=int, help="number of hysterons")
    p.add_argument("--increment", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("trial", help="run a single seeded trial")
    p.add_argument("--config", type=Path)
    p.add_argument("--task", choices=["narma2nd", "narmaN", "narmaNmod"])
    p.add_argument("--task-params", help="four comma-separated coefficients")
    p.add_argument("--n", type=int, help="NARMA-N order")
    p.add_argument("--d", type=float, help="reservoir width parameter")
    p.add_argument("--m", type=int, help="number of hysteretic systems")
    p.add_argument("--nh", type=int, help="hysterons per system")
    p.add_argument("--policy", choices=["all_up", "all_down", "random_half"])
    p.add_argument("--seed", type=int)
    p.add_argument("--trace", action="store_const", const=True, default=None,
                   help="write trial.csv and trial.svg")
    p.add_argument("--include-bias", type=_bool, metavar="BOOL")
    p.add_argument("--align-input", type=_bool, metavar="BOOL")
    p.add_argument("--train-end", type=int)
    p.add_argument("--eval-end", type=int)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("experiment", help="run a figure preset")
    p.add_argument("--config", type=Path)
    p.add_argument("--preset", choices=PRESET_NAMES)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--nh", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", type=Path)
    return parser


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh) or {}
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from exc
    except yaml.YAMLError as exc:
        raise UsageError(f"invalid config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must be a mapping of option names to values")
    return {str(k).replace("-", "_"): v for k, v in data.items()}


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, config file values and command-line flags."""
    opts = dict(DEFAULTS[args.command])
    if args.config is not None:
        file_opts = load_config(args.config)
        unknown = set(file_opts) - set(opts)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        opts.update(file_opts)
    for key in opts:
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    return opts


def _cmd_sweep(o):
    spec = SweepSpec(float(o["range"]), int(o["nh"]), float(o["increment"]), int(o["seed"]))
    trace = run_sweep(spec)
    files = emit_outputs(trace, o["out"], stem="sweep")
    print(f"sweep r={spec.range_half_width:g} n_h={spec.n_h}: {len(trace)} steps -> {files[0]}")


def _cmd_trial(o):
    params = o["task_params"]
    if isinstance(params, (int, float)):
        params = [params]
    try:
        task = task_from_string(str(o["task"]), params, o["n"])
        config = TrialConfig(
            task=task,
            reservoir=ReservoirConfig(float(o["d"]), int(o["m"]), int(o["nh"]), o["policy"]),
            train_end=int(o["train_end"]),
            eval_end=int(o["eval_end"]),
            seed=int(o["seed"]),
            include_bias=bool(o["include_bias"]),
            align_input=bool(o["align_input"]),
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    result = run_trial(config, keep_traces=bool(o["trace"]))
    if result.diverged:
        print(f"{config.name}: target diverged at t={result.diverged_at}")
        return
    print(f"{config.name}: NMSE model={result.nmse_model:.4f} LR={result.nmse_lr:.4f}")
    if o["trace"]:
        files = emit_outputs(result, o["out"])
        print(f"wrote {', '.join(str(f) for f in files)}")


def _cmd_experiment(o):
    if o["preset"] not in PRESET_NAMES:
        raise UsageError(f"--preset must be one of {', '.join(PRESET_NAMES)}")
    trials = None if o["trials"] is None else int(o["trials"])
    if trials is not None and trials < 1:
        raise UsageError("--trials must be positive")
    nh = None if o["nh"] is None else int(o["nh"])
    result = run_preset(o["preset"], trials, int(o["seed"]), nh, o["out"], int(o["workers"]))
    if isinstance(result, dict):
        print(f"{o['preset']}: {len(result)} loops written to {o['out']}")
    elif isinstance(result, list):
        for r in result:
            status = "diverged" if r.diverged else f"NMSE model={r.nmse_model:.4f} LR={r.nmse_lr:.4f}"
            print(f"{r.config.name}: {status}")
    else:
        for c in result.conditions:
            print(f"{c.condition}: success={c.success_rate:.2f} model={c.nmse_model_mean_all:.4f}"
                  f"±{c.nmse_model_std_all:.4f} LR={c.nmse_lr_mean:.4f} diverged={c.n_diverged}/{c.n_trials}")


COMMANDS = {"sweep": _cmd_sweep, "trial": _cmd_trial, "experiment": _cmd_experiment}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](resolve(args))
    except UsageError as exc:
        print(f"hysteresis-rc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ValueError, OSError) as exc:
        print(f"hysteresis-rc: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
