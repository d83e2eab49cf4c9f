"""Reservoir computing with banks of Preisach hysteretic systems."""

from .errors import DomainError
from .harness import (
    ExperimentSummary,
    ReservoirConfig,
    TrialConfig,
    TrialResult,
    run_experiment,
    run_trial,
)
from .metrics import EvalWindow, nmse, success_rate
from .preisach import (
    Hysteron,
    InitialStatePolicy,
    PreisachSystem,
    build_system,
    hysteron_step,
    reset,
    sweep_loop,
    system_output,
)
from .readout import LinearBaseline, ReadoutWeights, fit_linear_baseline, predict, solve_least_squares
from .reservoir import HysteresisReservoir, build_reservoir, drive, scale_input
from .tasks import NarmaNParams, SecondOrderNarmaParams, TargetSequence, gen_input, narma_n, second_order_narma

__version__ = "0.1.0"
