from .config import SimulationConfig
from .simulator import SimulatedDataset, apply_censoring, gen_covariates, gen_event_times, simulate_survival_cox
from .metrics import SelectionMetrics, selection_metrics

__all__ = [
    "SimulationConfig", "SimulatedDataset", "apply_censoring", "gen_covariates", "gen_event_times",
    "simulate_survival_cox", "SelectionMetrics", "selection_metrics",
]
