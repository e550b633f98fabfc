from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Optional, Tuple
import numpy as np
from .trace import BoostingTrace

if TYPE_CHECKING:
    from .criteria import CriterionHistory
    from .stopping_rules import StoppingRule


@dataclass(frozen=True, eq=False)
class BoostingFit:
    """
    Result of a boosting run.

    Attributes:
        beta: Final coefficient vector
        variable_names: Labels of the p variables
        iterations_run: Iterations behind ``beta``
        stopping_rule: Rule that ended the run
        stop_reason: Short description of why the run ended
        trace: Iteration history up to ``iterations_run``
        log_likelihood: Log partial likelihood at ``beta``
        rate: Step size of the run
        num_subjects: n of the training data
        num_events: Number of events of the training data
        criterion_history: Criterion or cross-validation scores, when the rule used one
    """
    beta: np.ndarray
    variable_names: Tuple[str, ...]
    iterations_run: int
    stopping_rule: "StoppingRule"
    stop_reason: str
    trace: BoostingTrace
    log_likelihood: float
    rate: float
    num_subjects: int
    num_events: int
    criterion_history: Optional["CriterionHistory"] = None

    @property
    def selected(self) -> np.ndarray:
        return np.flatnonzero(self.beta != 0)

    @property
    def coefficients(self) -> Dict[str, float]:
        return {self.variable_names[j]: float(self.beta[j]) for j in self.selected}

    def summary(self) -> dict:
        """Selected variables, their coefficients and the number of iterations."""
        return {
            "selected": [self.variable_names[j] for j in self.selected],
            "coefficients": self.coefficients,
            "iterations": self.iterations_run,
        }

    def model_summary(self) -> dict:
        """Data and model description of the fit."""
        return {
            "n": self.num_subjects,
            "events": self.num_events,
            "iterations": self.iterations_run,
            "rate": self.rate,
            "stopping_rule": self.stopping_rule.to_dict(),
            "log_likelihood": self.log_likelihood,
            "coefficients": self.coefficients,
        }

    def __repr__(self):
        return (f"<BoostingFit(selected={len(self.selected)}, iterations={self.iterations_run}, "
                f"rule='{self.stopping_rule.name}')>")
