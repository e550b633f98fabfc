"""
Information criteria over a boosting trace
------------------------------------------
BIC and AIC are measured against the empty model at beta = 0; EBIC adds the
combinatorial penalty 2 * gamma * log C(p, p_j). The sample-size term of the
BIC-type criteria is the number of events d, not n.
"""
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional
import numpy as np
from scipy.special import gammaln
from survival_model.partial_likelihood import StratifiedPartialLikelihood
from .trace import BoostingTrace


class CriterionContext(NamedTuple):
    """Dataset quantities every criterion needs: d, p and the null log likelihood."""
    num_events: int
    num_variables: int
    null_log_likelihood: float

    @classmethod
    def from_model(cls, model: StratifiedPartialLikelihood) -> "CriterionContext":
        return cls(
            num_events=model.dataset.num_events,
            num_variables=model.dataset.p,
            null_log_likelihood=model.log_likelihood(np.zeros(model.dataset.n)),
        )


class FitState(NamedTuple):
    log_likelihood: float
    num_selected: int


def log_binomial(n: int, k: int) -> float:
    """log C(n, k) through log-gamma."""
    return float(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))


def bic(context: CriterionContext, state: FitState) -> float:
    return (-2.0 * (state.log_likelihood - context.null_log_likelihood)
            + state.num_selected * np.log(context.num_events))


def ebic(context: CriterionContext, state: FitState, gamma: float = 0.5) -> float:
    return (-2.0 * state.log_likelihood
            + state.num_selected * np.log(context.num_events)
            + 2.0 * gamma * log_binomial(context.num_variables, state.num_selected))


def aic(context: CriterionContext, state: FitState) -> float:
    return -2.0 * state.log_likelihood + 2.0 * state.num_selected


Criterion = Callable[[CriterionContext, FitState], float]


@dataclass(frozen=True, eq=False)
class CriterionHistory:
    """
    Criterion value of every iteration 0..M and the minimizing iteration.

    Attributes:
        criterion: Name of the criterion ("bic", "ebic", "aic" or "cv")
        values: Criterion (or summed cross-validation score) per iteration
        best_iteration: First iteration attaining the minimum
        boundary: True when the minimum sits at the last iteration
        fold_scores: Per-fold cross-validation scores, shape (folds, M + 1)
    """
    criterion: str
    values: np.ndarray
    best_iteration: int
    boundary: bool
    fold_scores: Optional[np.ndarray] = None

    @classmethod
    def from_values(cls, criterion: str, values, fold_scores: Optional[np.ndarray] = None) -> "CriterionHistory":
        values = np.asarray(values, dtype=float)
        # np.argmin keeps the first occurrence on ties
        best = int(np.argmin(values))
        return cls(criterion, values, best, bool(values.size > 1 and best == values.size - 1), fold_scores)

    def to_dict(self) -> dict:
        document = {
            "criterion": self.criterion,
            "values": [float(v) for v in self.values],
            "best_iteration": self.best_iteration,
            "boundary": self.boundary,
        }
        if self.fold_scores is not None:
            document["fold_scores"] = [[float(v) for v in row] for row in self.fold_scores]
        return document

    @classmethod
    def from_dict(cls, document: dict) -> "CriterionHistory":
        folds = document.get("fold_scores")
        return cls(
            criterion=document["criterion"],
            values=np.asarray(document["values"], dtype=float),
            best_iteration=int(document["best_iteration"]),
            boundary=bool(document["boundary"]),
            fold_scores=None if folds is None else np.asarray(folds, dtype=float),
        )


def criterion_values(trace: BoostingTrace, context: CriterionContext, criterion: Criterion) -> List[float]:
    """Evaluate a criterion at every iteration 0..len(trace) of a recorded run."""
    return [criterion(context, FitState(float(ll), int(k)))
            for ll, k in zip(trace.log_likelihoods, trace.support_sizes)]
