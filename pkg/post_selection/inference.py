"""
Refit of the selected variables
-------------------------------
Maximizes the stratified partial likelihood over the selected support by
damped Newton iterations and reports Wald standard errors, z statistics and
normal p-values, as an unpenalized Cox fit on the selected columns would.
"""
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Union
import numpy as np
import pandas as pd
from scipy.stats import norm
from survival_model.dataset import SurvivalDataset
from survival_model.errors import ConvergenceError, SeparationError, SingularHessianError, SurvivalDataError
from survival_model.partial_likelihood import StratifiedPartialLikelihood
from logger_config import get_logger

logger = get_logger("post_selection")

Z_95 = 1.96
SCORE_TOLERANCE = 1e-8
MAX_NEWTON_ITERATIONS = 100
SEPARATION_BOUND = 50.0
MAX_STEP_HALVINGS = 30


class InferenceRow(NamedTuple):
    variable: str
    coef: float
    exp_coef: float
    se: float
    z: float
    p_value: float
    lower_95: float
    upper_95: float


@dataclass(frozen=True)
class InferenceTable:
    """
    Refit coefficients of the selected variables with Wald statistics.

    Attributes:
        rows: One row per selected variable, in column order
        num_subjects: n
        num_events: Number of events
        log_likelihood: Log partial likelihood at the refit
        iterations: Newton iterations used
        score_norm: Max-norm of the score at the refit
    """
    rows: List[InferenceRow]
    num_subjects: int
    num_events: int
    log_likelihood: float
    iterations: int
    score_norm: float

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame({
            "coef": [r.coef for r in self.rows],
            "exp(coef)": [r.exp_coef for r in self.rows],
            "exp(-coef)": [1.0 / r.exp_coef for r in self.rows],
            "se(coef)": [r.se for r in self.rows],
            "z": [r.z for r in self.rows],
            "Pr(>|z|)": [r.p_value for r in self.rows],
            "lower .95": [r.lower_95 for r in self.rows],
            "upper .95": [r.upper_95 for r in self.rows],
        }, index=pd.Index([r.variable for r in self.rows], name="variable"))
        return frame

    def to_dict(self) -> dict:
        return {
            "n": self.num_subjects,
            "events": self.num_events,
            "log_likelihood": self.log_likelihood,
            "iterations": self.iterations,
            "score_norm": self.score_norm,
            "rows": [row._asdict() for row in self.rows],
        }


def _information(model: StratifiedPartialLikelihood, eta: np.ndarray, size: int) -> np.ndarray:
    info = model.information_matrix(eta, np.arange(size))
    eigenvalues = np.linalg.eigvalsh(info)
    if eigenvalues[0] <= 1e-10 * max(1.0, eigenvalues[-1]):
        raise SingularHessianError(
            f"information matrix is singular (smallest eigenvalue {eigenvalues[0]:.3e}); "
            f"check for constant or collinear selected columns")
    return info


def _resolve_columns(dataset: SurvivalDataset, selected: Sequence[Union[int, str]]) -> List[int]:
    columns = [dataset.column_index(s) if isinstance(s, str) else int(s) for s in selected]
    if not columns:
        raise SurvivalDataError("no variables selected: refit needs at least one")
    if len(set(columns)) != len(columns) or min(columns) < 0 or max(columns) >= dataset.p:
        raise SurvivalDataError(f"selected variables must be distinct indices in 0..{dataset.p - 1}")
    return columns


def refit_inference(dataset: SurvivalDataset, selected: Sequence[Union[int, str]],
                    tolerance: float = SCORE_TOLERANCE,
                    max_iterations: int = MAX_NEWTON_ITERATIONS,
                    initial: Optional[Sequence[float]] = None) -> InferenceTable:
    """
    Maximize the partial likelihood over the selected variables.

    Args:
        dataset: Training data
        selected: Selected variables, as indices or names
        tolerance: Convergence bound on the score max-norm
        max_iterations: Newton iteration limit
        initial: Starting coefficients, zeros when omitted

    Returns:
        InferenceTable of the refit

    Raises:
        SingularHessianError: If the information matrix is not positive definite
        SeparationError: If a coefficient exceeds 50 in magnitude
        ConvergenceError: If the score does not vanish within max_iterations or no halved step
            improves the likelihood
    """
    columns = _resolve_columns(dataset, selected)
    support = dataset.column_subset(columns)
    model = StratifiedPartialLikelihood(support)
    beta = np.zeros(len(columns)) if initial is None else np.asarray(initial, dtype=float).copy()
    eta = model.linear_predictor(beta)
    log_likelihood = model.log_likelihood(eta)

    iteration = 0
    score = model.gradient(eta)
    while np.max(np.abs(score)) >= tolerance:
        if iteration == max_iterations:
            logger.error(f"Refit did not converge: score max-norm {np.max(np.abs(score)):.3e}")
            raise ConvergenceError(f"refit did not converge in {max_iterations} Newton iterations")
        step = np.linalg.solve(_information(model, eta, len(columns)), score)
        for _ in range(MAX_STEP_HALVINGS):
            candidate = beta + step
            if np.any(np.abs(candidate) > SEPARATION_BOUND):
                raise SeparationError(
                    f"coefficient magnitude exceeded {SEPARATION_BOUND:g}: monotone likelihood, "
                    f"the selected variables separate the events")
            candidate_eta = model.linear_predictor(candidate)
            candidate_ll = model.log_likelihood(candidate_eta)
            if candidate_ll >= log_likelihood - 1e-12 * max(1.0, abs(log_likelihood)):
                break
            step = step / 2.0
        else:
            logger.error(f"Refit step did not improve the likelihood after {MAX_STEP_HALVINGS} halvings")
            raise ConvergenceError(f"no step along the Newton direction improved the log likelihood "
                                   f"(iteration {iteration})")
        beta, eta, log_likelihood = candidate, candidate_eta, candidate_ll
        score = model.gradient(eta)
        iteration += 1

    covariance = np.linalg.inv(_information(model, eta, len(columns)))
    se = np.sqrt(np.diag(covariance))
    z = beta / se
    p_values = 2.0 * norm.sf(np.abs(z))
    rows = [
        InferenceRow(
            variable=support.variable_names[k],
            coef=float(beta[k]),
            exp_coef=float(np.exp(beta[k])),
            se=float(se[k]),
            z=float(z[k]),
            p_value=float(p_values[k]),
            lower_95=float(np.exp(beta[k] - Z_95 * se[k])),
            upper_95=float(np.exp(beta[k] + Z_95 * se[k])),
        )
        for k in range(len(columns))
    ]
    logger.info(f"Refit {len(columns)} variables in {iteration} Newton iterations, "
                f"log likelihood {log_likelihood:.6f}")
    return InferenceTable(
        rows=rows,
        num_subjects=dataset.n,
        num_events=dataset.num_events,
        log_likelihood=log_likelihood,
        iterations=iteration,
        score_norm=float(np.max(np.abs(score))),
    )
