"""
Componentwise gradient boosting for the stratified Cox model
------------------------------------------------------------
Starting from beta = 0, every iteration scans the first partial derivative of
every variable, picks the one with the largest magnitude and moves only that
coefficient by a damped Newton step ``rate * L1 / L2``.
"""
from typing import Callable, NamedTuple, Optional, Tuple
import numpy as np
from survival_model.errors import DegenerateCurvatureError, NumericalError
from survival_model.partial_likelihood import StratifiedPartialLikelihood, update_linear_predictor
from .config import BoostingConfig
from .trace import BoostingTrace, StepRecord
from logger_config import get_logger

logger = get_logger("boosting")

CURVATURE_FLOOR = 1e-12


class BoostingState(NamedTuple):
    """Coefficients of an in-progress run with the matching linear predictor."""
    beta: np.ndarray
    eta: np.ndarray
    log_likelihood: float
    iteration: int
    num_selected: int


def initial_state(model: StratifiedPartialLikelihood) -> BoostingState:
    eta = np.zeros(model.dataset.n)
    return BoostingState(
        beta=np.zeros(model.dataset.p),
        eta=eta,
        log_likelihood=model.log_likelihood(eta),
        iteration=0,
        num_selected=0,
    )


def boost_step(model: StratifiedPartialLikelihood, state: BoostingState,
               rate: float) -> Tuple[BoostingState, StepRecord]:
    """
    Perform one boosting iteration.

    Args:
        model: Partial likelihood of the training data
        state: Current coefficients, consistent with their linear predictor
        rate: Step size

    Returns:
        The updated state and the record of this iteration

    Raises:
        DegenerateCurvatureError: If L2 of the selected variable is below 1e-12
        NumericalError: If the update is not finite
    """
    gradient = model.gradient(state.eta)
    # argmax returns the first maximum, so ties go to the smallest index
    j = int(np.argmax(np.abs(gradient)))
    l1 = float(gradient[j])
    l2 = model.second_derivative(state.eta, j)
    if l2 < CURVATURE_FLOOR:
        raise DegenerateCurvatureError(j, l2)

    delta = rate * l1 / l2
    if not np.isfinite(delta):
        raise NumericalError(f"non-finite update for variable {j}")

    beta = state.beta.copy()
    was_zero = beta[j] == 0
    beta[j] += delta
    num_selected = state.num_selected + int(was_zero and beta[j] != 0) - int(not was_zero and beta[j] == 0)
    eta = update_linear_predictor(state.eta, model.dataset, j, delta)
    log_likelihood = model.log_likelihood(eta)
    ascent = log_likelihood >= state.log_likelihood - 1e-10 * max(1.0, abs(state.log_likelihood))
    if not ascent:
        logger.warning(f"Log likelihood decreased at iteration {state.iteration + 1}: "
                       f"{state.log_likelihood:.6f} -> {log_likelihood:.6f}")

    record = StepRecord(
        iteration=state.iteration + 1,
        variable=j,
        first_derivative=l1,
        second_derivative=l2,
        delta=delta,
        coefficient=float(beta[j]),
        log_likelihood=log_likelihood,
        num_selected=num_selected,
        ascent=ascent,
    )
    new_state = BoostingState(beta, eta, log_likelihood, state.iteration + 1, num_selected)
    return new_state, record


StopCheck = Callable[[BoostingTrace, BoostingState], Optional[str]]


def boost_path(model: StratifiedPartialLikelihood, config: BoostingConfig, max_iterations: int,
               stop_check: Optional[StopCheck] = None,
               on_step: Optional[Callable[[StepRecord], None]] = None) -> Tuple[BoostingState, BoostingTrace, str]:
    """
    Iterate boost_step until a stop check fires or max_iterations is reached.

    Args:
        model: Partial likelihood of the training data
        config: Step size and trace options
        max_iterations: Hard cap on iterations
        stop_check: Called after every iteration; a returned string ends the run
        on_step: Called with every step record

    Returns:
        Final state, the recorded trace and the reason the run ended
    """
    state = initial_state(model)
    trace = BoostingTrace(model.dataset.p, state.log_likelihood, config.snapshot_stride)
    reason = "iteration cap reached"
    for _ in range(max_iterations):
        state, record = boost_step(model, state, config.rate)
        trace.append(record, state.beta)
        if on_step is not None:
            on_step(record)
        logger.debug(f"Iteration {record.iteration}: variable {record.variable}, "
                     f"delta {record.delta:.6g}, loglik {record.log_likelihood:.6f}")
        if stop_check is not None:
            stop = stop_check(trace, state)
            if stop:
                reason = stop
                break
    return state, trace, reason
