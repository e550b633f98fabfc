"""
Cross-validated choice of the number of boosting iterations
-----------------------------------------------------------
For fold k the boosting path is run on the data without fold k, and every
iterate is scored by CV_k(m) = -[l(beta_-k(m)) - l_-k(beta_-k(m))], with l the
full-data log partial likelihood and l_-k the training-data one. The chosen
iteration minimizes the sum of the fold scores.
"""
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import List, NamedTuple, Optional, Sequence
import numpy as np
from survival_model.dataset import SurvivalDataset
from survival_model.errors import InfeasibleFoldsError
from survival_model.partial_likelihood import StratifiedPartialLikelihood, update_linear_predictor
from .config import BoostingConfig
from .criteria import CriterionHistory
from .engine import boost_path
from .trace import BoostingTrace, StepRecord
from logger_config import get_logger

logger = get_logger("boosting")

MAX_ASSIGNMENT_ATTEMPTS = 5


class FoldRun(NamedTuple):
    """Boosting path of one training fold and its cross-validation scores for m = 0..M."""
    fold: int
    trace: BoostingTrace
    scores: np.ndarray


def training_sets_feasible(dataset: SurvivalDataset, fold_ids: np.ndarray, folds: int) -> bool:
    """
    Every training set keeps at least one event, and every stratum with two or
    more events keeps at least one of them.
    """
    events = dataset.status == 1
    full_counts = dataset.events_per_stratum()
    for k in range(folds):
        train = fold_ids != k
        if not np.any(train) or not np.any(fold_ids == k):
            return False
        counts = np.bincount(dataset.stratum[train & events], minlength=dataset.num_strata)
        if counts.sum() == 0 or np.any((full_counts >= 2) & (counts == 0)):
            return False
    return True


def assign_folds(dataset: SurvivalDataset, folds: int, seed: int = 0) -> np.ndarray:
    """
    Seeded fold assignment stratified by stratum.

    Within each stratum the events and the censored subjects are shuffled and
    dealt round-robin separately, so events spread over as many folds as possible.

    Args:
        dataset: Data to partition
        folds: Number of folds
        seed: Seed of the shuffles

    Returns:
        Fold id in 0..folds-1 for every subject

    Raises:
        InfeasibleFoldsError: If no attempt keeps events in every training set
    """
    for attempt in range(MAX_ASSIGNMENT_ATTEMPTS):
        rng = np.random.default_rng([seed, attempt])
        fold_ids = np.empty(dataset.n, dtype=int)
        offset = 0
        for g in range(dataset.num_strata):
            for status in (1, 0):
                members = np.flatnonzero((dataset.stratum == g) & (dataset.status == status))
                members = rng.permutation(members)
                fold_ids[members] = (offset + np.arange(members.size)) % folds
                offset += members.size
        if training_sets_feasible(dataset, fold_ids, folds):
            return fold_ids
        logger.warning(f"Fold assignment attempt {attempt + 1} left a training set without events")
    raise InfeasibleFoldsError(
        f"infeasible folds: could not split {dataset.num_events} events into {folds} folds "
        f"keeping events in every training set")


def run_fold(dataset: SurvivalDataset, full_model: StratifiedPartialLikelihood, fold_ids: np.ndarray,
             fold: int, config: BoostingConfig, max_iterations: int) -> FoldRun:
    """
    Boost on the data outside one fold and score every iterate on the full data.

    Args:
        dataset: Full data
        full_model: Partial likelihood of the full data, shared read-only
        fold_ids: Fold id of every subject
        fold: Held-out fold
        config: Boosting parameters
        max_iterations: Iterations of the training path

    Returns:
        FoldRun with the training trace and CV_k(m) for m = 0..len(trace)
    """
    train_indices = np.flatnonzero(fold_ids != fold)
    train = dataset.subset(train_indices)
    model = StratifiedPartialLikelihood(train)
    eta_full = np.zeros(dataset.n)
    full_log_likelihoods: List[float] = [full_model.log_likelihood(eta_full)]

    def score_on_full_data(record: StepRecord) -> None:
        nonlocal eta_full
        eta_full = update_linear_predictor(eta_full, dataset, record.variable, record.delta)
        full_log_likelihoods.append(full_model.log_likelihood(eta_full))

    _, trace, _ = boost_path(model, config, max_iterations, on_step=score_on_full_data)
    scores = -(np.asarray(full_log_likelihoods) - trace.log_likelihoods)
    logger.debug(f"Fold {fold}: {train.n} training subjects, {len(trace)} iterations")
    return FoldRun(fold, trace, scores)


def cross_validate(dataset: SurvivalDataset, config: BoostingConfig, folds: int = 10,
                   max_iterations: Optional[int] = None, seed: int = 0,
                   fold_ids: Optional[Sequence[int]] = None, workers: int = 1) -> CriterionHistory:
    """
    Summed cross-validation score of every iteration count and its minimizer.

    Args:
        dataset: Full data
        config: Boosting parameters; its cap is used when max_iterations is None
        folds: Number of folds
        max_iterations: Iterations run on every training fold
        seed: Seed of the fold assignment
        fold_ids: Explicit fold id per subject, replacing the seeded assignment
        workers: Folds run concurrently

    Returns:
        CriterionHistory of the summed scores with per-fold scores attached

    Raises:
        InfeasibleFoldsError: If a training set has no events
    """
    max_iterations = config.max_iterations if max_iterations is None else max_iterations
    if fold_ids is None:
        fold_ids = assign_folds(dataset, folds, seed)
    else:
        fold_ids = np.asarray(fold_ids, dtype=int)
        if fold_ids.shape != (dataset.n,) or fold_ids.min() < 0 or fold_ids.max() >= folds:
            raise InfeasibleFoldsError(f"fold ids must be {dataset.n} integers in 0..{folds - 1}")
        if not training_sets_feasible(dataset, fold_ids, folds):
            raise InfeasibleFoldsError("infeasible folds: a training set loses all events of a stratum")

    full_model = StratifiedPartialLikelihood(dataset)
    logger.info(f"Cross-validating {folds} folds, {max_iterations} iterations each, workers={workers}")
    runs: List[Optional[FoldRun]] = [None] * folds
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        future_to_fold = {
            executor.submit(run_fold, dataset, full_model, fold_ids, k, config, max_iterations): k
            for k in range(folds)
        }
        for future in as_completed(future_to_fold):
            k = future_to_fold[future]
            try:
                runs[k] = future.result()
            except Exception as e:
                logger.error(f"Cross-validation fold {k} failed: {e}")
                raise

    # summed in fold order, independent of completion order
    fold_scores = np.vstack([run.scores for run in runs])
    history = CriterionHistory.from_values("cv", fold_scores.sum(axis=0), fold_scores)
    if history.boundary:
        logger.warning(f"Cross-validation minimum at the iteration cap ({history.best_iteration})")
    logger.info(f"Cross-validation chose {history.best_iteration} iterations")
    return history
