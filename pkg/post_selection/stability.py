from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import List, Optional, Tuple
import numpy as np
import pandas as pd
from tqdm import tqdm
from boosting.config import BoostingConfig
from boosting.runner import run_boosting
from boosting.stopping_rules import StoppingRule
from survival_model.dataset import SurvivalDataset
from survival_model.errors import ConfigurationError, InfeasibleSubsampleError
from logger_config import get_logger

logger = get_logger("post_selection")

DEFAULT_SUBSAMPLES = 50
DEFAULT_THRESHOLD = 0.5
MAX_SUBSAMPLE_ATTEMPTS = 5


@dataclass(frozen=True, eq=False)
class StabilityResult:
    """
    Selection frequency of every variable over boosting fits on half-subsamples.

    Attributes:
        variable_names: Labels of the variables
        frequencies: Fraction of subsample fits selecting each variable
        threshold: Minimum frequency of a stable variable
        num_subsamples: B
        seed: Seed of the subsample draws
    """
    variable_names: Tuple[str, ...]
    frequencies: np.ndarray
    threshold: float
    num_subsamples: int
    seed: int

    @property
    def stable(self) -> np.ndarray:
        return np.flatnonzero(self.frequencies >= self.threshold)

    @property
    def stable_variables(self) -> List[str]:
        return [self.variable_names[j] for j in self.stable]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "variable": list(self.variable_names),
            "frequency": self.frequencies,
            "stable": self.frequencies >= self.threshold,
        })

    def to_dict(self) -> dict:
        return {
            "subsamples": self.num_subsamples,
            "threshold": self.threshold,
            "seed": self.seed,
            "frequencies": {name: float(f) for name, f in zip(self.variable_names, self.frequencies)},
            "stable": self.stable_variables,
        }


def stratum_allocation(dataset: SurvivalDataset) -> np.ndarray:
    """
    Subjects drawn from every stratum for a subsample of n // 2.

    Each stratum gets the floor of its proportional share; the remaining
    subjects go to the largest fractional shares, earlier strata first on ties.
    """
    sizes = np.bincount(dataset.stratum, minlength=dataset.num_strata)
    total = dataset.n // 2
    shares = sizes * total / dataset.n
    allocation = np.floor(shares).astype(int)
    remainder = total - int(allocation.sum())
    order = np.argsort(-(shares - allocation), kind="stable")
    allocation[order[:remainder]] += 1
    return allocation


def draw_subsample(dataset: SurvivalDataset, seed: int, subsample: int) -> np.ndarray:
    """
    n // 2 subjects drawn without replacement, spread over the strata in proportion to their sizes.

    Redraws until every retained stratum that has events keeps at least one of them.

    Returns:
        Sorted subject indices

    Raises:
        InfeasibleSubsampleError: If no attempt keeps the events
    """
    allocation = stratum_allocation(dataset)
    members = [np.flatnonzero(dataset.stratum == g) for g in range(dataset.num_strata)]
    retained = (dataset.events_per_stratum() > 0) & (allocation > 0)
    for attempt in range(MAX_SUBSAMPLE_ATTEMPTS):
        rng = np.random.default_rng([seed, subsample, attempt])
        chosen = [rng.choice(m, size=size, replace=False) for m, size in zip(members, allocation)]
        covered = all(dataset.status[c].sum() > 0 for c, keep in zip(chosen, retained) if keep)
        indices = np.sort(np.concatenate(chosen))
        if covered and dataset.status[indices].sum() > 0:
            return indices
        logger.debug(f"Subsample {subsample} attempt {attempt} lost the events of a stratum; redrawing")
    raise InfeasibleSubsampleError(
        f"subsample {subsample} lacks events in a retained stratum after {MAX_SUBSAMPLE_ATTEMPTS} draws")


def _selected_on_subsample(dataset: SurvivalDataset, indices: np.ndarray, config: BoostingConfig,
                           stopping_rule: Optional[StoppingRule]) -> np.ndarray:
    fit = run_boosting(dataset.subset(indices), config, stopping_rule)
    return fit.beta != 0


def stability_selection(dataset: SurvivalDataset, config: Optional[BoostingConfig] = None,
                        stopping_rule: Optional[StoppingRule] = None,
                        subsamples: int = DEFAULT_SUBSAMPLES, threshold: float = DEFAULT_THRESHOLD,
                        seed: int = 0, workers: int = 1, progress: bool = False) -> StabilityResult:
    """
    Fit boosting on B stratified half-subsamples and count how often each variable is selected.

    Args:
        dataset: Full data
        config: Boosting parameters of every subsample fit
        stopping_rule: Stopping rule of every subsample fit
        subsamples: Number of subsamples B
        threshold: Minimum selection frequency of a stable variable
        seed: Seed of the subsample draws
        workers: Subsample fits run concurrently
        progress: Show a progress bar

    Returns:
        StabilityResult
    """
    if subsamples < 1:
        raise ConfigurationError(f"subsamples must be at least 1, got {subsamples}")
    config = config or BoostingConfig()
    draws = [draw_subsample(dataset, seed, b) for b in range(subsamples)]
    counts = np.zeros(dataset.p, dtype=int)
    logger.info(f"Stability selection: {subsamples} subsamples of {dataset!r}, workers={workers}")
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        future_to_subsample = {
            executor.submit(_selected_on_subsample, dataset, indices, config, stopping_rule): b
            for b, indices in enumerate(draws)
        }
        for future in tqdm(as_completed(future_to_subsample), total=subsamples,
                           desc="subsamples", disable=not progress):
            b = future_to_subsample[future]
            try:
                counts += future.result()
            except Exception as e:
                logger.error(f"Boosting failed on subsample {b}: {e}")
                raise
    result = StabilityResult(
        variable_names=dataset.variable_names,
        frequencies=counts / subsamples,
        threshold=threshold,
        num_subsamples=subsamples,
        seed=seed,
    )
    logger.info(f"Stable variables at threshold {threshold}: {result.stable_variables}")
    return result
