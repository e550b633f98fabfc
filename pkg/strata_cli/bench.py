"""
Per-iteration scaling benchmark
-------------------------------
Times boosting iterations on simulated data while n, then p, is doubled.
With linear cost per iteration the ratio between neighbouring grid points
stays near 2.
"""
from time import perf_counter
from typing import List, NamedTuple, Optional, Tuple
import numpy as np
import pandas as pd
from boosting.config import BoostingConfig
from boosting.engine import boost_path
from simulation.config import SimulationConfig
from simulation.simulator import simulate_survival_cox
from survival_model.dataset import SurvivalDataset
from survival_model.partial_likelihood import StratifiedPartialLikelihood
from logger_config import get_logger

logger = get_logger("strata_cli")

BENCH_STRATA = 5
BENCH_SIGNALS = 5


class BenchPoint(NamedTuple):
    axis: str
    n: int
    p: int
    seconds_per_iteration: float
    ratio: Optional[float]


def bench_dataset(n: int, p: int, seed: int) -> SurvivalDataset:
    """Five strata of independent normal covariates with five signals of 0.5."""
    true_beta = np.zeros(p)
    true_beta[:min(BENCH_SIGNALS, p)] = 0.5
    config = SimulationConfig(
        true_beta=tuple(true_beta),
        num_strata=BENCH_STRATA,
        mean_stratum_size=max(1, n // BENCH_STRATA),
        baseline=((1.0, 1.0),),
        cov_structure="independent",
        censor_upper=2.0,
    )
    return simulate_survival_cox(config, seed).dataset


def iteration_timings(dataset: SurvivalDataset, config: BoostingConfig, iterations: int) -> np.ndarray:
    """Wall time of every boosting iteration, excluding model setup."""
    model = StratifiedPartialLikelihood(dataset, workers=config.workers)
    stamps = [perf_counter()]
    boost_path(model, config, iterations, on_step=lambda record: stamps.append(perf_counter()))
    return np.diff(stamps)


def run_bench(n: int = 500, p: int = 250, doublings: int = 2, iterations: int = 50, repeats: int = 1,
              rate: float = 0.01, seed: int = 0, workers: int = 1) -> Tuple[List[BenchPoint], pd.DataFrame]:
    """
    Time boosting over n, 2n, 4n, ... at fixed p and over p, 2p, 4p, ... at fixed n.

    Returns:
        One BenchPoint per grid point, with the ratio of its mean iteration time
        to the previous point on the same axis, and the table of every timed iteration
    """
    config = BoostingConfig(rate=rate, max_iterations=iterations, workers=workers)
    grid = [("n", n * 2 ** k, p) for k in range(doublings + 1)] + [("p", n, p * 2 ** k) for k in range(doublings + 1)]
    points: List[BenchPoint] = []
    rows = []
    for axis, size_n, size_p in grid:
        dataset = bench_dataset(size_n, size_p, seed)
        timings = []
        for repeat in range(repeats):
            seconds = iteration_timings(dataset, config, iterations)
            timings.append(seconds)
            rows.extend({"axis": axis, "n": dataset.n, "p": dataset.p, "repeat": repeat,
                         "iteration": m + 1, "seconds": float(s)} for m, s in enumerate(seconds))
        mean = float(np.mean(np.concatenate(timings)))
        previous = points[-1] if points and points[-1].axis == axis else None
        ratio = mean / previous.seconds_per_iteration if previous and previous.seconds_per_iteration > 0 else None
        points.append(BenchPoint(axis, dataset.n, dataset.p, mean, ratio))
        logger.info(f"bench {axis}: n={dataset.n}, p={dataset.p}, {mean * 1e3:.3f} ms/iteration, ratio {ratio}")
    return points, pd.DataFrame(rows, columns=["axis", "n", "p", "repeat", "iteration", "seconds"])
