"""
Simulation of stratified proportional hazards data
--------------------------------------------------
Covariates are Gaussian with AR(1) correlation inside blocks of consecutive
variables. Event times follow a Weibull baseline per stratum with cumulative
hazard scale * t**shape, drawn by inverse transform; censoring times are
uniform and an optional administrative time truncates follow-up.

Every random draw comes from a stream keyed by (seed, purpose, stratum), so a
stratum's data does not depend on the order strata are generated in.
"""
from dataclasses import dataclass
from typing import Optional, Tuple
import numpy as np
import pandas as pd
from survival_model.dataset import SurvivalDataset, validate_dataset
from survival_model.errors import SurvivalDataError
from .config import SimulationConfig
from logger_config import get_logger

logger = get_logger("simulation")

STREAM_SIZES, STREAM_COVARIATES, STREAM_EVENTS, STREAM_CENSORING = 0, 1, 2, 3


def _stream(seed: int, purpose: int, stratum: int = 0) -> np.random.Generator:
    return np.random.default_rng([seed, purpose, stratum])


def _draw_covariates(config: SimulationConfig, n: int, rng: np.random.Generator) -> np.ndarray:
    noise = rng.standard_normal((n, config.num_variables))
    if config.cov_structure == "independent" or config.rho == 0:
        return noise
    covariates = np.empty_like(noise)
    innovation = np.sqrt(1.0 - config.rho ** 2)
    for start, stop in config.blocks():
        covariates[:, start] = noise[:, start]
        for j in range(start + 1, stop):
            covariates[:, j] = config.rho * covariates[:, j - 1] + innovation * noise[:, j]
    return covariates


def _zscore(covariates: np.ndarray) -> np.ndarray:
    std = covariates.std(axis=0)
    std[std == 0] = 1.0
    return (covariates - covariates.mean(axis=0)) / std


def gen_covariates(config: SimulationConfig, n: int, seed: int, stratum: int = 0) -> np.ndarray:
    """
    Draw an n x p covariate matrix.

    Args:
        config: Simulation design
        n: Number of rows
        seed: Master seed
        stratum: Stratum whose random stream is used

    Returns:
        Independent rows; within each block Cov(X_a, X_b) = rho**|a - b|
    """
    covariates = _draw_covariates(config, n, _stream(seed, STREAM_COVARIATES, stratum))
    return _zscore(covariates) if config.normalized else covariates


def gen_event_times(config: SimulationConfig, covariates: np.ndarray, strata: np.ndarray, seed: int) -> np.ndarray:
    """
    Latent event times by inverse transform of the stratum's Weibull baseline.

    T = (-log U / (scale * exp(X'beta)))**(1 / shape), with -log U drawn as a
    standard exponential.

    Args:
        config: Simulation design
        covariates: n x p matrix
        strata: Stratum id 0..G-1 of every row
        seed: Master seed

    Returns:
        Latent event times, shape (n,)
    """
    eta = covariates @ np.asarray(config.true_beta)
    times = np.empty(covariates.shape[0])
    for g, (shape, scale) in enumerate(config.baseline_parameters()):
        members = np.flatnonzero(strata == g)
        if members.size == 0:
            continue
        exponential = _stream(seed, STREAM_EVENTS, g).standard_exponential(members.size)
        times[members] = (exponential / (scale * np.exp(eta[members]))) ** (1.0 / shape)
    return times


def apply_censoring(latent_times: np.ndarray, config: SimulationConfig, seed: int,
                    strata: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Observed times and event indicators under uniform censoring and truncation.

    Censoring times are ``censor_upper * U`` with the same uniforms for every
    upper bound, so a smaller bound never censors fewer subjects.

    Args:
        latent_times: Event times before censoring
        config: Simulation design
        seed: Master seed
        strata: Stratum id of every subject, all in one stratum when omitted

    Returns:
        (observed time, status) with status 1 iff the event precedes censoring and tau

    Raises:
        SurvivalDataError: If every subject is censored
    """
    n = latent_times.shape[0]
    strata = np.zeros(n, dtype=int) if strata is None else strata
    if config.censoring == "uniform":
        censor_times = np.empty(n)
        for g in np.unique(strata):
            members = np.flatnonzero(strata == g)
            # 1 - U lies in (0, 1], so no censoring time is 0
            uniforms = 1.0 - _stream(seed, STREAM_CENSORING, int(g)).random(members.size)
            censor_times[members] = config.censor_upper * uniforms
    else:
        censor_times = np.full(n, np.inf)
    limit = np.minimum(censor_times, config.tau)
    status = (latent_times <= limit).astype(np.int8)
    observed = np.minimum(latent_times, limit)
    if status.sum() == 0:
        raise SurvivalDataError(f"no events: all {n} subjects censored (censoring rate 1.0)")
    return observed, status


@dataclass(frozen=True, eq=False)
class SimulatedDataset:
    """
    A simulated dataset with the truth behind it.

    Attributes:
        dataset: The observed data; stratum labels are 1..G
        true_beta: Generating coefficients
        latent_times: Event times before censoring
        censoring_rate: Realized fraction of censored subjects
        config: Design that produced the data
        seed: Master seed
    """
    dataset: SurvivalDataset
    true_beta: np.ndarray
    latent_times: np.ndarray
    censoring_rate: float
    config: SimulationConfig
    seed: int

    def to_frame(self) -> pd.DataFrame:
        """Columns time, status, stratum, V1..Vp."""
        frame = pd.DataFrame({
            "time": self.dataset.time,
            "status": self.dataset.status.astype(int),
            "stratum": [self.dataset.stratum_labels[g] for g in self.dataset.stratum],
        })
        covariates = pd.DataFrame(self.dataset.covariates, columns=list(self.dataset.variable_names))
        return pd.concat([frame, covariates], axis=1)

    def truth_document(self) -> dict:
        return {
            "true_beta": [float(b) for b in self.true_beta],
            "variable_names": list(self.dataset.variable_names),
            "seed": self.seed,
            "censoring_rate": self.censoring_rate,
            "fingerprint": self.dataset.fingerprint(),
            "config": self.config.to_dict(),
        }


def simulate_survival_cox(config: SimulationConfig, seed: int = 0) -> SimulatedDataset:
    """
    Simulate a stratified survival dataset.

    Stratum sizes are Poisson(mean_stratum_size), at least 1.

    Args:
        config: Simulation design
        seed: Master seed; equal seeds give bit-identical data

    Returns:
        SimulatedDataset
    """
    sizes = np.maximum(_stream(seed, STREAM_SIZES).poisson(config.mean_stratum_size, config.num_strata), 1)
    strata = np.repeat(np.arange(config.num_strata), sizes)
    covariates = np.vstack([
        _draw_covariates(config, int(size), _stream(seed, STREAM_COVARIATES, g))
        for g, size in enumerate(sizes)
    ])
    if config.normalized:
        covariates = _zscore(covariates)
    latent = gen_event_times(config, covariates, strata, seed)
    observed, status = apply_censoring(latent, config, seed, strata)
    dataset = validate_dataset(observed, status, covariates, stratum=strata + 1)
    censoring_rate = float(1.0 - status.mean())
    logger.info(f"Simulated {dataset!r} with seed {seed}, censoring rate {censoring_rate:.3f}")
    return SimulatedDataset(
        dataset=dataset,
        true_beta=np.asarray(config.true_beta),
        latent_times=latent,
        censoring_rate=censoring_rate,
        config=config,
        seed=seed,
    )
