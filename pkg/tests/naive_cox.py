"""Risk-set enumeration oracle for the stratified Cox partial likelihood, O(n^2)."""
import numpy as np
from survival_model.dataset import SurvivalDataset, validate_dataset


def risk_set(dataset: SurvivalDataset, i: int) -> np.ndarray:
    return np.array([l for l in range(dataset.n)
                     if dataset.stratum[l] == dataset.stratum[i] and dataset.time[l] >= dataset.time[i]])


def naive_log_likelihood(dataset: SurvivalDataset, beta) -> float:
    eta = dataset.covariates @ np.asarray(beta, dtype=float)
    total = 0.0
    for i in range(dataset.n):
        if dataset.status[i]:
            total += eta[i] - np.log(np.sum(np.exp(eta[risk_set(dataset, i)])))
    return total


def naive_gradient(dataset: SurvivalDataset, beta) -> np.ndarray:
    eta = dataset.covariates @ np.asarray(beta, dtype=float)
    gradient = np.zeros(dataset.p)
    for i in range(dataset.n):
        if dataset.status[i]:
            risk = risk_set(dataset, i)
            weights = np.exp(eta[risk])
            gradient += dataset.covariates[i] - weights @ dataset.covariates[risk] / weights.sum()
    return gradient


def naive_information(dataset: SurvivalDataset, beta) -> np.ndarray:
    """Negative Hessian; its diagonal holds the second derivatives L2(j)."""
    eta = dataset.covariates @ np.asarray(beta, dtype=float)
    info = np.zeros((dataset.p, dataset.p))
    for i in range(dataset.n):
        if dataset.status[i]:
            risk = risk_set(dataset, i)
            weights = np.exp(eta[risk]) / np.exp(eta[risk]).sum()
            x = dataset.covariates[risk]
            mean = weights @ x
            info += (x * weights[:, None]).T @ x - np.outer(mean, mean)
    return info


def random_dataset(rng: np.random.Generator, n: int, p: int, strata: int) -> SurvivalDataset:
    """Small dataset with tied times, censoring and at least one event."""
    time = np.round(rng.exponential(size=n), 1) + 0.1
    status = (rng.random(n) < 0.7).astype(int)
    status[0] = 1
    covariates = rng.standard_normal((n, p))
    stratum = rng.integers(0, strata, size=n)
    return validate_dataset(time, status, covariates, stratum=stratum)


def three_subject_dataset() -> SurvivalDataset:
    """(T=3, event, x=1), (T=2, event, x=0), (T=1, censored, x=2)."""
    return validate_dataset([3.0, 2.0, 1.0], [1, 1, 0], [[1.0], [0.0], [2.0]])
