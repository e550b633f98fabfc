"""
Stratified Cox partial likelihood
---------------------------------
Log partial likelihood of the stratified proportional hazards model and its
first and second partial derivatives.

Every stratum is swept once in descending time order: risk-set sums are prefix
sums along that ordering, so the likelihood costs O(n) and the full gradient
O(n * p) for a given linear predictor. Tied times share the risk set of their
whole tie group (Breslow).
"""
from concurrent.futures import ThreadPoolExecutor
from typing import List, NamedTuple, Optional, Sequence
import numpy as np
from .dataset import SurvivalDataset
from .errors import NumericalError, SurvivalDataError
from .stratum_index import StratumIndex, build_stratum_index

# Largest rise of the weight shift inside one prefix-sum segment; exp(300) leaves
# ample headroom before overflow.
SHIFT_SPAN = 300.0


class ScoreStatistics(NamedTuple):
    """
    Risk-set sums of one (subject, variable) pair.

    The true sums are ``s_k * exp(shift)``; shift is the largest linear
    predictor in the risk set.
    """
    s0: float
    s1: float
    s2: float
    shift: float


class _StratumBlock(NamedTuple):
    order: np.ndarray
    event_positions: np.ndarray
    event_ends: np.ndarray
    covariates: np.ndarray


class StratifiedPartialLikelihood:
    """Partial likelihood of one dataset with precomputed per-stratum orderings."""

    def __init__(self, dataset: SurvivalDataset, index: Optional[StratumIndex] = None, workers: int = 1):
        """
        Args:
            dataset: Validated survival dataset
            index: Stratum index of the dataset, built when omitted
            workers: Threads used to split the variables of a gradient scan
        """
        self.dataset = dataset
        self.index = index if index is not None else build_stratum_index(dataset)
        self.workers = max(1, int(workers))
        self._blocks: List[_StratumBlock] = []
        for order, ends, events in zip(self.index.orderings, self.index.risk_ends, self.index.event_positions):
            if events.size == 0:
                continue
            self._blocks.append(_StratumBlock(
                order=order,
                event_positions=events,
                event_ends=ends[events],
                covariates=dataset.covariates[order],
            ))
        self._event_covariate_sum = dataset.covariates[dataset.status == 1].sum(axis=0)

    @property
    def num_variables(self) -> int:
        return self.dataset.p

    def linear_predictor(self, beta: np.ndarray) -> np.ndarray:
        return linear_predictor(self.dataset, beta)

    def log_likelihood(self, eta: np.ndarray) -> float:
        """Log partial likelihood at linear predictor eta."""
        total = 0.0
        for block in self._blocks:
            eta_sorted = eta[block.order]
            # running log-sum-exp down the descending ordering
            log_risk = np.logaddexp.accumulate(eta_sorted)
            total += float(np.sum(eta_sorted[block.event_positions] - log_risk[block.event_ends]))
        if not np.isfinite(total):
            raise NumericalError("log partial likelihood is not finite")
        return total

    def _prefix_sums(self, block: _StratumBlock, eta: np.ndarray, values: Sequence[Optional[np.ndarray]]):
        """
        Risk-set sums of exp(eta) * value at every event, together with S0.

        The ordering is cut into segments whose running maximum of eta stays
        within SHIFT_SPAN of the segment's first maximum. Weights inside a
        segment are shifted by that maximum and the carried prefix is rescaled
        at each cut, so S0 >= 1 at every event whatever the spread of eta.
        """
        eta_sorted = eta[block.order]
        running_max = np.maximum.accumulate(eta_sorted)
        starts = [0]
        while True:
            cut = int(np.searchsorted(running_max, running_max[starts[-1]] + SHIFT_SPAN, side="right"))
            if cut >= running_max.size:
                break
            starts.append(cut)
        stops = starts[1:] + [running_max.size]
        shift = np.repeat(running_max[starts], np.subtract(stops, starts))
        weights = np.exp(eta_sorted - shift)

        sums = []
        for value in (None, *values):
            weighted = weights if value is None else value * weights.reshape((-1,) + (1,) * (value.ndim - 1))
            if len(starts) == 1:
                sums.append(np.cumsum(weighted, axis=0)[block.event_ends])
                continue
            prefix = np.empty_like(weighted)
            carry = 0.0
            for start, stop in zip(starts, stops):
                rescale = np.exp(shift[start - 1] - shift[start]) if start else 0.0
                prefix[start:stop] = np.cumsum(weighted[start:stop], axis=0) + carry * rescale
                carry = prefix[stop - 1]
            sums.append(prefix[block.event_ends])
        s0 = sums[0]
        if not np.all(s0 > 0):
            raise NumericalError("risk-set sum underflowed")
        return s0, sums[1:]

    def _mean_sum(self, eta: np.ndarray, columns: Optional[np.ndarray]) -> np.ndarray:
        """Sum over events of the risk-set weighted covariate means."""
        width = self.dataset.p if columns is None else len(columns)
        total = np.zeros(width)
        for block in self._blocks:
            x = block.covariates if columns is None else block.covariates[:, columns]
            s0, (s1,) = self._prefix_sums(block, eta, [x])
            total += (s1 / s0[:, None]).sum(axis=0)
        return total

    def gradient(self, eta: np.ndarray, columns: Optional[Sequence[int]] = None) -> np.ndarray:
        """
        First partial derivatives L1(j) for all (or the given) variables.

        Args:
            eta: Linear predictor consistent with the current coefficients
            columns: Optional subset of variable indices

        Returns:
            Vector of L1 values in the order of ``columns``
        """
        columns = None if columns is None else np.asarray(columns, dtype=int)
        event_sum = self._event_covariate_sum if columns is None else self._event_covariate_sum[columns]
        width = event_sum.size
        # chunks of a single column would switch numpy to pairwise summation
        if self.workers == 1 or width < 2 * self.workers:
            mean_sum = self._mean_sum(eta, columns)
        else:
            all_columns = np.arange(self.dataset.p) if columns is None else columns
            chunks = np.array_split(all_columns, self.workers)
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                parts = list(executor.map(lambda chunk: self._mean_sum(eta, chunk), chunks))
            mean_sum = np.concatenate(parts)
        gradient = event_sum - mean_sum
        _check_finite(gradient, "first derivative")
        return gradient

    def first_derivative(self, eta: np.ndarray, j: int) -> float:
        return float(self.gradient(eta, [j])[0])

    def second_derivative(self, eta: np.ndarray, j: int) -> float:
        """L2(j): sum over events of the risk-set weighted variance of covariate j."""
        total = 0.0
        for block in self._blocks:
            x = block.covariates[:, j]
            s0, (s1, s2) = self._prefix_sums(block, eta, [x, x * x])
            mean = s1 / s0
            total += float(np.sum(np.maximum(s2 / s0 - mean * mean, 0.0)))
        if not np.isfinite(total):
            raise NumericalError("second derivative is not finite")
        return total

    def information_matrix(self, eta: np.ndarray, support: Sequence[int]) -> np.ndarray:
        """
        Negative Hessian of the log partial likelihood over a support set.

        Entry (a, b) sums, over events, S2(a, b)/S0 - S1(a) S1(b) / S0^2.
        """
        support = np.asarray(support, dtype=int)
        info = np.zeros((support.size, support.size))
        for block in self._blocks:
            x = block.covariates[:, support]
            s0, (s1, s2) = self._prefix_sums(block, eta, [x, x[:, :, None] * x[:, None, :]])
            s1 = s1 / s0[:, None]
            s2 = s2 / s0[:, None, None]
            info += (s2 - s1[:, :, None] * s1[:, None, :]).sum(axis=0)
        _check_finite(info, "information matrix")
        return (info + info.T) / 2.0

    def score_statistics(self, eta: np.ndarray, subject: int, j: int) -> ScoreStatistics:
        risk = self.index.risk_set(subject)
        eta_risk = eta[risk]
        shift = float(eta_risk.max())
        weights = np.exp(eta_risk - shift)
        x = self.dataset.covariates[risk, j]
        return ScoreStatistics(
            s0=float(weights.sum()),
            s1=float(np.sum(x * weights)),
            s2=float(np.sum(x * x * weights)),
            shift=shift,
        )


def _check_finite(values: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(values)):
        raise NumericalError(f"{what} is not finite (overflow)")


def linear_predictor(dataset: SurvivalDataset, beta: Sequence[float]) -> np.ndarray:
    """eta_i = sum_j beta_j X_ij."""
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (dataset.p,):
        raise SurvivalDataError(f"beta has length {beta.size}, dataset has {dataset.p} covariates")
    eta = dataset.covariates @ beta
    _check_finite(eta, "linear predictor")
    return eta


def update_linear_predictor(eta: np.ndarray, dataset: SurvivalDataset, j: int, delta: float) -> np.ndarray:
    """Return eta after beta_j changes by delta."""
    updated = eta + delta * dataset.covariates[:, j]
    _check_finite(updated, "linear predictor")
    return updated


def log_partial_likelihood(dataset: SurvivalDataset, index: Optional[StratumIndex], beta: Sequence[float]) -> float:
    model = StratifiedPartialLikelihood(dataset, index)
    return model.log_likelihood(model.linear_predictor(np.asarray(beta, dtype=float)))


def first_derivative(dataset: SurvivalDataset, index: Optional[StratumIndex], eta: np.ndarray, j: int) -> float:
    return StratifiedPartialLikelihood(dataset, index).first_derivative(eta, j)


def first_derivative_all(dataset: SurvivalDataset, index: Optional[StratumIndex], eta: np.ndarray,
                         workers: int = 1) -> np.ndarray:
    return StratifiedPartialLikelihood(dataset, index, workers=workers).gradient(eta)


def second_derivative(dataset: SurvivalDataset, index: Optional[StratumIndex], eta: np.ndarray, j: int) -> float:
    return StratifiedPartialLikelihood(dataset, index).second_derivative(eta, j)


def information_matrix(dataset: SurvivalDataset, index: Optional[StratumIndex], eta: np.ndarray,
                       support: Sequence[int]) -> np.ndarray:
    return StratifiedPartialLikelihood(dataset, index).information_matrix(eta, support)


def score_statistics(dataset: SurvivalDataset, index: Optional[StratumIndex], eta: np.ndarray,
                     subject: int, j: int) -> ScoreStatistics:
    return StratifiedPartialLikelihood(dataset, index).score_statistics(eta, subject, j)
