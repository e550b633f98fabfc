from dataclasses import dataclass
from typing import Any, Optional, Sequence, Tuple
import numpy as np
import pandas as pd
from .errors import SurvivalDataError
from logger_config import get_logger

logger = get_logger("survival_model")


@dataclass(frozen=True, eq=False)
class SurvivalDataset:
    """
    Observed survival data for n subjects split into G strata.

    Attributes:
        time: Observed event or censoring times, shape (n,)
        status: Event indicators (1 = event, 0 = censored), shape (n,)
        stratum: Contiguous stratum ids 0..G-1, shape (n,)
        covariates: Covariate matrix, shape (n, p)
        variable_names: Labels of the p covariates
        stratum_labels: Original stratum label of every id, length G
    """
    time: np.ndarray
    status: np.ndarray
    stratum: np.ndarray
    covariates: np.ndarray
    variable_names: Tuple[str, ...]
    stratum_labels: Tuple[Any, ...]

    @property
    def n(self) -> int:
        return self.time.shape[0]

    @property
    def p(self) -> int:
        return self.covariates.shape[1]

    @property
    def num_strata(self) -> int:
        return len(self.stratum_labels)

    @property
    def num_events(self) -> int:
        return int(self.status.sum())

    def events_per_stratum(self) -> np.ndarray:
        return np.bincount(self.stratum, weights=self.status, minlength=self.num_strata).astype(int)

    def subset(self, indices: Sequence[int]) -> "SurvivalDataset":
        """
        Restrict to a set of subjects, keeping the stratum label mapping.

        Args:
            indices: Subject indices to keep, in the order they should appear

        Returns:
            A new dataset view over the selected subjects
        """
        indices = np.asarray(indices, dtype=int)
        dataset = SurvivalDataset(
            time=self.time[indices],
            status=self.status[indices],
            stratum=self.stratum[indices],
            covariates=self.covariates[indices],
            variable_names=self.variable_names,
            stratum_labels=self.stratum_labels,
        )
        _freeze(dataset)
        return dataset

    def column_subset(self, columns: Sequence[int]) -> "SurvivalDataset":
        columns = np.asarray(columns, dtype=int)
        dataset = SurvivalDataset(
            time=self.time,
            status=self.status,
            stratum=self.stratum,
            covariates=self.covariates[:, columns],
            variable_names=tuple(self.variable_names[c] for c in columns),
            stratum_labels=self.stratum_labels,
        )
        _freeze(dataset)
        return dataset

    def column_index(self, name: str) -> int:
        try:
            return self.variable_names.index(name)
        except ValueError:
            raise SurvivalDataError(f"unknown variable: {name}", column=name) from None

    def fingerprint(self) -> dict:
        return {"n": self.n, "p": self.p, "strata": self.num_strata, "events": self.num_events}

    def __repr__(self):
        return f"<SurvivalDataset(n={self.n}, p={self.p}, strata={self.num_strata}, events={self.num_events})>"


def _freeze(dataset: SurvivalDataset) -> None:
    for array in (dataset.time, dataset.status, dataset.stratum, dataset.covariates):
        array.flags.writeable = False


def _first_bad(mask: np.ndarray) -> Optional[int]:
    bad = np.flatnonzero(mask)
    return int(bad[0]) if bad.size else None


def validate_dataset(time: Sequence[float], status: Sequence[int], covariates,
                     stratum: Optional[Sequence[Any]] = None,
                     variable_names: Optional[Sequence[str]] = None) -> SurvivalDataset:
    """
    Build a validated dataset from raw parallel columns.

    Stratum labels (strings or integers) are mapped to contiguous ids in order of
    first appearance; the mapping is kept in ``stratum_labels``.

    Args:
        time: Observed times, all positive and finite
        status: Event indicators in {0, 1}
        covariates: n x p matrix (a 1-d sequence is read as one covariate)
        stratum: Optional stratum labels; absent means a single stratum
        variable_names: Optional covariate labels, defaults to V1..Vp

    Returns:
        SurvivalDataset satisfying all dataset invariants

    Raises:
        SurvivalDataError: On any length, range or finiteness violation
    """
    try:
        time = np.asarray(time, dtype=float)
        covariates = np.asarray(covariates, dtype=float)
    except (TypeError, ValueError) as e:
        raise SurvivalDataError(f"times and covariates must be numeric: {e}") from None
    if time.ndim != 1 or time.size == 0:
        raise SurvivalDataError("time must be a non-empty 1-d sequence")
    n = time.size

    status_raw = np.asarray(status)
    if status_raw.shape != (n,):
        raise SurvivalDataError(f"length mismatch: {n} times but {status_raw.size} status values")

    if covariates.ndim == 1:
        covariates = covariates.reshape(-1, 1)
    if covariates.ndim != 2 or covariates.shape[0] != n:
        raise SurvivalDataError(f"length mismatch: {n} times but covariates of shape {covariates.shape}")

    if stratum is None:
        stratum_ids, labels = np.zeros(n, dtype=int), (0,)
    else:
        stratum_values = pd.Series(list(stratum))
        if len(stratum_values) != n:
            raise SurvivalDataError(f"length mismatch: {n} times but {len(stratum_values)} stratum labels")
        row = _first_bad(stratum_values.isna().to_numpy())
        if row is not None:
            raise SurvivalDataError(f"missing stratum label at row {row}", row=row, column="stratum")
        codes, uniques = pd.factorize(stratum_values, sort=False)
        stratum_ids = codes.astype(int)
        labels = tuple(v.item() if isinstance(v, np.generic) else v for v in uniques)

    if variable_names is None:
        variable_names = tuple(f"V{j + 1}" for j in range(covariates.shape[1]))
    variable_names = tuple(str(name) for name in variable_names)
    if len(variable_names) != covariates.shape[1]:
        raise SurvivalDataError(
            f"length mismatch: {covariates.shape[1]} covariates but {len(variable_names)} names")
    if len(set(variable_names)) != len(variable_names):
        raise SurvivalDataError("variable names must be distinct")

    row = _first_bad(~np.isfinite(time) | (time <= 0))
    if row is not None:
        raise SurvivalDataError(f"time must be positive and finite, got {time[row]} at row {row}",
                                row=row, column="time")

    try:
        status_float = status_raw.astype(float)
    except (TypeError, ValueError):
        raise SurvivalDataError("status values must be 0 or 1", column="status") from None
    row = _first_bad(~np.isin(status_float, (0.0, 1.0)))
    if row is not None:
        raise SurvivalDataError(f"status must be 0 or 1, got {status_raw[row]} at row {row}",
                                row=row, column="status")
    status_int = status_float.astype(np.int8)
    if status_int.sum() == 0:
        raise SurvivalDataError("no events: at least one status must be 1", column="status")

    bad_rows, bad_cols = np.nonzero(~np.isfinite(covariates))
    if bad_rows.size:
        row, col = int(bad_rows[0]), int(bad_cols[0])
        raise SurvivalDataError(f"non-finite covariate {variable_names[col]} at row {row}",
                                row=row, column=variable_names[col])

    dataset = SurvivalDataset(
        time=time.copy(),
        status=status_int,
        stratum=stratum_ids,
        covariates=np.array(covariates, order="C"),
        variable_names=variable_names,
        stratum_labels=labels,
    )
    _freeze(dataset)
    logger.debug(f"Validated dataset: {dataset!r}")
    return dataset
