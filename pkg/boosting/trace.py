from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple
import numpy as np
import pandas as pd


class StepRecord(NamedTuple):
    """One boosting iteration: the selected variable and the update applied to it."""
    iteration: int
    variable: int
    first_derivative: float
    second_derivative: float
    delta: float
    coefficient: float
    log_likelihood: float
    num_selected: int
    ascent: bool


class BoostingTrace:
    """
    Iteration history of a boosting run.

    Coefficients are kept as sparse update records (the new value of the one
    variable touched per iteration); optional dense snapshots every
    ``snapshot_stride`` iterations shorten reconstruction.
    """

    def __init__(self, num_variables: int, initial_log_likelihood: float,
                 snapshot_stride: Optional[int] = None):
        self.num_variables = num_variables
        self.initial_log_likelihood = initial_log_likelihood
        self.snapshot_stride = snapshot_stride
        self.records: List[StepRecord] = []
        self.selection_counts = np.zeros(num_variables, dtype=int)
        self._snapshots: Dict[int, np.ndarray] = {}

    def append(self, record: StepRecord, beta: np.ndarray) -> None:
        self.records.append(record)
        self.selection_counts[record.variable] += 1
        if self.snapshot_stride and record.iteration % self.snapshot_stride == 0:
            self._snapshots[record.iteration] = beta.copy()

    def __len__(self) -> int:
        return len(self.records)

    @property
    def log_likelihoods(self) -> np.ndarray:
        """Log partial likelihood after iterations 0..m (index 0 is beta = 0)."""
        return np.array([self.initial_log_likelihood] + [r.log_likelihood for r in self.records])

    @property
    def support_sizes(self) -> np.ndarray:
        return np.array([0] + [r.num_selected for r in self.records], dtype=int)

    def beta_at(self, m: int) -> np.ndarray:
        """
        Coefficients after the first m iterations.

        Args:
            m: Iteration count, 0 <= m <= len(self)

        Returns:
            Dense coefficient vector equal to a run stopped after m iterations
        """
        if not 0 <= m <= len(self.records):
            raise IndexError(f"iteration {m} outside 0..{len(self.records)}")
        start = max((s for s in self._snapshots if s <= m), default=0)
        beta = self._snapshots[start].copy() if start else np.zeros(self.num_variables)
        for record in self.records[start:m]:
            beta[record.variable] = record.coefficient
        return beta

    def truncated(self, m: int) -> "BoostingTrace":
        trace = BoostingTrace(self.num_variables, self.initial_log_likelihood, self.snapshot_stride)
        beta = np.zeros(self.num_variables)
        for record in self.records[:m]:
            beta[record.variable] = record.coefficient
            trace.append(record, beta)
        return trace


def selection_frequency(trace: BoostingTrace, variable_names: Optional[Sequence[str]] = None) -> pd.DataFrame:
    """
    Per-variable selection counts and the iteration of first selection.

    Args:
        trace: Recorded boosting trace
        variable_names: Optional labels, defaults to variable indices

    Returns:
        DataFrame with columns variable, count, first_selected (NA if never selected)
    """
    first = np.full(trace.num_variables, -1)
    for record in reversed(trace.records):
        first[record.variable] = record.iteration
    names = list(variable_names) if variable_names is not None else list(range(trace.num_variables))
    frame = pd.DataFrame({
        "variable": names,
        "count": trace.selection_counts.copy(),
        "first_selected": pd.array([int(f) if f > 0 else pd.NA for f in first], dtype="Int64"),
    })
    return frame


def coefficient_path(trace: BoostingTrace) -> Dict[int, List[Tuple[int, float]]]:
    """
    Breakpoints (iteration, new value) of every variable that was ever updated.

    A variable missing from the result stays at 0 for the whole run; between
    breakpoints a coefficient is constant.
    """
    path: Dict[int, List[Tuple[int, float]]] = {}
    for record in trace.records:
        path.setdefault(record.variable, []).append((record.iteration, record.coefficient))
    return path


def path_value(path: Dict[int, List[Tuple[int, float]]], variable: int, m: int) -> float:
    value = 0.0
    for iteration, coefficient in path.get(variable, []):
        if iteration > m:
            break
        value = coefficient
    return value
