from dataclasses import dataclass, field
from typing import Any, List, NamedTuple, Optional, Sequence
import numpy as np
import pandas as pd
from survival_model.errors import SurvivalDataError
from logger_config import get_logger

logger = get_logger("post_selection")

MAX_CATEGORICAL_LEVELS = 20


class GroupSummary(NamedTuple):
    """Five-number summary of survival times in one group."""
    label: Any
    count: int
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float


@dataclass(frozen=True)
class StrataSummary:
    """
    Survival time distribution per level of a candidate stratification variable.

    Attributes:
        grouping: "categorical" (one group per level) or "median" (split at the median)
        groups: One summary per group
        split_value: Median used by a median split
        degenerate: True when a median split left one side empty
    """
    grouping: str
    groups: List[GroupSummary] = field(default_factory=list)
    split_value: Optional[float] = None
    degenerate: bool = False

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([g._asdict() for g in self.groups],
                            columns=list(GroupSummary._fields))

    def to_dict(self) -> dict:
        return {
            "grouping": self.grouping,
            "split_value": self.split_value,
            "degenerate": self.degenerate,
            "groups": [g._asdict() for g in self.groups],
        }


def _plain(value: Any) -> Any:
    return value.item() if isinstance(value, np.generic) else value


def five_number_summary(label: Any, times: np.ndarray) -> GroupSummary:
    q = np.quantile(times, [0.0, 0.25, 0.5, 0.75, 1.0], method="linear")
    return GroupSummary(_plain(label), int(times.size), *(float(v) for v in q))


def strata_summary(values: Sequence[Any], times: Sequence[float]) -> StrataSummary:
    """
    Summarize survival times by a candidate stratification variable.

    A variable with at most 20 distinct values, or any non-numeric variable, is
    treated as categorical; otherwise subjects are split at the median into
    "<= median" and "> median".

    Args:
        values: Candidate variable, one value per subject
        times: Survival or censoring times

    Returns:
        StrataSummary; a median split with an empty side comes back as one group
        flagged degenerate
    """
    values = pd.Series(list(values))
    times = np.asarray(times, dtype=float)
    if len(values) != times.size:
        raise SurvivalDataError(f"length mismatch: {len(values)} values but {times.size} times")
    if times.size == 0:
        raise SurvivalDataError("no subjects to summarize")
    if np.any(~np.isfinite(times) | (times <= 0)):
        raise SurvivalDataError("times must be positive and finite", column="time")

    numeric = pd.to_numeric(values, errors="coerce")
    is_numeric = not numeric.isna().any()
    if not is_numeric or numeric.nunique() <= MAX_CATEGORICAL_LEVELS:
        levels = sorted(values.unique(), key=lambda v: (float(v), str(v)) if is_numeric else (0.0, str(v)))
        groups = [five_number_summary(level, times[(values == level).to_numpy()]) for level in levels]
        return StrataSummary("categorical", groups)

    split = float(numeric.median())
    low = (numeric <= split).to_numpy()
    sides = [(f"<= {split:g}", low), (f"> {split:g}", ~low)]
    groups = [five_number_summary(label, times[mask]) for label, mask in sides if mask.any()]
    degenerate = len(groups) < 2
    if degenerate:
        logger.warning(f"Median split at {split:g} left one group empty")
    return StrataSummary("median", groups, split_value=split, degenerate=degenerate)
