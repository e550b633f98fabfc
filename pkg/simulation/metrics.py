from typing import NamedTuple, Sequence
import numpy as np
from survival_model.errors import SurvivalDataError


class SelectionMetrics(NamedTuple):
    """Variable selection quality of an estimate against the generating coefficients."""
    sensitivity: float
    specificity: float
    fdr: float
    sse: float
    true_positives: int
    false_positives: int
    num_selected: int

    def to_dict(self) -> dict:
        return {
            "se": self.sensitivity,
            "sp": self.specificity,
            "fdr": self.fdr,
            "sse": self.sse,
            "true_positives": self.true_positives,
            "false_positives": self.false_positives,
            "num_selected": self.num_selected,
        }


def selection_metrics(estimated_beta: Sequence[float], true_beta: Sequence[float]) -> SelectionMetrics:
    """
    Sensitivity, specificity, false discovery rate and squared error of a selection.

    A design without true signals has sensitivity 1, one without nulls has
    specificity 1. The FDR denominator is max(1, number selected).

    Args:
        estimated_beta: Fitted coefficients, nonzero entries are selected
        true_beta: Generating coefficients, nonzero entries are signals

    Returns:
        SelectionMetrics; sse is the sum (not the mean) of squared errors
    """
    estimated = np.asarray(estimated_beta, dtype=float)
    truth = np.asarray(true_beta, dtype=float)
    if estimated.shape != truth.shape:
        raise SurvivalDataError(f"length mismatch: {estimated.size} estimates for {truth.size} true coefficients")
    selected = estimated != 0
    signal = truth != 0
    true_positives = int(np.sum(selected & signal))
    false_positives = int(np.sum(selected & ~signal))
    true_negatives = int(np.sum(~selected & ~signal))
    num_signals, num_nulls = int(signal.sum()), int((~signal).sum())
    return SelectionMetrics(
        sensitivity=true_positives / num_signals if num_signals else 1.0,
        specificity=true_negatives / num_nulls if num_nulls else 1.0,
        fdr=false_positives / max(1, int(selected.sum())),
        sse=float(np.sum((estimated - truth) ** 2)),
        true_positives=true_positives,
        false_positives=false_positives,
        num_selected=int(selected.sum()),
    )
