from dataclasses import dataclass
from typing import Tuple
import numpy as np
from .dataset import SurvivalDataset


@dataclass(frozen=True, eq=False)
class StratumIndex:
    """
    Per-stratum orderings of subjects by descending time.

    For position k of stratum g, the risk set of the subject at that position is
    ``orderings[g][:risk_ends[g][k] + 1]``: every subject of the stratum whose time
    is at least as large, tied subjects included.

    Attributes:
        orderings: Subject indices of each stratum sorted by time, descending (stable)
        risk_ends: Last ordered position sharing each position's time
        event_positions: Ordered positions holding events
    """
    orderings: Tuple[np.ndarray, ...]
    risk_ends: Tuple[np.ndarray, ...]
    event_positions: Tuple[np.ndarray, ...]

    @property
    def num_strata(self) -> int:
        return len(self.orderings)

    def locate(self, subject: int) -> Tuple[int, int]:
        """Return (stratum, ordered position) of a subject."""
        for g, order in enumerate(self.orderings):
            hits = np.flatnonzero(order == subject)
            if hits.size:
                return g, int(hits[0])
        raise IndexError(f"subject {subject} is not indexed")

    def risk_set(self, subject: int) -> np.ndarray:
        """Subject indices of the risk set at the given subject's time."""
        g, position = self.locate(subject)
        return self.orderings[g][:self.risk_ends[g][position] + 1]


def build_stratum_index(dataset: SurvivalDataset) -> StratumIndex:
    """
    Sort every stratum by descending time.

    Args:
        dataset: Validated survival dataset

    Returns:
        StratumIndex; ties keep the original subject order
    """
    orderings, risk_ends, event_positions = [], [], []
    for g in range(dataset.num_strata):
        members = np.flatnonzero(dataset.stratum == g)
        order = members[np.argsort(-dataset.time[members], kind="stable")]
        descending = dataset.time[order]
        # number of subjects with time >= t, minus one
        ends = np.searchsorted(-descending, -descending, side="right") - 1
        for array in (order, ends):
            array.flags.writeable = False
        events = np.flatnonzero(dataset.status[order] == 1)
        events.flags.writeable = False
        orderings.append(order)
        risk_ends.append(ends)
        event_positions.append(events)
    return StratumIndex(tuple(orderings), tuple(risk_ends), tuple(event_positions))
