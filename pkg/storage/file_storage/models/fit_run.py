from typing import NamedTuple
from datetime import datetime
from ...documents import FitDocument


class FileFitRun(NamedTuple):
    """File-based storage record of a fit document."""
    name: str
    path: str
    created_at: datetime
    document: FitDocument
