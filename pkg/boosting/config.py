from dataclasses import dataclass
from typing import Optional
from survival_model.errors import ConfigurationError

DEFAULT_RATE = 0.01
DEFAULT_MAX_ITERATIONS = 500


@dataclass(frozen=True)
class BoostingConfig:
    """
    Parameters of the componentwise boosting loop.

    Attributes:
        rate: Step size applied to every damped Newton update
        max_iterations: Iteration cap for every rule except a fixed count
        workers: Threads splitting the per-iteration derivative scan
        snapshot_stride: Store a dense coefficient copy every this many iterations
    """
    rate: float = DEFAULT_RATE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    workers: int = 1
    snapshot_stride: Optional[int] = None

    def __post_init__(self):
        if not self.rate > 0:
            raise ConfigurationError(f"rate must be positive, got {self.rate}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ConfigurationError(f"max_iterations must be a positive integer, got {self.max_iterations}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be at least 1, got {self.workers}")
        if self.snapshot_stride is not None and self.snapshot_stride < 1:
            raise ConfigurationError(f"snapshot_stride must be positive, got {self.snapshot_stride}")
