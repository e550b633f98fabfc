from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union
import numpy as np
from survival_model.errors import ConfigurationError

COVARIANCE_STRUCTURES = ("independent", "ar")
CENSORING_DISTRIBUTIONS = ("uniform", "none")

Baseline = Union[str, Tuple[Tuple[float, float], ...]]


@dataclass(frozen=True)
class SimulationConfig:
    """
    Design of a simulated stratified survival dataset.

    Attributes:
        true_beta: Coefficients generating the event times
        num_strata: Number of strata G
        mean_stratum_size: Poisson mean of every stratum size
        baseline: "auto" or one (shape, scale) Weibull pair per stratum; a single
            pair is shared by all strata. The cumulative baseline hazard is scale * t**shape
        cov_structure: "independent" or "ar" (AR(1) within blocks)
        block_size: Consecutive variables per AR(1) block, the last block may be shorter
        rho: AR(1) correlation of adjacent variables in a block
        censoring: "uniform" on (0, censor_upper) or "none"
        censor_upper: Upper bound of uniform censoring times
        tau: Administrative truncation time, inf for none
        normalized: z-score every covariate column
    """
    true_beta: Tuple[float, ...]
    num_strata: int = 5
    mean_stratum_size: int = 100
    baseline: Baseline = "auto"
    cov_structure: str = "ar"
    block_size: int = 5
    rho: float = 0.6
    censoring: str = "uniform"
    censor_upper: float = 2.0
    tau: float = float("inf")
    normalized: bool = False

    def __post_init__(self):
        beta = tuple(float(b) for b in self.true_beta)
        object.__setattr__(self, "true_beta", beta)
        if not beta or not np.all(np.isfinite(beta)):
            raise ConfigurationError("true_beta must be a non-empty vector of finite values")
        if self.num_strata < 1:
            raise ConfigurationError(f"num_strata must be at least 1, got {self.num_strata}")
        if self.mean_stratum_size < 1:
            raise ConfigurationError(f"mean_stratum_size must be positive, got {self.mean_stratum_size}")
        if self.cov_structure not in COVARIANCE_STRUCTURES:
            raise ConfigurationError(f"cov_structure must be one of {COVARIANCE_STRUCTURES}")
        if self.block_size < 1:
            raise ConfigurationError(f"block_size must be positive, got {self.block_size}")
        if not abs(self.rho) < 1:
            raise ConfigurationError(f"|rho| must be below 1, got {self.rho}")
        if self.censoring not in CENSORING_DISTRIBUTIONS:
            raise ConfigurationError(f"censoring must be one of {CENSORING_DISTRIBUTIONS}")
        if self.censoring == "uniform" and not self.censor_upper > 0:
            raise ConfigurationError(f"censor_upper must be positive, got {self.censor_upper}")
        if not self.tau > 0:
            raise ConfigurationError(f"tau must be positive, got {self.tau}")
        if self.baseline != "auto":
            pairs = tuple((float(shape), float(scale)) for shape, scale in self.baseline)
            if len(pairs) not in (1, self.num_strata):
                raise ConfigurationError(f"{len(pairs)} baseline pairs for {self.num_strata} strata")
            if any(not (shape > 0 and scale > 0) for shape, scale in pairs):
                raise ConfigurationError("Weibull shapes and scales must be positive")
            object.__setattr__(self, "baseline", pairs)

    @property
    def num_variables(self) -> int:
        return len(self.true_beta)

    def baseline_parameters(self) -> List[Tuple[float, float]]:
        """
        (shape, scale) of every stratum.

        "auto" gives shape 3 everywhere and log-scales evenly spaced from -1 to -15.
        """
        if self.baseline == "auto":
            return [(3.0, float(np.exp(s))) for s in np.linspace(-1.0, -15.0, self.num_strata)]
        if len(self.baseline) == 1:
            return list(self.baseline) * self.num_strata
        return list(self.baseline)

    def blocks(self) -> List[Tuple[int, int]]:
        """[start, stop) column ranges of the covariance blocks."""
        if self.cov_structure == "independent":
            return [(j, j + 1) for j in range(self.num_variables)]
        return [(start, min(start + self.block_size, self.num_variables))
                for start in range(0, self.num_variables, self.block_size)]

    def to_dict(self) -> dict:
        return {
            "true_beta": list(self.true_beta),
            "num_strata": self.num_strata,
            "mean_stratum_size": self.mean_stratum_size,
            "baseline": self.baseline if self.baseline == "auto" else [list(pair) for pair in self.baseline],
            "cov_structure": self.cov_structure,
            "block_size": self.block_size,
            "rho": self.rho,
            "censoring": self.censoring,
            "censor_upper": self.censor_upper,
            "tau": None if np.isinf(self.tau) else self.tau,
            "normalized": self.normalized,
        }

    @classmethod
    def from_dict(cls, document: dict) -> "SimulationConfig":
        """
        Build a config from its JSON form; ``tau`` null or absent means no truncation.

        Raises:
            ConfigurationError: For unknown keys or invalid values
        """
        known = set(cls.__dataclass_fields__)
        unknown = set(document) - known
        if unknown:
            raise ConfigurationError(f"unknown simulation settings: {', '.join(sorted(unknown))}")
        if "true_beta" not in document:
            raise ConfigurationError("simulation config requires true_beta")
        params = dict(document)
        if params.get("tau") is None:
            params["tau"] = float("inf")
        if isinstance(params.get("baseline"), Sequence) and not isinstance(params["baseline"], str):
            params["baseline"] = tuple(tuple(pair) for pair in params["baseline"])
        return cls(**params)
