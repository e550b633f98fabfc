from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from typing import ClassVar, Dict, List, Optional, Type
from survival_model.dataset import SurvivalDataset
from survival_model.errors import ConfigurationError
from .config import BoostingConfig
from .criteria import CriterionContext, FitState, aic, bic, ebic
from .trace import BoostingTrace
from logger_config import get_logger

logger = get_logger("boosting")


class StoppingRule(ABC):
    """
    Base class of the stopping strategies.

    Online rules answer ``check`` after every iteration; criterion rules run to
    the iteration cap and pick the best iteration afterwards.
    """
    name: ClassVar[str] = ""

    def iteration_cap(self, config: BoostingConfig) -> int:
        return config.max_iterations

    def validate_for(self, dataset: SurvivalDataset) -> None:
        """Check rule parameters that depend on the data."""

    def check(self, trace: BoostingTrace, num_selected: int) -> Optional[str]:
        """Return a stop reason once the run should end, otherwise None."""
        return None

    def to_dict(self) -> dict:
        return {"rule": self.name, **asdict(self)}


@dataclass(frozen=True)
class Fixed(StoppingRule):
    name: ClassVar[str] = "fixed"
    iterations: int = 500

    def __post_init__(self):
        if int(self.iterations) != self.iterations or self.iterations < 0:
            raise ConfigurationError(f"iterations must be a non-negative integer, got {self.iterations}")

    def iteration_cap(self, config: BoostingConfig) -> int:
        return self.iterations


@dataclass(frozen=True)
class NumSelected(StoppingRule):
    name: ClassVar[str] = "num-selected"
    target: int = 5

    def __post_init__(self):
        if int(self.target) != self.target or self.target < 1:
            raise ConfigurationError(f"target must be a positive integer, got {self.target}")

    def validate_for(self, dataset: SurvivalDataset) -> None:
        if self.target > dataset.p:
            raise ConfigurationError(f"target {self.target} exceeds the {dataset.p} available variables")

    def check(self, trace: BoostingTrace, num_selected: int) -> Optional[str]:
        if num_selected >= self.target:
            return f"{num_selected} variables selected"
        return None


@dataclass(frozen=True)
class LikelihoodChange(StoppingRule):
    name: ClassVar[str] = "likelihood"
    alpha: float = 0.001

    def __post_init__(self):
        if not self.alpha > 0:
            raise ConfigurationError(f"alpha must be positive, got {self.alpha}")

    def check(self, trace: BoostingTrace, num_selected: int) -> Optional[str]:
        if likelihood_change_stop(trace, self.alpha):
            return f"likelihood gain below {self.alpha}"
        return None


class CriterionRule(StoppingRule):
    """A rule minimizing an information criterion over the iterations of a full run."""

    @abstractmethod
    def criterion(self, context: CriterionContext, state: FitState) -> float:
        pass


@dataclass(frozen=True)
class BIC(CriterionRule):
    name: ClassVar[str] = "bic"

    def criterion(self, context: CriterionContext, state: FitState) -> float:
        return bic(context, state)


@dataclass(frozen=True)
class EBIC(CriterionRule):
    name: ClassVar[str] = "ebic"
    gamma: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ConfigurationError(f"gamma must lie in [0, 1], got {self.gamma}")

    def criterion(self, context: CriterionContext, state: FitState) -> float:
        return ebic(context, state, self.gamma)


@dataclass(frozen=True)
class AIC(CriterionRule):
    name: ClassVar[str] = "aic"

    def criterion(self, context: CriterionContext, state: FitState) -> float:
        return aic(context, state)


@dataclass(frozen=True)
class CrossValidation(StoppingRule):
    """
    k-fold cross-validated choice of the iteration count.

    Attributes:
        folds: Number of folds, at least 2
        max_iterations: Iterations run on every fold; the boosting config cap when None
        seed: Seed of the stratified fold assignment
    """
    name: ClassVar[str] = "cv"
    folds: int = 10
    max_iterations: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if int(self.folds) != self.folds or self.folds < 2:
            raise ConfigurationError(f"folds must be an integer of at least 2, got {self.folds}")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ConfigurationError(f"max_iterations must be positive, got {self.max_iterations}")

    def iteration_cap(self, config: BoostingConfig) -> int:
        return self.max_iterations if self.max_iterations is not None else config.max_iterations

    def validate_for(self, dataset: SurvivalDataset) -> None:
        if self.folds > dataset.n:
            raise ConfigurationError(f"{self.folds} folds for {dataset.n} subjects")


def likelihood_change_stop(trace: BoostingTrace, alpha: float) -> bool:
    """
    True when the log likelihood gain of the latest iteration is below alpha.

    A gain exactly equal to alpha continues the run.
    """
    if len(trace) == 0:
        return False
    current = trace.records[-1].log_likelihood
    previous = trace.records[-2].log_likelihood if len(trace) > 1 else trace.initial_log_likelihood
    return (current - previous) < alpha


_rule_registry: Dict[str, Type[StoppingRule]] = {}


def register_stopping_rule(name: str, rule_class: Type[StoppingRule]) -> None:
    """
    Register a stopping rule class under a name.

    Args:
        name: Name used on the command line and in documents
        rule_class: Rule dataclass, constructed with keyword parameters
    """
    _rule_registry[name.lower()] = rule_class
    logger.debug(f"Registered stopping rule: {name}")


def create_stopping_rule(name: str, **params) -> StoppingRule:
    """
    Create a stopping rule by its registered name.

    Raises:
        ConfigurationError: For an unknown name or invalid parameters
    """
    rule_class = _rule_registry.get(name.lower())
    if rule_class is None:
        registered = ", ".join(_rule_registry.keys())
        raise ConfigurationError(f"Unknown stopping rule: {name}. Registered rules: {registered}")
    try:
        return rule_class(**params)
    except TypeError as e:
        raise ConfigurationError(f"invalid parameters for stopping rule {name}: {e}") from None


def registered_stopping_rules() -> List[str]:
    return sorted(_rule_registry)


def stopping_rule_from_dict(document: dict) -> StoppingRule:
    params = {key: value for key, value in document.items() if key != "rule"}
    return create_stopping_rule(document["rule"], **params)


for _rule in (Fixed, NumSelected, LikelihoodChange, BIC, EBIC, AIC, CrossValidation):
    register_stopping_rule(_rule.name, _rule)
