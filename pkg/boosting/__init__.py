from .config import BoostingConfig, DEFAULT_MAX_ITERATIONS, DEFAULT_RATE
from .trace import BoostingTrace, StepRecord, coefficient_path, path_value, selection_frequency
from .fit import BoostingFit
from .engine import BoostingState, boost_path, boost_step, initial_state
from .criteria import CriterionContext, CriterionHistory, FitState, aic, bic, criterion_values, ebic, log_binomial
from .stopping_rules import (
    AIC,
    BIC,
    EBIC,
    CriterionRule,
    CrossValidation,
    Fixed,
    LikelihoodChange,
    NumSelected,
    StoppingRule,
    create_stopping_rule,
    likelihood_change_stop,
    register_stopping_rule,
    registered_stopping_rules,
    stopping_rule_from_dict,
)
from .cross_validation import FoldRun, assign_folds, cross_validate, run_fold, training_sets_feasible
from .runner import criterion_minimizing_run, run_boosting

__all__ = [
    "BoostingConfig", "DEFAULT_MAX_ITERATIONS", "DEFAULT_RATE",
    "BoostingTrace", "StepRecord", "coefficient_path", "path_value", "selection_frequency",
    "BoostingFit", "BoostingState", "boost_path", "boost_step", "initial_state",
    "CriterionContext", "CriterionHistory", "FitState", "aic", "bic", "criterion_values", "ebic", "log_binomial",
    "AIC", "BIC", "EBIC", "CriterionRule", "CrossValidation", "Fixed", "LikelihoodChange", "NumSelected",
    "StoppingRule", "create_stopping_rule", "likelihood_change_stop", "register_stopping_rule",
    "registered_stopping_rules",
    "stopping_rule_from_dict",
    "FoldRun", "assign_folds", "cross_validate", "run_fold", "training_sets_feasible",
    "criterion_minimizing_run", "run_boosting",
]
