from typing import Optional, Union
from survival_model.dataset import SurvivalDataset
from survival_model.errors import ConfigurationError
from survival_model.partial_likelihood import StratifiedPartialLikelihood
from survival_model.stratum_index import StratumIndex
from .config import BoostingConfig
from .criteria import CriterionContext, CriterionHistory, criterion_values
from .cross_validation import cross_validate
from .engine import boost_path
from .fit import BoostingFit
from .stopping_rules import CriterionRule, CrossValidation, Fixed, StoppingRule, create_stopping_rule
from logger_config import get_logger

logger = get_logger("boosting")


def run_boosting(dataset: SurvivalDataset, config: Optional[BoostingConfig] = None,
                 stopping_rule: Optional[StoppingRule] = None,
                 index: Optional[StratumIndex] = None) -> BoostingFit:
    """
    Fit the stratified Cox model by componentwise boosting from beta = 0.

    Args:
        dataset: Validated training data
        config: Step size and iteration cap, defaults to BoostingConfig()
        stopping_rule: When to stop, defaults to Fixed(config.max_iterations)
        index: Precomputed stratum index of the dataset

    Returns:
        BoostingFit with the coefficients, trace and stop reason

    Raises:
        ConfigurationError: If the rule does not fit the data
        NumericalError: If a boosting step fails
    """
    config = config or BoostingConfig()
    stopping_rule = stopping_rule or Fixed(config.max_iterations)
    stopping_rule.validate_for(dataset)
    logger.info(f"Boosting {dataset!r} with rule {stopping_rule.to_dict()}, rate {config.rate}")

    if isinstance(stopping_rule, CriterionRule):
        return criterion_minimizing_run(dataset, config, stopping_rule, index=index)
    if isinstance(stopping_rule, CrossValidation):
        return _cross_validated_run(dataset, config, stopping_rule, index=index)

    model = StratifiedPartialLikelihood(dataset, index, workers=config.workers)
    cap = stopping_rule.iteration_cap(config)
    state, trace, reason = boost_path(
        model, config, cap,
        stop_check=lambda trace, state: stopping_rule.check(trace, state.num_selected),
    )
    if isinstance(stopping_rule, Fixed):
        reason = f"fixed iteration count {cap} reached"
    else:
        if len(trace) == cap and reason == "iteration cap reached":
            logger.warning(f"Rule '{stopping_rule.name}' did not stop before the cap of {cap} iterations")
    logger.info(f"Stopped after {state.iteration} iterations: {reason}")
    return BoostingFit(
        beta=state.beta,
        variable_names=dataset.variable_names,
        iterations_run=state.iteration,
        stopping_rule=stopping_rule,
        stop_reason=reason,
        trace=trace,
        log_likelihood=state.log_likelihood,
        rate=config.rate,
        num_subjects=dataset.n,
        num_events=dataset.num_events,
    )


def criterion_minimizing_run(dataset: SurvivalDataset, config: BoostingConfig,
                             criterion: Union[CriterionRule, str],
                             index: Optional[StratumIndex] = None) -> BoostingFit:
    """
    Run to the iteration cap and keep the iterate minimizing an information criterion.

    Args:
        dataset: Validated training data
        config: Step size and iteration cap
        criterion: BIC, EBIC or AIC rule, or its registered name

    Returns:
        Fit reconstructed at the first minimizing iteration, with the criterion history
    """
    rule = create_stopping_rule(criterion) if isinstance(criterion, str) else criterion
    if not isinstance(rule, CriterionRule):
        raise ConfigurationError(f"'{rule.name}' is not an information criterion")
    model = StratifiedPartialLikelihood(dataset, index, workers=config.workers)
    _, trace, _ = boost_path(model, config, config.max_iterations)
    context = CriterionContext(dataset.num_events, dataset.p, trace.initial_log_likelihood)
    history = CriterionHistory.from_values(rule.name, criterion_values(trace, context, rule.criterion))
    best = history.best_iteration
    if history.boundary:
        logger.warning(f"{rule.name.upper()} minimum at the iteration cap ({best})")
    logger.info(f"{rule.name.upper()} minimized at iteration {best} of {len(trace)}")
    return BoostingFit(
        beta=trace.beta_at(best),
        variable_names=dataset.variable_names,
        iterations_run=best,
        stopping_rule=rule,
        stop_reason=f"minimum {rule.name} at iteration {best}",
        trace=trace.truncated(best),
        log_likelihood=float(trace.log_likelihoods[best]),
        rate=config.rate,
        num_subjects=dataset.n,
        num_events=dataset.num_events,
        criterion_history=history,
    )


def _cross_validated_run(dataset: SurvivalDataset, config: BoostingConfig, rule: CrossValidation,
                         index: Optional[StratumIndex] = None) -> BoostingFit:
    history = cross_validate(dataset, config, folds=rule.folds, max_iterations=rule.iteration_cap(config),
                             seed=rule.seed, workers=config.workers)
    refit = run_boosting(dataset, config, Fixed(history.best_iteration), index=index)
    reason = f"cross-validation minimum at iteration {history.best_iteration}"
    if history.boundary:
        reason += " (boundary)"
    return BoostingFit(
        beta=refit.beta,
        variable_names=refit.variable_names,
        iterations_run=refit.iterations_run,
        stopping_rule=rule,
        stop_reason=reason,
        trace=refit.trace,
        log_likelihood=refit.log_likelihood,
        rate=config.rate,
        num_subjects=dataset.n,
        num_events=dataset.num_events,
        criterion_history=history,
    )
