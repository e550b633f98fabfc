import numpy as np
import pytest
from boosting.config import BoostingConfig
from boosting.cross_validation import assign_folds, cross_validate, run_fold, training_sets_feasible
from boosting.runner import run_boosting
from boosting.stopping_rules import CrossValidation, Fixed
from survival_model.dataset import validate_dataset
from survival_model.errors import InfeasibleFoldsError
from survival_model.partial_likelihood import StratifiedPartialLikelihood
from tests.naive_cox import naive_log_likelihood, random_dataset


def test_fold_assignment_is_seeded(small_data):
    first = assign_folds(small_data, 5, seed=3)
    again = assign_folds(small_data, 5, seed=3)
    assert np.array_equal(first, again)
    assert set(first) == set(range(5))


def test_fold_assignment_is_stratified(small_data):
    fold_ids = assign_folds(small_data, 4, seed=1)
    for g in range(small_data.num_strata):
        for status in (0, 1):
            members = (small_data.stratum == g) & (small_data.status == status)
            counts = np.bincount(fold_ids[members], minlength=4)
            assert counts.max() - counts.min() <= 1
    assert training_sets_feasible(small_data, fold_ids, 4)


def test_fold_scores_at_zero_match_double_evaluation():
    rng = np.random.default_rng(21)
    dataset = random_dataset(rng, 80, 4, 2)
    fold_ids = assign_folds(dataset, 4, seed=0)
    history = cross_validate(dataset, BoostingConfig(rate=0.1), folds=4, max_iterations=5, fold_ids=fold_ids)
    zero = np.zeros(dataset.p)
    full = naive_log_likelihood(dataset, zero)
    for k in range(4):
        train = dataset.subset(np.flatnonzero(fold_ids != k))
        expected = -(full - naive_log_likelihood(train, zero))
        assert history.fold_scores[k, 0] == pytest.approx(expected, abs=1e-10)
    assert history.values.shape == (6,)
    np.testing.assert_allclose(history.values, history.fold_scores.sum(axis=0), rtol=0, atol=1e-12)


def test_identical_halves_give_identical_paths():
    rng = np.random.default_rng(8)
    half = random_dataset(rng, 30, 3, 2)
    doubled = validate_dataset(
        np.concatenate([half.time, half.time]),
        np.concatenate([half.status, half.status]),
        np.vstack([half.covariates, half.covariates]),
        stratum=np.concatenate([half.stratum, half.stratum]),
    )
    fold_ids = np.repeat([0, 1], half.n)
    full_model = StratifiedPartialLikelihood(doubled)
    first = run_fold(doubled, full_model, fold_ids, 0, BoostingConfig(rate=0.1), 20)
    second = run_fold(doubled, full_model, fold_ids, 1, BoostingConfig(rate=0.1), 20)
    for m in range(21):
        assert np.array_equal(first.trace.beta_at(m), second.trace.beta_at(m))
    assert np.array_equal(first.scores, second.scores)


def test_explicit_infeasible_folds_rejected():
    dataset = validate_dataset([1.0, 2.0, 3.0, 4.0], [1, 1, 0, 0], [[0.1], [0.4], [0.2], [0.9]])
    with pytest.raises(InfeasibleFoldsError):
        cross_validate(dataset, BoostingConfig(), folds=2, max_iterations=3, fold_ids=[0, 0, 1, 1])
    with pytest.raises(InfeasibleFoldsError):
        cross_validate(dataset, BoostingConfig(), folds=2, max_iterations=3, fold_ids=[0, 1, 2, 1])


def test_too_few_events_for_folds():
    dataset = validate_dataset([1.0, 2.0, 3.0, 4.0], [1, 0, 0, 0], [[0.1], [0.4], [0.2], [0.9]])
    with pytest.raises(InfeasibleFoldsError):
        assign_folds(dataset, 2, seed=0)


def test_parallel_folds_match_serial(small_data):
    config = BoostingConfig(rate=0.1)
    serial = cross_validate(small_data, config, folds=5, max_iterations=40, seed=2, workers=1)
    parallel = cross_validate(small_data, config, folds=5, max_iterations=40, seed=2, workers=3)
    assert np.array_equal(serial.values, parallel.values)
    assert serial.best_iteration == parallel.best_iteration


def test_cross_validated_fit_refits_at_best_iteration(small_data):
    config = BoostingConfig(rate=0.1)
    fit = run_boosting(small_data, config, CrossValidation(folds=5, max_iterations=60, seed=1))
    history = fit.criterion_history
    assert history.criterion == "cv"
    assert fit.iterations_run == history.best_iteration
    assert history.fold_scores.shape == (5, 61)
    rerun = run_boosting(small_data, config, Fixed(history.best_iteration))
    assert np.array_equal(fit.beta, rerun.beta)


def test_relabelled_folds_give_the_same_scores():
    rng = np.random.default_rng(13)
    dataset = random_dataset(rng, 80, 4, 2)
    fold_ids = assign_folds(dataset, 4, seed=2)
    relabel = np.array([2, 0, 3, 1])
    config = BoostingConfig(rate=0.1)
    history = cross_validate(dataset, config, folds=4, max_iterations=15, fold_ids=fold_ids)
    relabelled = cross_validate(dataset, config, folds=4, max_iterations=15, fold_ids=relabel[fold_ids])
    for k in range(4):
        np.testing.assert_array_equal(relabelled.fold_scores[relabel[k]], history.fold_scores[k])
    np.testing.assert_allclose(relabelled.values, history.values, rtol=1e-12, atol=1e-10)
    assert relabelled.best_iteration == history.best_iteration
