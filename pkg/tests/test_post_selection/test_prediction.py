import numpy as np
import pytest
from boosting.config import BoostingConfig
from boosting.runner import run_boosting
from boosting.stopping_rules import Fixed
from post_selection.prediction import align_covariates, covariate_means, hazard_ratios, predict_hazard_ratio
from survival_model.dataset import validate_dataset
from survival_model.errors import SurvivalDataError


def test_zero_coefficients_give_unit_ratios(strong_signal_data):
    fit = run_boosting(strong_signal_data, BoostingConfig(rate=0.1), Fixed(0))
    np.testing.assert_array_equal(predict_hazard_ratio(fit, strong_signal_data), np.ones(strong_signal_data.n))


def test_mean_subject_has_unit_ratio():
    covariates = np.array([[0.0], [1.0], [2.0]])
    means = covariate_means(validate_dataset([1.0, 2.0, 3.0], [1, 1, 1], covariates))
    ratios = hazard_ratios(np.array([0.7]), means, covariates)
    assert ratios[1] == pytest.approx(1.0)
    assert ratios[2] == pytest.approx(np.exp(0.7))
    assert ratios[0] == pytest.approx(np.exp(-0.7))


def test_predictions_match_linear_predictor(strong_signal_data):
    fit = run_boosting(strong_signal_data, BoostingConfig(rate=0.1), Fixed(30))
    x = strong_signal_data.covariates
    expected = np.exp((x - x.mean(axis=0)) @ fit.beta)
    np.testing.assert_allclose(predict_hazard_ratio(fit, strong_signal_data), expected, rtol=1e-12)
    assert np.all(predict_hazard_ratio(fit, strong_signal_data) > 0)


def test_query_matrix_and_dataset(strong_signal_data):
    fit = run_boosting(strong_signal_data, BoostingConfig(rate=0.1), Fixed(30))
    query = strong_signal_data.covariates[:5]
    from_matrix = predict_hazard_ratio(fit, strong_signal_data, query)
    assert from_matrix.shape == (5,)
    np.testing.assert_allclose(from_matrix, predict_hazard_ratio(fit, strong_signal_data)[:5])


def test_query_dataset_is_matched_by_name():
    reordered = validate_dataset([1.0, 2.0], [1, 0], [[5.0, 1.0], [6.0, 2.0]], variable_names=["B", "A"])
    np.testing.assert_array_equal(align_covariates(reordered, ("A", "B")), [[1.0, 5.0], [2.0, 6.0]])


def test_mismatched_queries_raise(strong_signal_data):
    fit = run_boosting(strong_signal_data, BoostingConfig(rate=0.1), Fixed(5))
    with pytest.raises(SurvivalDataError, match="columns"):
        predict_hazard_ratio(fit, strong_signal_data, np.zeros((2, 3)))
    missing = validate_dataset([1.0], [1], [[0.0, 0.0, 0.0]], variable_names=["V1", "V2", "X"])
    with pytest.raises(SurvivalDataError, match="V4"):
        predict_hazard_ratio(fit, strong_signal_data, missing)


def test_shifting_a_covariate_leaves_ratios_unchanged(strong_signal_data):
    fit = run_boosting(strong_signal_data, BoostingConfig(rate=0.1), Fixed(30))
    covariates = strong_signal_data.covariates.copy()
    covariates[:, 0] += 3.0
    shifted = validate_dataset(strong_signal_data.time, strong_signal_data.status, covariates,
                               stratum=np.asarray(strong_signal_data.stratum_labels)[strong_signal_data.stratum],
                               variable_names=strong_signal_data.variable_names)
    np.testing.assert_allclose(predict_hazard_ratio(fit, shifted), predict_hazard_ratio(fit, strong_signal_data),
                               rtol=1e-12, atol=1e-12)
