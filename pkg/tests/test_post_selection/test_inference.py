import numpy as np
import pytest
from scipy.optimize import minimize
from scipy.stats import norm
from post_selection import inference
from post_selection.inference import refit_inference
from survival_model.partial_likelihood import StratifiedPartialLikelihood
from survival_model.dataset import validate_dataset
from survival_model.errors import ConvergenceError, SingularHessianError, SurvivalDataError
from tests.naive_cox import naive_gradient, naive_information, naive_log_likelihood, random_dataset


@pytest.fixture(scope="module")
def refit_data():
    return random_dataset(np.random.default_rng(21), n=60, p=3, strata=2)


def test_score_vanishes_at_refit(refit_data):
    table = refit_inference(refit_data, [0, 2])
    assert table.score_norm < 1e-8
    assert [row.variable for row in table.rows] == ["V1", "V3"]
    assert table.num_subjects == refit_data.n
    assert table.num_events == refit_data.num_events


def test_refit_matches_generic_optimizer(refit_data):
    support = refit_data.column_subset([0, 2])
    result = minimize(lambda b: -naive_log_likelihood(support, b), np.zeros(2),
                      jac=lambda b: -naive_gradient(support, b), method="BFGS", options={"gtol": 1e-10})
    table = refit_inference(refit_data, ["V1", "V3"])
    np.testing.assert_allclose([row.coef for row in table.rows], result.x, atol=1e-4)
    assert table.log_likelihood == pytest.approx(-result.fun, abs=1e-8)


def test_wald_statistics(refit_data):
    table = refit_inference(refit_data, [0, 1])
    beta = np.array([row.coef for row in table.rows])
    se = np.sqrt(np.diag(np.linalg.inv(naive_information(refit_data.column_subset([0, 1]), beta))))
    for row, expected_se in zip(table.rows, se):
        assert row.se == pytest.approx(expected_se, rel=1e-6)
        assert row.z == pytest.approx(row.coef / row.se)
        assert row.p_value == pytest.approx(2 * norm.sf(abs(row.z)))
        assert row.exp_coef == pytest.approx(np.exp(row.coef))
        assert row.lower_95 == pytest.approx(np.exp(row.coef - 1.96 * row.se))
        assert row.upper_95 == pytest.approx(np.exp(row.coef + 1.96 * row.se))


def test_frame_and_document(refit_data):
    table = refit_inference(refit_data, [1])
    frame = table.to_frame()
    assert list(frame.columns) == ["coef", "exp(coef)", "exp(-coef)", "se(coef)", "z", "Pr(>|z|)",
                                   "lower .95", "upper .95"]
    assert frame.index.tolist() == ["V2"]
    document = table.to_dict()
    assert set(document) == {"n", "events", "log_likelihood", "iterations", "score_norm", "rows"}
    assert document["rows"][0]["variable"] == "V2"


def test_constant_column_is_singular():
    rng = np.random.default_rng(2)
    covariates = np.column_stack([rng.standard_normal(30), np.ones(30)])
    dataset = validate_dataset(rng.exponential(size=30) + 0.01, np.ones(30, dtype=int), covariates)
    with pytest.raises(SingularHessianError):
        refit_inference(dataset, [0, 1])


def test_iteration_limit(refit_data):
    with pytest.raises(ConvergenceError):
        refit_inference(refit_data, [0, 1, 2], max_iterations=1)


@pytest.mark.parametrize("selected", [[], [0, 0], [3], ["missing"]])
def test_invalid_selection(refit_data, selected):
    with pytest.raises(SurvivalDataError):
        refit_inference(refit_data, selected)


def test_intervals_contain_hazard_ratio(refit_data):
    table = refit_inference(refit_data, [0, 1, 2])
    for row in table.rows:
        assert row.lower_95 < row.exp_coef < row.upper_95
        assert row.exp_coef == pytest.approx(np.exp(row.coef), rel=1e-12)


class WorseningLikelihood(StratifiedPartialLikelihood):
    """Every evaluation is lower than the one before."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.calls = 0

    def log_likelihood(self, eta):
        self.calls += 1
        return -float(self.calls)


def test_step_without_improvement_fails(refit_data, monkeypatch):
    monkeypatch.setattr(inference, "StratifiedPartialLikelihood", WorseningLikelihood)
    with pytest.raises(ConvergenceError):
        refit_inference(refit_data, [0, 1])
