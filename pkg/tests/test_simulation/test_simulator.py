import os
import numpy as np
import pytest
from scipy.stats import kstest
from simulation.config import SimulationConfig
from simulation.simulator import apply_censoring, gen_covariates, gen_event_times, simulate_survival_cox
from survival_model.errors import SurvivalDataError
from tests.designs import WORKFLOW_BETA, workflow_config

slow = pytest.mark.skipif(os.getenv("SKIP_SLOW_TESTS") == "1", reason="Skipping slow simulation tests")


def test_independent_covariates_are_uncorrelated():
    config = SimulationConfig(true_beta=(0.0,) * 4, rho=0.0)
    x = gen_covariates(config, 5000, seed=1)
    corr = np.corrcoef(x, rowvar=False)
    assert np.all(np.abs(corr[np.triu_indices(4, 1)]) < 0.05)


def test_ar_covariates():
    config = SimulationConfig(true_beta=(0.0,) * 10, rho=0.6, block_size=5)
    x = gen_covariates(config, 5000, seed=2)
    corr = np.corrcoef(x, rowvar=False)
    for a in range(4):
        assert corr[a, a + 1] == pytest.approx(0.6, abs=0.05)
    assert corr[0, 2] == pytest.approx(0.36, abs=0.05)
    # columns 4 and 5 sit in different blocks
    assert abs(corr[4, 5]) < 0.05
    assert np.all(np.abs(x.mean(axis=0)) < 0.05)
    assert np.all(np.abs(x.var(axis=0) - 1.0) < 0.1)


def test_normalized_covariates():
    config = SimulationConfig(true_beta=(0.0,) * 3, normalized=True)
    x = gen_covariates(config, 200, seed=3)
    np.testing.assert_allclose(x.mean(axis=0), 0.0, atol=1e-12)
    np.testing.assert_allclose(x.std(axis=0), 1.0, atol=1e-12)


def test_exponential_event_times():
    config = SimulationConfig(true_beta=(0.0,), num_strata=1, baseline=[(1.0, 1.0)])
    times = gen_event_times(config, np.zeros((2000, 1)), np.zeros(2000, dtype=int), seed=4)
    assert kstest(times, "expon").pvalue > 0.01


def test_weibull_event_times():
    scale = np.exp(-1.0)
    config = SimulationConfig(true_beta=(0.0,), num_strata=1, baseline=[(3.0, scale)])
    times = gen_event_times(config, np.zeros((2000, 1)), np.zeros(2000, dtype=int), seed=5)
    # T**3 is exponential with rate `scale`
    assert kstest(times ** 3, "expon", args=(0, 1 / scale)).pvalue > 0.01


def test_doubling_hazard_scales_median():
    config = SimulationConfig(true_beta=(np.log(2.0),), num_strata=1, baseline=[(3.0, 1.0)])
    n = 4000
    base = gen_event_times(config, np.zeros((n, 1)), np.zeros(n, dtype=int), seed=6)
    doubled = gen_event_times(config, np.ones((n, 1)), np.zeros(n, dtype=int), seed=6)
    np.testing.assert_allclose(doubled, base * 2.0 ** (-1.0 / 3.0), rtol=1e-12)


def test_no_censoring():
    config = SimulationConfig(true_beta=(0.0,), censoring="none")
    latent = np.array([0.5, 1.5, 7.0])
    observed, status = apply_censoring(latent, config, seed=0)
    assert status.tolist() == [1, 1, 1]
    assert observed.tolist() == latent.tolist()


def test_administrative_truncation():
    config = SimulationConfig(true_beta=(0.0,), censoring="none", tau=0.5)
    observed, status = apply_censoring(np.array([0.2, 0.5, 0.9]), config, seed=0)
    assert observed.max() <= 0.5
    assert status.tolist() == [1, 1, 0]


def test_all_censored_raises():
    config = SimulationConfig(true_beta=(0.0,), censor_upper=0.01)
    with pytest.raises(SurvivalDataError, match="no events"):
        apply_censoring(np.array([5.0, 6.0]), config, seed=0)


def test_smaller_censoring_bound_never_censors_fewer():
    latent = np.random.default_rng(0).exponential(size=500)
    wide = apply_censoring(latent, SimulationConfig(true_beta=(0.0,), censor_upper=4.0), seed=3)[1]
    narrow = apply_censoring(latent, SimulationConfig(true_beta=(0.0,), censor_upper=1.0), seed=3)[1]
    assert np.all(narrow <= wide)


def test_simulation_is_deterministic():
    first = simulate_survival_cox(workflow_config(), seed=11)
    second = simulate_survival_cox(workflow_config(), seed=11)
    assert np.array_equal(first.dataset.time, second.dataset.time)
    assert np.array_equal(first.dataset.covariates, second.dataset.covariates)
    assert np.array_equal(first.dataset.status, second.dataset.status)
    other = simulate_survival_cox(workflow_config(), seed=12)
    assert not np.array_equal(first.dataset.time[:10], other.dataset.time[:10])


def test_simulated_dataset_shape():
    simulated = simulate_survival_cox(workflow_config(), seed=0)
    dataset = simulated.dataset
    assert 400 <= dataset.n <= 620
    assert dataset.p == 10
    assert dataset.stratum_labels == (1, 2, 3, 4, 5)
    assert simulated.true_beta.tolist() == list(WORKFLOW_BETA)
    assert simulated.censoring_rate == pytest.approx(1 - dataset.status.mean())
    assert np.all(dataset.time <= simulated.latent_times)


def test_frame_and_truth_document():
    simulated = simulate_survival_cox(workflow_config(num_strata=2, mean_stratum_size=20, baseline=((1.0, 1.0),)), seed=1)
    frame = simulated.to_frame()
    assert list(frame.columns) == ["time", "status", "stratum"] + [f"V{j}" for j in range(1, 11)]
    assert len(frame) == simulated.dataset.n
    truth = simulated.truth_document()
    assert truth["true_beta"] == list(WORKFLOW_BETA)
    assert truth["seed"] == 1
    assert truth["fingerprint"] == simulated.dataset.fingerprint()
    assert truth["config"]["tau"] is None


@slow
def test_workflow_censoring_rate():
    rates = [simulate_survival_cox(workflow_config(), seed=seed).censoring_rate for seed in range(10)]
    assert all(0.25 <= rate <= 0.41 for rate in rates)


def test_stratum_covariates_come_from_their_own_stream():
    config = workflow_config(num_strata=3, baseline=((1.0, 1.0),))
    simulated = simulate_survival_cox(config, seed=5)
    for g in range(3):
        members = simulated.dataset.stratum == g
        expected = gen_covariates(config, int(members.sum()), seed=5, stratum=g)
        assert np.array_equal(simulated.dataset.covariates[members], expected)
