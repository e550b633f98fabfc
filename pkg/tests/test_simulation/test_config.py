import numpy as np
import pytest
from simulation.config import SimulationConfig
from survival_model.errors import ConfigurationError


def test_auto_baseline():
    parameters = SimulationConfig(true_beta=(1.0,), num_strata=5).baseline_parameters()
    assert [shape for shape, _ in parameters] == [3.0] * 5
    np.testing.assert_allclose(np.log([scale for _, scale in parameters]), [-1.0, -4.5, -8.0, -11.5, -15.0])


def test_auto_baseline_single_stratum():
    assert SimulationConfig(true_beta=(1.0,), num_strata=1).baseline_parameters() == [(3.0, float(np.exp(-1.0)))]


def test_shared_baseline_pair():
    config = SimulationConfig(true_beta=(1.0,), num_strata=3, baseline=[(3.0, 2.0)])
    assert config.baseline_parameters() == [(3.0, 2.0)] * 3


def test_blocks():
    config = SimulationConfig(true_beta=(0.0,) * 12, block_size=5)
    assert config.blocks() == [(0, 5), (5, 10), (10, 12)]
    independent = SimulationConfig(true_beta=(0.0,) * 3, cov_structure="independent")
    assert independent.blocks() == [(0, 1), (1, 2), (2, 3)]


@pytest.mark.parametrize("params", [
    {"true_beta": ()},
    {"true_beta": (1.0, np.inf)},
    {"true_beta": (1.0,), "num_strata": 0},
    {"true_beta": (1.0,), "cov_structure": "toeplitz"},
    {"true_beta": (1.0,), "rho": 1.0},
    {"true_beta": (1.0,), "censoring": "exponential"},
    {"true_beta": (1.0,), "censor_upper": 0.0},
    {"true_beta": (1.0,), "tau": 0.0},
    {"true_beta": (1.0,), "num_strata": 3, "baseline": [(1.0, 1.0), (1.0, 2.0)]},
    {"true_beta": (1.0,), "baseline": [(0.0, 1.0)]},
])
def test_invalid_configs(params):
    with pytest.raises(ConfigurationError):
        SimulationConfig(**params)


def test_dict_round_trip():
    config = SimulationConfig(true_beta=(0.5, 0.0), num_strata=2, baseline=[(1.0, 1.0), (2.0, 0.5)], tau=3.0)
    assert SimulationConfig.from_dict(config.to_dict()) == config
    infinite = SimulationConfig(true_beta=(0.5,))
    assert infinite.to_dict()["tau"] is None
    assert SimulationConfig.from_dict(infinite.to_dict()) == infinite


def test_from_dict_rejects_unknown_and_missing_keys():
    with pytest.raises(ConfigurationError, match="unknown"):
        SimulationConfig.from_dict({"true_beta": [1.0], "censor_const": 2})
    with pytest.raises(ConfigurationError, match="true_beta"):
        SimulationConfig.from_dict({"num_strata": 2})
