import numpy as np
import pytest
from simulation.config import SimulationConfig
from simulation.simulator import simulate_survival_cox
from tests.designs import workflow_config


@pytest.fixture(scope="module")
def workflow_data():
    return simulate_survival_cox(workflow_config(), seed=42)


@pytest.fixture(scope="module")
def small_data():
    """Three strata, twenty variables with two signals."""
    beta = np.zeros(20)
    beta[[0, 3]] = (1.0, -1.0)
    config = SimulationConfig(true_beta=tuple(beta), num_strata=3, mean_stratum_size=40,
                              baseline=((1.0, 1.0),), cov_structure="independent", censor_upper=3.0)
    return simulate_survival_cox(config, seed=7).dataset
