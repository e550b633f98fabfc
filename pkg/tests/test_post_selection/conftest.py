import pytest
from simulation.config import SimulationConfig
from simulation.simulator import simulate_survival_cox


@pytest.fixture(scope="module")
def strong_signal_data():
    """One strong signal among four independent variables, two strata."""
    config = SimulationConfig(true_beta=(2.0, 0.0, 0.0, 0.0), num_strata=2, mean_stratum_size=100,
                              baseline=((1.0, 1.0),), cov_structure="independent", censor_upper=3.0)
    return simulate_survival_cox(config, seed=3).dataset
