"""Simulation designs shared by the test packages."""
from simulation.config import SimulationConfig

WORKFLOW_BETA = (0.5, 0.5, 0.0, 0.0, 0.0, -0.5, 0.5, 0.5, 0.0, 0.0)
# constant Weibull baselines that give roughly one third censoring under uniform(0, 2) censoring
WORKFLOW_BASELINE = ((1.0, 1.0), (1.0, 1.5), (1.0, 2.0), (1.0, 2.5), (1.0, 3.0))


def workflow_config(**overrides) -> SimulationConfig:
    """Five strata of about 100 subjects, ten AR(1) covariates in blocks of five, five signals."""
    settings = dict(true_beta=WORKFLOW_BETA, num_strata=5, mean_stratum_size=100, baseline=WORKFLOW_BASELINE,
                    cov_structure="ar", block_size=5, rho=0.6, censor_upper=2.0)
    settings.update(overrides)
    return SimulationConfig(**settings)
