import numpy as np
import pytest
from boosting.config import BoostingConfig
from boosting.runner import run_boosting
from boosting.stopping_rules import BIC, Fixed
from storage.documents import build_fit_document
from tests.naive_cox import random_dataset


@pytest.fixture(scope="module")
def stored_dataset():
    return random_dataset(np.random.default_rng(17), n=80, p=6, strata=3)


@pytest.fixture(scope="module")
def fit_document(stored_dataset):
    fit = run_boosting(stored_dataset, BoostingConfig(rate=0.1), Fixed(25))
    return build_fit_document(fit, stored_dataset, include_trace=True)


@pytest.fixture(scope="module")
def criterion_document(stored_dataset):
    fit = run_boosting(stored_dataset, BoostingConfig(rate=0.1, max_iterations=40), BIC())
    return build_fit_document(fit, stored_dataset)
