from typing import Sequence, Union
import numpy as np
from boosting.fit import BoostingFit
from survival_model.dataset import SurvivalDataset
from survival_model.errors import SurvivalDataError


def covariate_means(dataset: SurvivalDataset) -> np.ndarray:
    return dataset.covariates.mean(axis=0)


def align_covariates(query: Union[SurvivalDataset, np.ndarray], variable_names: Sequence[str]) -> np.ndarray:
    """
    Query covariates in the column order of a fit.

    A dataset is matched by variable name; a bare matrix must already have one
    column per fitted variable.
    """
    if isinstance(query, SurvivalDataset):
        missing = [name for name in variable_names if name not in query.variable_names]
        if missing:
            raise SurvivalDataError(f"query data lacks fitted variables: {', '.join(missing)}", column=missing[0])
        return query.covariates[:, [query.column_index(name) for name in variable_names]]
    matrix = np.atleast_2d(np.asarray(query, dtype=float))
    if matrix.shape[1] != len(variable_names):
        raise SurvivalDataError(f"query has {matrix.shape[1]} columns, the fit has {len(variable_names)} variables")
    return matrix


def hazard_ratios(beta: np.ndarray, means: np.ndarray, covariates: np.ndarray) -> np.ndarray:
    """HR_i = exp((X_i - means)' beta)."""
    return np.exp((covariates - means) @ beta)


def predict_hazard_ratio(fit: BoostingFit, reference: SurvivalDataset,
                         query: Union[SurvivalDataset, np.ndarray, None] = None) -> np.ndarray:
    """
    Hazard ratio of every query row relative to the average training subject.

    Args:
        fit: Boosting fit
        reference: Training data defining the average covariate vector
        query: Rows to score, the reference data itself when omitted

    Returns:
        Positive hazard ratios, one per query row

    Raises:
        SurvivalDataError: If the query columns do not match the fitted variables
    """
    if reference.variable_names != fit.variable_names:
        raise SurvivalDataError("reference data does not have the fitted variables")
    covariates = align_covariates(reference if query is None else query, fit.variable_names)
    return hazard_ratios(fit.beta, covariate_means(reference), covariates)
