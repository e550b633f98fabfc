from .dataset import SurvivalDataset, validate_dataset
from .stratum_index import StratumIndex, build_stratum_index
from .partial_likelihood import (
    ScoreStatistics,
    StratifiedPartialLikelihood,
    first_derivative,
    first_derivative_all,
    information_matrix,
    linear_predictor,
    log_partial_likelihood,
    score_statistics,
    second_derivative,
    update_linear_predictor,
)
from .errors import (
    ConfigurationError,
    ConvergenceError,
    DataParseError,
    DegenerateCurvatureError,
    InfeasibleFoldsError,
    InfeasibleSubsampleError,
    NumericalError,
    SchemaVersionError,
    SeparationError,
    SingularHessianError,
    SurvivalDataError,
)

__all__ = [
    "SurvivalDataset", "validate_dataset", "StratumIndex", "build_stratum_index",
    "ScoreStatistics", "StratifiedPartialLikelihood", "first_derivative", "first_derivative_all",
    "information_matrix", "linear_predictor", "log_partial_likelihood", "score_statistics",
    "second_derivative", "update_linear_predictor",
    "ConfigurationError", "ConvergenceError", "DataParseError", "DegenerateCurvatureError",
    "InfeasibleFoldsError", "InfeasibleSubsampleError", "NumericalError", "SchemaVersionError",
    "SeparationError", "SingularHessianError", "SurvivalDataError",
]
