from typing import Optional


class SurvivalDataError(ValueError):
    """Raised when survival data or run parameters fail validation."""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        super().__init__(message)
        self.row = row
        self.column = column


class DataParseError(SurvivalDataError):
    """A tabular field could not be parsed."""


class ConfigurationError(SurvivalDataError):
    """Invalid boosting, stopping or simulation parameters."""


class InfeasibleFoldsError(SurvivalDataError):
    """Cross-validation folds could not keep events in every training set."""


class InfeasibleSubsampleError(SurvivalDataError):
    """A stability subsample without events could not be redrawn."""


class SchemaVersionError(SurvivalDataError):
    """A stored document carries an unknown schema version."""


class NumericalError(ArithmeticError):
    """Raised when a likelihood computation or update stops being finite."""


class DegenerateCurvatureError(NumericalError):
    """The second derivative of the selected variable vanished."""

    def __init__(self, variable: int, curvature: float):
        super().__init__(f"degenerate curvature for variable {variable}: L2 = {curvature:.3e}")
        self.variable = variable
        self.curvature = curvature


class SingularHessianError(NumericalError):
    """The information matrix of a refit is not positive definite."""


class ConvergenceError(NumericalError):
    """Newton iterations of a refit did not converge."""


class SeparationError(NumericalError):
    """A refit coefficient diverged (monotone likelihood)."""
