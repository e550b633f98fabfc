from .base import Base
from .run_mixin import RunTimestampMixin
from .fit_run import FitRun
from .selected_variable import SelectedVariable

__all__ = ['Base', 'RunTimestampMixin', 'FitRun', 'SelectedVariable']
