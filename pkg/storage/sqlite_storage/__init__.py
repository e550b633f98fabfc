from .sqlite_storage import SQLiteStorage
from .models import FitRun, SelectedVariable

__all__ = ['SQLiteStorage', 'FitRun', 'SelectedVariable']
