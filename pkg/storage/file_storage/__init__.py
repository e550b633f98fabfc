from .file_storage import FileStorage
from .models import FileFitRun

__all__ = ['FileStorage', 'FileFitRun']
