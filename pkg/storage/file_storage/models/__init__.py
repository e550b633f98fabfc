from .fit_run import FileFitRun

__all__ = ['FileFitRun']
