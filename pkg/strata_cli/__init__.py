from .main import cli_dispatch, exit_code_for
from .parser import UsageError, build_parser

__all__ = ['cli_dispatch', 'exit_code_for', 'UsageError', 'build_parser']
