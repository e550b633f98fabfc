import json
import sys
from typing import List, Optional
import jsonschema
from survival_model.errors import NumericalError, SurvivalDataError
from .commands import COMMANDS
from .parser import UsageError, build_parser, default_threads
from logger_config import get_logger

logger = get_logger("strata_cli")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3

LOGGER_NAMES = ("survival_model", "boosting", "simulation", "post_selection", "storage", "strata_cli")


def exit_code_for(error: BaseException) -> int:
    """Exit code of a failed command: 1 usage, 2 data, I/O or invalid document, 3 numerical or anything else."""
    if isinstance(error, UsageError):
        return EXIT_USAGE
    if isinstance(error, (SurvivalDataError, OSError, jsonschema.ValidationError)):
        return EXIT_DATA
    if not isinstance(error, NumericalError):
        logger.debug(f"Unexpected {type(error).__name__} reported as a numerical failure")
    return EXIT_NUMERICAL


def report_error(error: BaseException, code: int) -> None:
    """Write one JSON error record to standard error."""
    record = {"level": "error", "exit_code": code, "error": type(error).__name__, "message": str(error)}
    sys.stderr.write(json.dumps(record) + "\n")


def cli_dispatch(argv: Optional[List[str]] = None) -> int:
    """
    Run one command line and return its exit code.

    Args:
        argv: Arguments without the program name; sys.argv[1:] when None

    Returns:
        0 on success, 1 for usage errors, 2 for data and validation errors,
        3 for numerical failures
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        threads = args.threads or default_threads()
    except UsageError as e:
        report_error(e, EXIT_USAGE)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK

    if args.verbose:
        for name in LOGGER_NAMES:
            get_logger(name, stream=True)

    try:
        return COMMANDS[args.command](args, threads)
    except Exception as e:
        code = exit_code_for(e)
        logger.error(f"{args.command} failed ({type(e).__name__}): {e}")
        report_error(e, code)
        return code


def main():
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
