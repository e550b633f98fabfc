import argparse
import os
from boosting.config import DEFAULT_MAX_ITERATIONS, DEFAULT_RATE
from boosting.stopping_rules import registered_stopping_rules
from post_selection.stability import DEFAULT_SUBSAMPLES, DEFAULT_THRESHOLD

THREADS_ENV = "STRATA_BOOST_THREADS"


class UsageError(Exception):
    """Invalid command-line usage."""


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser raising UsageError instead of exiting on bad arguments."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def default_threads() -> int:
    value = os.getenv(THREADS_ENV, "1")
    try:
        threads = int(value)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got '{value}'") from None
    if threads < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got '{value}'")
    return threads


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _columns(value: str) -> list:
    names = [name.strip() for name in value.split(",") if name.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated list of column names")
    return names


def _common_arguments() -> argparse.ArgumentParser:
    common = CliArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive_int, default=None,
                        help=f"Worker threads (default: ${THREADS_ENV} or 1)")
    common.add_argument("--verbose", action="store_true", help="Mirror log output to the terminal")
    return common


def _data_arguments() -> argparse.ArgumentParser:
    data = CliArgumentParser(add_help=False)
    data.add_argument("data", help="CSV file with a header row")
    data.add_argument("--time", default="time", help="Column of observed times")
    data.add_argument("--status", default="status", help="Column of event indicators (1 event, 0 censored)")
    data.add_argument("--stratum", default=None, help="Column of stratum labels; one stratum when omitted")
    data.add_argument("--covariates", type=_columns, default=None,
                      help="Comma-separated covariate columns; all other numeric columns when omitted")
    return data


def _boosting_arguments(with_stop: bool = True) -> argparse.ArgumentParser:
    boosting = CliArgumentParser(add_help=False)
    boosting.add_argument("--rate", type=float, default=DEFAULT_RATE, help="Boosting step size")
    if with_stop:
        boosting.add_argument("--stop", choices=registered_stopping_rules(), default="fixed", help="Stopping rule")
    boosting.add_argument("--iterations", type=int, default=None,
                          help=f"Iterations of the fixed rule (default {DEFAULT_MAX_ITERATIONS})")
    boosting.add_argument("--target", type=int, default=5, help="Number of variables for num-selected")
    boosting.add_argument("--alpha", type=float, default=0.001, help="Likelihood gain threshold")
    boosting.add_argument("--gamma", type=float, default=0.5, help="EBIC gamma")
    boosting.add_argument("--folds", type=int, default=10, help="Cross-validation folds")
    boosting.add_argument("--max-iterations", type=_positive_int, default=DEFAULT_MAX_ITERATIONS,
                          help="Iteration cap of every rule except fixed")
    boosting.add_argument("--seed", type=int, default=0, help="Seed of fold assignment or subsampling")
    return boosting


def _output_argument(parser: argparse.ArgumentParser, what: str) -> None:
    parser.add_argument("--out", default=None, help=f"Output {what}; standard output when omitted")


def _store_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--store", choices=["file", "sqlite"], default=None, help="Also register the fit in a run store")
    parser.add_argument("--store-path", default="./data", help="Directory of the run store")
    parser.add_argument("--name", default=None, help="Run name in the store (default: the data file stem)")


def build_parser() -> CliArgumentParser:
    common = _common_arguments()
    data = _data_arguments()

    parser = CliArgumentParser(
        prog="strata-boost",
        description="Variable selection for stratified Cox models by componentwise boosting.",
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)

    simulate = commands.add_parser("simulate", parents=[common], help="Simulate a stratified survival dataset")
    simulate.add_argument("--config", required=True, help="JSON simulation config")
    simulate.add_argument("--seed", type=int, default=0, help="Master seed")
    simulate.add_argument("--out", required=True, help="Output dataset CSV")
    simulate.add_argument("--truth", default=None, help="Output truth JSON (default: <out>.truth.json)")

    fit = commands.add_parser("fit", parents=[common, data, _boosting_arguments()], help="Boost a stratified Cox model")
    fit.add_argument("--trace", action="store_true", help="Include selection counts and coefficient paths")
    _output_argument(fit, "fit document")
    _store_arguments(fit)

    cv = commands.add_parser("cv", parents=[common, data, _boosting_arguments(with_stop=False)],
                             help="Fit with the iteration count chosen by cross-validation")
    cv.set_defaults(stop="cv")
    cv.add_argument("--trace", action="store_true", help="Include selection counts and coefficient paths")
    _output_argument(cv, "fit document")
    _store_arguments(cv)

    predict = commands.add_parser("predict", parents=[common], help="Hazard ratios of new rows against a fit")
    predict.add_argument("--fit", required=True, help="Fit document JSON")
    predict.add_argument("data", help="CSV with the fitted covariate columns")
    _output_argument(predict, "CSV")

    inference = commands.add_parser("inference", parents=[common, data], help="Refit the selected variables")
    inference.add_argument("--fit", required=True, help="Fit document JSON")
    _output_argument(inference, "inference JSON")

    stability = commands.add_parser("stability", parents=[common, data, _boosting_arguments()],
                                    help="Selection frequencies over half-subsamples")
    stability.add_argument("--subsamples", type=_positive_int, default=DEFAULT_SUBSAMPLES, help="Number of subsamples")
    stability.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD, help="Stable frequency threshold")
    stability.add_argument("--progress", action="store_true", help="Show a progress bar")
    _output_argument(stability, "stability JSON")

    summary = commands.add_parser("strata-summary", parents=[common],
                                  help="Survival time summary by a candidate stratification variable")
    summary.add_argument("data", help="CSV file with a header row")
    summary.add_argument("--var", required=True, help="Candidate stratification column")
    summary.add_argument("--time", default="time", help="Column of observed times")
    _output_argument(summary, "summary JSON")

    metrics = commands.add_parser("metrics", parents=[common], help="Selection quality of a fit against the truth")
    metrics.add_argument("--fit", required=True, help="Fit document JSON")
    metrics.add_argument("--truth", required=True, help="Truth JSON written by simulate")
    _output_argument(metrics, "metrics JSON")

    bench = commands.add_parser("bench", parents=[common], help="Per-iteration timing over doubled n and p")
    bench.add_argument("--n", type=_positive_int, default=500, help="Smallest number of subjects")
    bench.add_argument("--p", type=_positive_int, default=250, help="Smallest number of variables")
    bench.add_argument("--doublings", type=_positive_int, default=2, help="Doublings of n and of p")
    bench.add_argument("--iterations", type=_positive_int, default=50, help="Boosting iterations per run")
    bench.add_argument("--repeats", type=_positive_int, default=1, help="Runs per grid point")
    bench.add_argument("--rate", type=float, default=DEFAULT_RATE, help="Boosting step size")
    bench.add_argument("--seed", type=int, default=0, help="Simulation seed")
    bench.add_argument("--timings", default=None, help="Also write the per-iteration timing table as CSV")
    _output_argument(bench, "report JSON")

    runs = commands.add_parser("runs", parents=[common], help="List fits registered in a run store")
    runs.add_argument("--store", choices=["file", "sqlite"], default="file", help="Run store backend")
    runs.add_argument("--store-path", default="./data", help="Directory of the run store")

    return parser
