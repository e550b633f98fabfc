import sys
from argparse import Namespace
from pathlib import Path
from typing import Optional
import jsonschema
import numpy as np
import pandas as pd
from boosting.config import BoostingConfig, DEFAULT_MAX_ITERATIONS
from boosting.runner import run_boosting
from boosting.stopping_rules import StoppingRule, create_stopping_rule
from post_selection.inference import refit_inference
from post_selection.prediction import hazard_ratios
from post_selection.stability import stability_selection
from post_selection.strata_summary import strata_summary
from simulation.config import SimulationConfig
from simulation.metrics import selection_metrics
from simulation.simulator import simulate_survival_cox
from storage.dataset_io import read_column, read_covariates, read_dataset, write_dataset
from storage.documents import (
    build_fit_document,
    dumps_document,
    read_fit,
    read_json_document,
    validate_document,
    write_json_document,
)
from storage.storage_factory import StorageFactory
from survival_model.dataset import SurvivalDataset
from survival_model.errors import DataParseError, SurvivalDataError
from .bench import run_bench
from logger_config import get_logger

logger = get_logger("strata_cli")


def emit_document(document: dict, out: Optional[str], schema: str) -> None:
    """Validate a result document and write it to a file or standard output."""
    if out:
        write_json_document(document, out, schema=schema)
    else:
        validate_document(document, schema)
        sys.stdout.write(dumps_document(document))


def emit_table(frame: pd.DataFrame, out: Optional[str]) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(out, index=False, encoding="utf-8", lineterminator="\n")
        logger.info(f"Wrote {len(frame)} rows to {out}")
    else:
        sys.stdout.write(frame.to_csv(index=False, lineterminator="\n"))


def load_dataset(args: Namespace) -> SurvivalDataset:
    return read_dataset(args.data, time_column=args.time, status_column=args.status,
                        stratum_column=args.stratum, covariate_columns=args.covariates)


def stopping_rule_from_args(args: Namespace) -> StoppingRule:
    """Stopping rule named by --stop, with the parameters that rule takes."""
    iterations = args.iterations if args.iterations is not None else DEFAULT_MAX_ITERATIONS
    params = {
        "fixed": {"iterations": iterations},
        "num-selected": {"target": args.target},
        "likelihood": {"alpha": args.alpha},
        "ebic": {"gamma": args.gamma},
        "cv": {"folds": args.folds, "max_iterations": args.max_iterations, "seed": args.seed},
    }.get(args.stop, {})
    return create_stopping_rule(args.stop, **params)


def simulate(args: Namespace, threads: int) -> int:
    config = SimulationConfig.from_dict(read_json_document(args.config))
    simulated = simulate_survival_cox(config, seed=args.seed)
    out = write_dataset(simulated.dataset, args.out)
    truth = Path(args.truth) if args.truth else out.with_suffix(".truth.json")
    write_json_document(simulated.truth_document(), truth, schema="truth")
    return 0


def fit(args: Namespace, threads: int) -> int:
    dataset = load_dataset(args)
    config = BoostingConfig(rate=args.rate, max_iterations=args.max_iterations, workers=threads)
    result = run_boosting(dataset, config, stopping_rule_from_args(args))
    document = build_fit_document(result, dataset, include_trace=args.trace)
    emit_document(document.to_dict(), args.out, "fit_document")
    if args.store:
        storage = StorageFactory.create_storage(args.store, path=args.store_path)
        name = args.name or Path(args.data).stem
        storage.save_dataset(name, dataset)
        storage.save_fit(name, document)
    return 0


def predict(args: Namespace, threads: int) -> int:
    document = read_fit(args.fit)
    covariates = read_covariates(args.data, document.variable_names)
    ratios = hazard_ratios(document.beta_vector, np.asarray(document.covariate_means), covariates)
    emit_table(pd.DataFrame({"row": np.arange(1, len(ratios) + 1), "hazard_ratio": ratios}), args.out)
    return 0


def inference(args: Namespace, threads: int) -> int:
    document = read_fit(args.fit)
    if not document.selected:
        raise SurvivalDataError(f"{args.fit}: the fit selected no variables, nothing to refit")
    table = refit_inference(load_dataset(args), document.selected)
    emit_document(table.to_dict(), args.out, "inference_table")
    return 0


def stability(args: Namespace, threads: int) -> int:
    dataset = load_dataset(args)
    config = BoostingConfig(rate=args.rate, max_iterations=args.max_iterations)
    result = stability_selection(dataset, config, stopping_rule_from_args(args), subsamples=args.subsamples,
                                 threshold=args.threshold, seed=args.seed, workers=threads,
                                 progress=args.progress)
    emit_document(result.to_dict(), args.out, "stability_result")
    return 0


def summarize_strata(args: Namespace, threads: int) -> int:
    times = read_covariates(args.data, [args.time])[:, 0]
    summary = strata_summary(read_column(args.data, args.var), times)
    emit_document(summary.to_dict(), args.out, "strata_summary")
    return 0


def metrics(args: Namespace, threads: int) -> int:
    document = read_fit(args.fit)
    truth = read_json_document(args.truth)
    try:
        validate_document(truth, "truth")
    except jsonschema.ValidationError as e:
        raise DataParseError(f"{args.truth}: not a truth document: {e.message}") from None
    if truth["variable_names"] != document.variable_names:
        raise SurvivalDataError("the fit and the truth document name different variables")
    emit_document(selection_metrics(document.beta, truth["true_beta"]).to_dict(), args.out, "selection_metrics")
    return 0


def bench(args: Namespace, threads: int) -> int:
    points, timings = run_bench(n=args.n, p=args.p, doublings=args.doublings, iterations=args.iterations,
                                repeats=args.repeats, rate=args.rate, seed=args.seed, workers=threads)
    if args.timings:
        emit_table(timings, args.timings)
    report = {
        "iterations": args.iterations,
        "repeats": args.repeats,
        "seed": args.seed,
        "grid": [point._asdict() for point in points],
    }
    emit_document(report, args.out, "bench_report")
    return 0


def runs(args: Namespace, threads: int) -> int:
    storage = StorageFactory.create_storage(args.store, path=args.store_path)
    emit_table(storage.list_fits(), None)
    return 0


COMMANDS = {
    "simulate": simulate,
    "fit": fit,
    "cv": fit,
    "predict": predict,
    "inference": inference,
    "stability": stability,
    "strata-summary": summarize_strata,
    "metrics": metrics,
    "bench": bench,
    "runs": runs,
}
