"""
JSON documents of fits and results
----------------------------------
Every structured result is written as UTF-8 JSON with two-space indentation
and a trailing newline. Floats use their shortest round-trip form, so a
document read back and written again is byte-identical.
"""
import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Union
import jsonschema
import numpy as np
import pandas as pd
from boosting.fit import BoostingFit
from boosting.trace import coefficient_path, selection_frequency
from survival_model.dataset import SurvivalDataset
from survival_model.errors import DataParseError, SchemaVersionError
from logger_config import get_logger

logger = get_logger("storage")

SCHEMA_VERSION = 1
SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"

PathLike = Union[str, Path]


class FitDocument(NamedTuple):
    """Machine-readable form of a boosting fit."""
    schema_version: int
    variable_names: List[str]
    coefficients: Dict[str, float]
    beta: List[float]
    iterations: int
    stopping_rule: Dict[str, Any]
    stop_reason: str
    log_likelihood: float
    rate: float
    dataset: Dict[str, int]
    covariate_means: List[float]
    criterion_history: Optional[Dict[str, Any]] = None
    trace: Optional[Dict[str, Any]] = None

    @property
    def beta_vector(self) -> np.ndarray:
        return np.asarray(self.beta, dtype=float)

    @property
    def selected(self) -> List[str]:
        return list(self.coefficients)

    def to_dict(self) -> Dict[str, Any]:
        return self._asdict()

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> "FitDocument":
        version = document.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaVersionError(f"unknown fit document schema version {version!r}, expected {SCHEMA_VERSION}")
        try:
            return cls(**document)
        except TypeError as e:
            raise DataParseError(f"malformed fit document: {e}") from None


def trace_document(fit: BoostingFit) -> Dict[str, Any]:
    """Selection counts, first selections and coefficient path breakpoints of a fit."""
    frequency = selection_frequency(fit.trace, fit.variable_names)
    paths = coefficient_path(fit.trace)
    return {
        "selection_counts": {name: int(count) for name, count in zip(frequency["variable"], frequency["count"])},
        "first_selected": {
            name: int(first)
            for name, first in zip(frequency["variable"], frequency["first_selected"]) if pd.notna(first)
        },
        "log_likelihoods": [float(v) for v in fit.trace.log_likelihoods],
        "paths": {
            fit.variable_names[j]: [[int(m), float(value)] for m, value in breakpoints]
            for j, breakpoints in sorted(paths.items())
        },
    }


def build_fit_document(fit: BoostingFit, dataset: SurvivalDataset, include_trace: bool = False) -> FitDocument:
    """
    Describe a fit together with the data it was trained on.

    Args:
        fit: Boosting fit
        dataset: Training data, for its fingerprint and covariate means
        include_trace: Add selection counts and coefficient paths

    Returns:
        FitDocument
    """
    return FitDocument(
        schema_version=SCHEMA_VERSION,
        variable_names=list(fit.variable_names),
        coefficients=fit.coefficients,
        beta=[float(b) for b in fit.beta],
        iterations=fit.iterations_run,
        stopping_rule=fit.stopping_rule.to_dict(),
        stop_reason=fit.stop_reason,
        log_likelihood=float(fit.log_likelihood),
        rate=float(fit.rate),
        dataset=dataset.fingerprint(),
        covariate_means=[float(m) for m in dataset.covariates.mean(axis=0)],
        criterion_history=None if fit.criterion_history is None else fit.criterion_history.to_dict(),
        trace=trace_document(fit) if include_trace else None,
    )


@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    with open(SCHEMA_DIR / f"{name}.schema.json", "r", encoding="utf-8") as f:
        return json.load(f)


def validate_document(document: Dict[str, Any], schema: str) -> None:
    """
    Check a document against a schema shipped in the schemas directory.

    Raises:
        jsonschema.ValidationError: If the document does not match
    """
    jsonschema.validate(document, load_schema(schema))


def dumps_document(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2, allow_nan=False, ensure_ascii=False) + "\n"


def write_json_document(document: Dict[str, Any], path: PathLike, schema: Optional[str] = None) -> Path:
    """
    Write a JSON document, validating it first when a schema name is given.

    Args:
        document: JSON-compatible dictionary without NaN or infinite values
        path: Output file
        schema: Name of the schema file (without ``.schema.json``)

    Returns:
        The written path
    """
    if schema is not None:
        validate_document(document, schema)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps_document(document))
    logger.info(f"Wrote {schema or 'document'} to {path}")
    return path


def read_json_document(path: PathLike) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise DataParseError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def write_fit(document: FitDocument, path: PathLike) -> Path:
    return write_json_document(document.to_dict(), path, schema="fit_document")


def read_fit(path: PathLike) -> FitDocument:
    """
    Read a fit document.

    Raises:
        SchemaVersionError: If the document carries another schema version
        DataParseError: If the file is not a valid fit document
    """
    return FitDocument.from_dict(read_json_document(path))
