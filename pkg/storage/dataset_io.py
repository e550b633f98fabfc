from pathlib import Path
from typing import List, Optional, Sequence, Union
import numpy as np
import pandas as pd
from survival_model.dataset import SurvivalDataset, validate_dataset
from survival_model.errors import DataParseError, SurvivalDataError
from logger_config import get_logger

logger = get_logger("storage")

PathLike = Union[str, Path]


def _line(row: int) -> int:
    """1-based file line of a 0-based data row (the header is line 1)."""
    return row + 2


def _numeric_column(frame: pd.DataFrame, column: str) -> np.ndarray:
    values = frame[column]
    if pd.api.types.is_numeric_dtype(values):
        return values.to_numpy(dtype=float)
    parsed = pd.to_numeric(values, errors="coerce")
    bad = np.flatnonzero(parsed.isna().to_numpy())
    if bad.size:
        row = int(bad[0])
        raise DataParseError(f"line {_line(row)}, column '{column}': cannot parse '{values.iloc[row]}' as a number",
                             row=row, column=column)
    # numpy parses strings with correct rounding, so written values read back exactly
    return values.to_numpy(dtype=str).astype(float)


def _is_numeric(values: pd.Series) -> bool:
    if pd.api.types.is_numeric_dtype(values):
        return True
    return not pd.to_numeric(values, errors="coerce").isna().any()


def _stratum_values(values: pd.Series) -> list:
    """Stratum labels, as integers when every label is an integer."""
    parsed = pd.to_numeric(values, errors="coerce")
    if not parsed.isna().any() and np.all(parsed == np.round(parsed)):
        return [int(v) for v in parsed]
    return values.astype(str).tolist()


def frame_to_dataset(frame: pd.DataFrame, time_column: str = "time", status_column: str = "status",
                     stratum_column: Optional[str] = None,
                     covariate_columns: Optional[Sequence[str]] = None) -> SurvivalDataset:
    """
    Build a dataset from a table with declared column roles.

    Args:
        frame: Table with one row per subject; cells may be numbers or text
        time_column: Column of observed times
        status_column: Column of event indicators
        stratum_column: Optional column of stratum labels, absent means one stratum
        covariate_columns: Covariate columns; all remaining numeric columns when omitted

    Returns:
        Validated SurvivalDataset

    Raises:
        DataParseError: On a missing column or a cell that is not a number, naming its line
        SurvivalDataError: On validation failures of the parsed values
    """
    roles = [time_column, status_column] + ([stratum_column] if stratum_column else [])
    missing = [c for c in roles + list(covariate_columns or []) if c not in frame.columns]
    if missing:
        raise DataParseError(f"missing column(s): {', '.join(missing)}", column=missing[0])

    if covariate_columns is None:
        covariate_columns = []
        for column in frame.columns:
            if column in roles:
                continue
            if _is_numeric(frame[column]):
                covariate_columns.append(column)
            else:
                logger.warning(f"Skipping non-numeric column '{column}'")
    covariate_columns = list(covariate_columns)

    time = _numeric_column(frame, time_column)
    status = _numeric_column(frame, status_column)
    if covariate_columns:
        covariates = np.column_stack([_numeric_column(frame, c) for c in covariate_columns])
    else:
        raise DataParseError("no covariate columns")
    stratum = None if stratum_column is None else _stratum_values(frame[stratum_column])
    try:
        return validate_dataset(time, status, covariates, stratum=stratum, variable_names=covariate_columns)
    except SurvivalDataError as e:
        if e.row is None:
            raise
        raise DataParseError(f"line {_line(e.row)}: {e}", row=e.row, column=e.column) from e


def read_dataset(path: PathLike, time_column: str = "time", status_column: str = "status",
                 stratum_column: Optional[str] = None,
                 covariate_columns: Optional[Sequence[str]] = None) -> SurvivalDataset:
    """
    Read a comma-separated file with a header row into a validated dataset.

    Args:
        path: CSV file
        time_column: Column of observed times
        status_column: Column of event indicators
        stratum_column: Optional stratum column
        covariate_columns: Explicit covariates; all remaining numeric columns when omitted

    Returns:
        SurvivalDataset

    Raises:
        DataParseError: On malformed files, duplicate header names or unparsable cells
        OSError: If the file cannot be read
    """
    path = Path(path)
    try:
        header = pd.read_csv(path, header=None, nrows=1, dtype=str, keep_default_na=False).iloc[0].tolist()
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise DataParseError(f"{path}: file is empty, a header row is required") from None
    except pd.errors.ParserError as e:
        raise DataParseError(f"{path}: {e}") from None
    duplicates = sorted({name for name in header if header.count(name) > 1})
    if duplicates:
        raise DataParseError(f"{path}: duplicate header name(s): {', '.join(duplicates)}", column=duplicates[0])

    dataset = frame_to_dataset(frame, time_column, status_column, stratum_column, covariate_columns)
    logger.info(f"Read {path}: n={dataset.n}, p={dataset.p}, G={dataset.num_strata}, d={dataset.num_events}")
    return dataset


def dataset_to_frame(dataset: SurvivalDataset, time_column: str = "time", status_column: str = "status",
                     stratum_column: Optional[str] = "stratum") -> pd.DataFrame:
    """Table with the role columns first, then one column per covariate."""
    columns = {
        time_column: dataset.time,
        status_column: dataset.status.astype(int),
    }
    if stratum_column is not None:
        columns[stratum_column] = [dataset.stratum_labels[g] for g in dataset.stratum]
    frame = pd.DataFrame(columns)
    covariates = pd.DataFrame(dataset.covariates, columns=list(dataset.variable_names))
    return pd.concat([frame, covariates], axis=1)


def write_dataset(dataset: SurvivalDataset, path: PathLike, stratum_column: Optional[str] = "stratum") -> Path:
    """
    Write a dataset as CSV: time, status, stratum, then the covariates.

    Floats are written in their shortest round-trip form.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    dataset_to_frame(dataset, stratum_column=stratum_column).to_csv(path, index=False, encoding="utf-8",
                                                                     lineterminator="\n")
    logger.info(f"Wrote dataset {dataset!r} to {path}")
    return path


def read_covariates(path: PathLike, variable_names: Sequence[str]) -> np.ndarray:
    """
    Read the named covariate columns of a CSV file, in the given order.

    Used to score data that may lack time and status columns.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise DataParseError(f"{path}: file is empty, a header row is required") from None
    missing: List[str] = [name for name in variable_names if name not in frame.columns]
    if missing:
        raise DataParseError(f"{path}: missing fitted variable column(s): {', '.join(missing)}", column=missing[0])
    covariates = np.column_stack([_numeric_column(frame, name) for name in variable_names])
    bad_rows, bad_cols = np.nonzero(~np.isfinite(covariates))
    if bad_rows.size:
        row, column = int(bad_rows[0]), variable_names[int(bad_cols[0])]
        raise DataParseError(f"line {_line(row)}, column '{column}': not a finite number", row=row, column=column)
    return covariates


def read_column(path: PathLike, column: str) -> list:
    """
    One column of a CSV file as integers, floats or text.

    Integers are returned when every cell is integral, floats when every cell
    is numeric, and the raw text otherwise.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise DataParseError(f"{path}: file is empty, a header row is required") from None
    if column not in frame.columns:
        raise DataParseError(f"{path}: missing column '{column}'", column=column)
    parsed = pd.to_numeric(frame[column], errors="coerce")
    if parsed.isna().any():
        return frame[column].tolist()
    if np.all(parsed == np.round(parsed)):
        return [int(v) for v in parsed]
    return [float(v) for v in parsed]
