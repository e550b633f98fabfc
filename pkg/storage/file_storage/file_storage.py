from pathlib import Path
from typing import Optional
from datetime import datetime, timezone
import pandas as pd
from survival_model.dataset import SurvivalDataset
from ..base_storage import BaseStorage, RUN_COLUMNS
from ..dataset_io import read_dataset, write_dataset
from ..documents import FitDocument, read_fit, write_fit
from ..file_util import FileUtils
from .models import FileFitRun
from logger_config import get_logger

logger = get_logger("storage")


# File-based implementation of the storage interface
class FileStorage(BaseStorage[FileFitRun]):
    """Directory-backed run registry: fits/<name>.json and datasets/<name>.csv."""

    def __init__(self, path: str = "./data"):
        """
        Initialize storage with a base path.

        Args:
            path: Base directory path for storing fits and datasets
        """
        self.base_path = Path(path)
        self.fits_path = self.base_path / "fits"
        self.datasets_path = self.base_path / "datasets"
        self.fits_path.mkdir(parents=True, exist_ok=True)
        self.datasets_path.mkdir(parents=True, exist_ok=True)
        logger.info(f"Initialized file storage at: {self.base_path}")

    def _fit_file(self, name: str) -> Path:
        return self.fits_path / f"{FileUtils.sanitize_name(name)}.json"

    def _dataset_file(self, name: str) -> Path:
        return self.datasets_path / f"{FileUtils.sanitize_name(name)}.csv"

    def save_fit(self, name: str, document: FitDocument) -> FileFitRun:
        """Save a fit document as JSON."""
        fit_file = write_fit(document, self._fit_file(name))
        logger.info(f"Saved fit: {name}")
        return FileFitRun(
            name=fit_file.stem,
            path=str(fit_file),
            created_at=datetime.fromtimestamp(fit_file.stat().st_mtime, tz=timezone.utc),
            document=document,
        )

    def get_fit(self, name: str) -> Optional[FitDocument]:
        """Load a fit document from its JSON file."""
        fit_file = self._fit_file(name)
        if not fit_file.exists():
            return None
        return read_fit(fit_file)

    def list_fits(self) -> pd.DataFrame:
        rows = []
        for fit_file in sorted(self.fits_path.glob("*.json")):
            document = read_fit(fit_file)
            rows.append({
                "name": fit_file.stem,
                "created_at": datetime.fromtimestamp(fit_file.stat().st_mtime, tz=timezone.utc),
                "n": document.dataset["n"],
                "p": document.dataset["p"],
                "strata": document.dataset["strata"],
                "events": document.dataset["events"],
                "iterations": document.iterations,
                "rule": document.stopping_rule["rule"],
                "num_selected": len(document.coefficients),
            })
        frame = pd.DataFrame(rows, columns=RUN_COLUMNS)
        return frame.sort_values(["created_at", "name"], kind="stable").reset_index(drop=True)

    def save_dataset(self, name: str, dataset: SurvivalDataset) -> None:
        write_dataset(dataset, self._dataset_file(name))
        logger.info(f"Saved dataset: {name}")

    def get_dataset(self, name: str) -> Optional[SurvivalDataset]:
        dataset_file = self._dataset_file(name)
        if not dataset_file.exists():
            return None
        return read_dataset(dataset_file, stratum_column="stratum")
