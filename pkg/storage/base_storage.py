from abc import ABC, abstractmethod
from typing import Generic, Optional, TypeVar
import pandas as pd
from survival_model.dataset import SurvivalDataset
from .documents import FitDocument

# Type variable for the stored fit record of a backend
T_Run = TypeVar('T_Run')

RUN_COLUMNS = ["name", "created_at", "n", "p", "strata", "events", "iterations", "rule", "num_selected"]


class BaseStorage(ABC, Generic[T_Run]):
    """
    Abstract run registry: named fit documents and named datasets.
    The type parameter is the record a backend returns for a stored fit.
    """

    @abstractmethod
    def save_fit(self, name: str, document: FitDocument) -> T_Run:
        """
        Save or replace a fit document under a name.

        Args:
            name: Run name, unique within the store
            document: Fit document to store

        Returns:
            The stored run record
        """
        pass

    @abstractmethod
    def get_fit(self, name: str) -> Optional[FitDocument]:
        """
        Retrieve a stored fit document.

        Args:
            name: Run name

        Returns:
            FitDocument if found, None otherwise
        """
        pass

    @abstractmethod
    def list_fits(self) -> pd.DataFrame:
        """
        Summarize all stored fits.

        Returns:
            DataFrame with the columns of RUN_COLUMNS, oldest first
        """
        pass

    @abstractmethod
    def save_dataset(self, name: str, dataset: SurvivalDataset) -> None:
        """
        Save or replace a dataset under a name.

        Args:
            name: Dataset name
            dataset: Dataset to store
        """
        pass

    @abstractmethod
    def get_dataset(self, name: str) -> Optional[SurvivalDataset]:
        """
        Retrieve a stored dataset.

        Args:
            name: Dataset name

        Returns:
            SurvivalDataset if found, None otherwise
        """
        pass
