from typing import Dict, Type, TypeVar
from .base_storage import BaseStorage
from .sqlite_storage import SQLiteStorage
from .file_storage import FileStorage
from survival_model.errors import ConfigurationError
from logger_config import get_logger

logger = get_logger("storage")

T_Run = TypeVar('T_Run')


class StorageFactory(BaseStorage[T_Run]):
    """
    Registry-based factory implementing the BaseStorage interface.
    Calls are delegated to the storage implementation chosen at construction.
    """
    # Class-level registry of storage types to their implementation classes
    _storage_registry: Dict[str, Type[BaseStorage]] = {}

    @classmethod
    def register_storage_type(cls, storage_type: str, storage_class: Type[BaseStorage]):
        """
        Register a new storage type and its implementation class.

        Args:
            storage_type: The name of the storage type (e.g., 'file', 'sqlite')
            storage_class: The class to instantiate for this storage type
        """
        cls._storage_registry[storage_type.lower()] = storage_class
        logger.debug(f"Registered storage type: {storage_type}")

    @classmethod
    def registered_types(cls):
        return sorted(cls._storage_registry)

    def __init__(self, storage_type: str = "file", **kwargs):
        """
        Initialize the storage factory with the specified storage type.

        Args:
            storage_type: Type of storage registered in the _storage_registry
            **kwargs: Arguments for the storage implementation

        Raises:
            ConfigurationError: If the storage type is not registered
        """
        self.storage_type = storage_type.lower()
        if self.storage_type not in self._storage_registry:
            registered_types = ", ".join(self.registered_types())
            raise ConfigurationError(f"Unknown storage type: {storage_type}. Registered types: {registered_types}")
        self._storage = self._storage_registry[self.storage_type](**kwargs)

    @property
    def backend(self) -> BaseStorage:
        return self._storage

    def save_fit(self, name, document):
        return self._storage.save_fit(name, document)

    def get_fit(self, name):
        return self._storage.get_fit(name)

    def list_fits(self):
        return self._storage.list_fits()

    def save_dataset(self, name, dataset):
        return self._storage.save_dataset(name, dataset)

    def get_dataset(self, name):
        return self._storage.get_dataset(name)

    @staticmethod
    def create_storage(storage_type: str = "file", **kwargs) -> BaseStorage:
        """
        Create a storage implementation of the specified type.

        Args:
            storage_type: Type of storage registered in the _storage_registry
            **kwargs: Arguments for the storage implementation

        Returns:
            Storage implementation
        """
        return StorageFactory(storage_type, **kwargs)


StorageFactory.register_storage_type("file", FileStorage)
StorageFactory.register_storage_type("sqlite", SQLiteStorage)
