from .base_storage import BaseStorage, RUN_COLUMNS
from .dataset_io import dataset_to_frame, frame_to_dataset, read_column, read_covariates, read_dataset, write_dataset
from .documents import (
    SCHEMA_VERSION,
    FitDocument,
    build_fit_document,
    read_fit,
    read_json_document,
    validate_document,
    write_fit,
    write_json_document,
)
from .file_storage import FileStorage
from .sqlite_storage import SQLiteStorage
from .storage_factory import StorageFactory

__all__ = [
    'BaseStorage', 'RUN_COLUMNS',
    'dataset_to_frame', 'frame_to_dataset', 'read_column', 'read_covariates', 'read_dataset', 'write_dataset',
    'SCHEMA_VERSION', 'FitDocument', 'build_fit_document', 'read_fit', 'read_json_document', 'validate_document',
    'write_fit', 'write_json_document',
    'FileStorage', 'SQLiteStorage', 'StorageFactory',
]
