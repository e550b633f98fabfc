import os
import re

from survival_model.errors import SurvivalDataError


class FileUtils:
    @staticmethod
    def sanitize_name(name: str, max_length: int = 100) -> str:
        """
        Turn a run or dataset name into a safe file stem and table suffix.

        Args:
            name: The requested name
            max_length: Maximum allowed length

        Returns:
            The name with every character outside [A-Za-z0-9_.-] replaced by '_'

        Raises:
            SurvivalDataError: If nothing usable remains
        """
        sanitized = re.sub(r'[^A-Za-z0-9_.-]', '_', name.strip())[:max_length]
        # Leading dots would hide files
        sanitized = sanitized.lstrip('.')
        if not sanitized:
            raise SurvivalDataError(f"invalid run name: {name!r}")
        return sanitized

    @staticmethod
    def database_file(path: str, db_name: str) -> str:
        """Path of the SQLite file for a database name inside a directory."""
        return os.path.join(path, f"{FileUtils.sanitize_name(db_name)}.db")
