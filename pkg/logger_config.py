from pathlib import Path
import logging
import os

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(processName)s - %(message)s"


def _default_level() -> int:
    level = logging.getLevelName(os.getenv("STRATA_BOOST_LOG_LEVEL", "INFO").upper())
    return level if isinstance(level, int) else logging.INFO


def get_logger(log_name: str, level=None, stream: bool = False) -> logging.Logger:
    log_dir = Path(os.getenv("STRATA_BOOST_LOG_DIR", Path.cwd() / "data" / "logs"))
    log_dir.mkdir(parents=True, exist_ok=True)
    log_path = log_dir / f"{log_name}.log"

    logger = logging.getLogger(log_name)
    logger.setLevel(level if level is not None else _default_level())
    formatter = logging.Formatter(LOG_FORMAT)

    if not logger.hasHandlers():
        file_handler = logging.FileHandler(log_path, encoding='utf-8')
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    # --verbose can ask for the terminal after the logger already exists
    if stream and not any(type(h) is logging.StreamHandler for h in logger.handlers):
        stream_handler = logging.StreamHandler()
        stream_handler.setFormatter(formatter)
        logger.addHandler(stream_handler)

    return logger
