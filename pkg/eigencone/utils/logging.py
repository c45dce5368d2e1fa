"""
Logging configuration for eigencone.

Every module logs under the "eigencone" namespace to standard error, so that the JSON and CSV
results a command writes to standard output stay machine-readable. With LOG_TO_FILE all module
loggers share one rotating file per day under logs/.
"""
import logging
import logging.handlers
from datetime import datetime
from pathlib import Path
from typing import Dict, Optional

from ..config import get_config

# Get configuration
config = get_config()
system_config = config["system"]
log_level_str = system_config["log_level"]
log_level = getattr(logging, log_level_str.upper(), logging.INFO)

log_dir = Path(config["paths"]["log_dir"])

ROOT_NAME = "eigencone"

_formatter = logging.Formatter(
    '%(asctime)s [%(levelname)s] %(name)s: %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S'
)


class EigenconeLogger:
    """
    Registry of eigencone loggers.

    Names without the "eigencone." prefix get it, so get_logger("transport") and
    get_logger("eigencone.transport") return the same logger.
    """

    _loggers: Dict[str, logging.Logger] = {}
    _file_handler: Optional[logging.Handler] = None

    @classmethod
    def _shared_file_handler(cls) -> logging.Handler:
        """The day's rotating log file, created on first use."""
        if cls._file_handler is None:
            log_dir.mkdir(exist_ok=True, parents=True)
            timestamp = datetime.now().strftime("%Y%m%d")
            handler = logging.handlers.RotatingFileHandler(
                log_dir / f"{ROOT_NAME}_{timestamp}.log", maxBytes=10*1024*1024, backupCount=5
            )
            handler.setFormatter(_formatter)
            cls._file_handler = handler
        return cls._file_handler

    @classmethod
    def get_logger(cls, name: str, file_logging: Optional[bool] = None) -> logging.Logger:
        """
        Get a logger instance.

        Args:
            name: Module name, with or without the eigencone prefix
            file_logging: Whether to log to file; defaults to the LOG_TO_FILE setting

        Returns:
            logging.Logger: Logger instance
        """
        if name != ROOT_NAME and not name.startswith(ROOT_NAME + "."):
            name = f"{ROOT_NAME}.{name}"
        if name in cls._loggers:
            return cls._loggers[name]

        if file_logging is None:
            file_logging = system_config["log_to_file"]

        logger = logging.getLogger(name)
        logger.setLevel(log_level)
        logger.propagate = False

        # Console handler (stderr)
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(_formatter)
        logger.addHandler(console_handler)

        if file_logging:
            logger.addHandler(cls._shared_file_handler())

        cls._loggers[name] = logger
        return logger

    @classmethod
    def set_level(cls, level: str) -> None:
        """
        Set the log level for all loggers.

        Args:
            level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        """
        new_level = getattr(logging, level.upper(), logging.INFO)
        for logger in cls._loggers.values():
            logger.setLevel(new_level)
            for handler in logger.handlers:
                handler.setLevel(new_level)


def log_numerics(logger: logging.Logger) -> None:
    """Record the numerical settings a run uses, at DEBUG."""
    if not logger.isEnabledFor(logging.DEBUG):
        return
    numerics = get_config()["numerics"]
    settings = ", ".join(f"{key}={value}" for key, value in sorted(numerics.items()))
    logger.debug(f"Numerical settings: {settings}")


# Module loggers
geometry_logger = EigenconeLogger.get_logger("geometry")
transport_logger = EigenconeLogger.get_logger("transport")
covering_logger = EigenconeLogger.get_logger("covering")
mechanics_logger = EigenconeLogger.get_logger("mechanics")
verification_logger = EigenconeLogger.get_logger("verification")
bench_logger = EigenconeLogger.get_logger("bench")
cli_logger = EigenconeLogger.get_logger("cli")
