"""
Logging for the analyzer.

Every module logs through a child of the "modco" logger:

    log = get_logger("coincidence.graph")

Console messages go to stderr so text and JSON reports on stdout stay
machine-readable. A rotating DEBUG file log is added when
config.LOG_TO_FILE is set (the default); the CLI's -v lowers the console
threshold to DEBUG.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

import config

ROOT = "modco"
FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s.%(funcName)s:%(lineno)d | %(message)s"
DATEFMT = "%Y-%m-%d %H:%M:%S"


def _level(name: str) -> int:
    return getattr(logging, name.upper(), logging.INFO)


def _console_handler(level: int, fmt: logging.Formatter) -> logging.Handler:
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name("console")
    handler.setLevel(level)
    handler.setFormatter(fmt)
    return handler


def _file_handler(path: Path, fmt: logging.Formatter) -> logging.Handler:
    path.parent.mkdir(parents=True, exist_ok=True)
    handler = RotatingFileHandler(
        filename=str(path),
        maxBytes=10 * 1024 * 1024,  # 10 MB
        backupCount=5,
        encoding="utf-8",
    )
    handler.set_name("file")
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(fmt)
    return handler


def setup_logger(
    log_level: str | None = None,
    log_file: str | None = None,
    to_file: bool | None = None,
) -> logging.Logger:
    """
    Configure the root analyzer logger once; later calls return it unchanged.

    Args:
        log_level: Console threshold (defaults to config.LOG_LEVEL).
        log_file: File path (defaults to config.LOG_FILE).
        to_file: Whether to attach the file handler (defaults to config.LOG_TO_FILE).
    """
    root = logging.getLogger(ROOT)
    if root.handlers:
        return root

    root.setLevel(logging.DEBUG)
    root.propagate = False
    fmt = logging.Formatter(fmt=FORMAT, datefmt=DATEFMT)
    root.addHandler(_console_handler(_level(log_level or config.LOG_LEVEL), fmt))

    if config.LOG_TO_FILE if to_file is None else to_file:
        try:
            root.addHandler(_file_handler(Path(log_file or config.LOG_FILE), fmt))
        except OSError as exc:
            # read-only checkout: keep console logging only
            root.warning("File logging disabled: %s", exc)
    return root


def set_console_level(log_level: str) -> None:
    """Change the console threshold (CLI -v)."""
    for handler in setup_logger().handlers:
        if handler.get_name() == "console":
            handler.setLevel(_level(log_level))


def get_logger(module_name: str) -> logging.Logger:
    """Child logger "modco.<module_name>", configuring the root on first use."""
    setup_logger()
    return logging.getLogger(f"{ROOT}.{module_name}")
