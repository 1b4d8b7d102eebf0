"""
Unified logging for fortcover.

All modules log through children of the "fortcover" logger. Console output goes
through tqdm.write so bench progress bars are not torn by log lines.
"""

from __future__ import annotations

import logging
import sys
import time
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path
from typing import Dict, Iterator, Optional

from tqdm import tqdm

ROOT_LOGGER_NAME = "fortcover"
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

_configured = False


class TqdmLoggingHandler(logging.Handler):
    """Console handler that writes through tqdm so progress bars stay intact (stderr; stdout carries results)."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            tqdm.write(self.format(record), file=sys.stderr)
        except Exception:
            self.handleError(record)


def setup_logging(
    log_dir: Optional[Path] = None,
    level: str = "INFO",
    verbose: bool = False,
) -> logging.Logger:
    """
    Configure the package logger once.

    Args:
        log_dir: Optional directory for a daily log file (DEBUG level)
        level: Console level name (DEBUG, INFO, WARNING, ...)
        verbose: Force DEBUG on the console

    Returns:
        The "fortcover" logger
    """
    global _configured

    logger = logging.getLogger(ROOT_LOGGER_NAME)
    console_level = logging.DEBUG if verbose else getattr(logging, level.upper(), logging.INFO)
    logger.setLevel(logging.DEBUG if log_dir else console_level)

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    if not _configured:
        console = TqdmLoggingHandler()
        console.setLevel(console_level)
        console.setFormatter(formatter)
        logger.addHandler(console)
        logger.propagate = False
        _configured = True
    else:
        for handler in logger.handlers:
            if isinstance(handler, TqdmLoggingHandler):
                handler.setLevel(console_level)

    if log_dir:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        log_file = log_dir / f"fortcover_{datetime.now().strftime('%Y%m%d')}.log"
        already = any(
            isinstance(h, logging.FileHandler) and Path(h.baseFilename) == log_file.resolve()
            for h in logger.handlers
        )
        if not already:
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

    return logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Return the package logger or one of its children ("fortcover.<name>")."""
    if name is None:
        return logging.getLogger(ROOT_LOGGER_NAME)
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")


@contextmanager
def timed_step(step_name: str, timings: Optional[Dict[str, float]] = None) -> Iterator[None]:
    """
    Time a block, log it at DEBUG and accumulate elapsed milliseconds.

    Args:
        step_name: Phase name; also the key in timings
        timings: Optional dict collecting milliseconds per phase (summed across calls)
    """
    logger = get_logger("timing")
    logger.debug(f"[START] {step_name}")
    start = time.perf_counter()
    try:
        yield
    finally:
        elapsed_ms = (time.perf_counter() - start) * 1000.0
        if timings is not None:
            timings[step_name] = timings.get(step_name, 0.0) + elapsed_ms
        logger.debug(f"[END] {step_name} (took {elapsed_ms:.1f}ms)")
