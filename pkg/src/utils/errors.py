"""
Error types and error-handling decorators.

Every failure the library raises on purpose derives from FortcoverError so the CLI
can map it to an exit code without catching programming errors.
"""

from __future__ import annotations

import time
from functools import wraps
from typing import Any, Callable, Optional

from .logging_helpers import get_logger


class FortcoverError(Exception):
    """Base class for all fortcover errors."""


class GraphParseError(FortcoverError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class GraphValidationError(FortcoverError):
    """Input that parses but is not a simple graph (loops, parallel edges, unknown labels)."""


class StructuralError(FortcoverError):
    """A model or method was applied to a graph outside its preconditions."""


class OracleLimitError(FortcoverError):
    """Brute-force oracle refused an instance above its size cap."""


class BackendError(FortcoverError):
    """Solver backend failed or returned an assignment that does not verify."""


class ConfigurationError(FortcoverError):
    """Invalid option or environment value."""


class DatasetError(FortcoverError):
    """Instance file missing, not downloadable, or failing its checksum."""


class FormulaError(FortcoverError):
    """Malformed DIMACS input or a clause that is not a 3-literal clause."""


def handle_errors(
    reraise: bool = False,
    default_return: Any = None,
    log_error: bool = True,
):
    """
    Decorator that logs exceptions raised by the wrapped function.

    Args:
        reraise: Re-raise after logging instead of returning default_return
        default_return: Value returned when the exception is swallowed
        log_error: Log the exception with traceback
    """
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except Exception as e:
                if log_error:
                    get_logger("errors").error(f"Error in {func.__name__}: {e}", exc_info=True)
                if reraise:
                    raise
                return default_return
        return wrapper
    return decorator


def retry_on_error(
    max_retries: int = 3,
    delay: float = 1.0,
    backoff: float = 2.0,
    exceptions: tuple = (Exception,),
):
    """
    Decorator to retry a function with exponential backoff.

    Args:
        max_retries: Total attempts before giving up
        delay: Initial delay between attempts (seconds)
        backoff: Multiplier applied to the delay after each failure
        exceptions: Exception types that trigger a retry
    """
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_logger("errors")
            current_delay = delay
            for attempt in range(1, max_retries + 1):
                try:
                    return func(*args, **kwargs)
                except exceptions as e:
                    if attempt == max_retries:
                        logger.error(f"{func.__name__} failed after {max_retries} attempts: {e}")
                        raise
                    logger.warning(
                        f"{func.__name__} failed (attempt {attempt}/{max_retries}): {e}. "
                        f"Retrying in {current_delay:.1f}s..."
                    )
                    time.sleep(current_delay)
                    current_delay *= backoff
        return wrapper
    return decorator
