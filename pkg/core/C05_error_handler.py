# ====================================================================================================
# C05_error_handler.py
# ----------------------------------------------------------------------------------------------------
# Project exception hierarchy, CLI exit codes and global error handling.
#
# Purpose:
#   - Define the exceptions raised by the data model, split metrics, stream sources and CLI.
#   - Map exceptions onto the CLI's documented exit codes.
#   - Log errors consistently (handle_error) and install a global hook for uncaught exceptions.
#
# Usage:
#   from core.C05_error_handler import (
#       SchemaViolationError,
#       ConfigValidationError,
#       exit_code_for,
#       handle_error,
#   )
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-11-18
# Project:      streamtree (Hoeffding / Anytime tree experiments)
# ====================================================================================================


# ====================================================================================================
# 1. SYSTEM IMPORTS
# ----------------------------------------------------------------------------------------------------
# These imports (sys, pathlib.Path) are required to correctly initialise the project environment,
# ensure the core library can be imported safely (including C00_set_packages.py),
# and prevent project-local paths from overriding installed site-packages.
# ----------------------------------------------------------------------------------------------------

# --- Future behaviour & type system enhancements -----------------------------------------------------
from __future__ import annotations           # Future-proof type hinting (PEP 563 / PEP 649)

# --- Required for dynamic path handling and safe importing of core modules ---------------------------
import sys                                   # Python interpreter access (path, environment, runtime)
from pathlib import Path                     # Modern, object-oriented filesystem path handling

# --- Ensure project root DOES NOT override site-packages --------------------------------------------
project_root = str(Path(__file__).resolve().parent.parent)
if project_root not in sys.path:
    sys.path.append(project_root)

# --- Remove '' (current working directory) which can shadow installed packages -----------------------
if "" in sys.path:
    sys.path.remove("")

# --- Prevent creation of __pycache__ folders ---------------------------------------------------------
sys.dont_write_bytecode = True


# ====================================================================================================
# 2. PROJECT IMPORTS
# ----------------------------------------------------------------------------------------------------
# Bring in shared external and standard-library packages from the central import hub.
#
# CRITICAL ARCHITECTURE RULE:
#   ALL external (and commonly-used standard-library) packages must be imported exclusively via:
#       from core.C00_set_packages import *
#   No other script may import external libraries directly.
# ----------------------------------------------------------------------------------------------------
from core.C00_set_packages import *

# --- Initialise module-level logger -----------------------------------------------------------------
from core.C03_logging_handler import get_logger, log_exception, init_logging
logger = get_logger(__name__)

# --- Additional project-level imports (append below this line only) ----------------------------------
from core.C04_config_loader import get_config


# ====================================================================================================
# 3. EXIT CODES
# ----------------------------------------------------------------------------------------------------
EXIT_SUCCESS: int = 0
EXIT_FAILURE: int = 1
EXIT_INVALID_CONFIG: int = 2
EXIT_NOT_CONVERGED: int = 3


# ====================================================================================================
# 4. EXCEPTION HIERARCHY
# ----------------------------------------------------------------------------------------------------
class StreamTreeError(Exception):
    """Base class for every error raised by this project."""

    exit_code: int = EXIT_FAILURE


class SchemaViolationError(StreamTreeError, ValueError):
    """An instance or schema declaration does not satisfy the schema invariants."""


class UndefinedBoundError(StreamTreeError, ValueError):
    """The Hoeffding bound was requested before any example reached the node (n = 0)."""


class EmptyReportError(StreamTreeError, ValueError):
    """A merit report was requested over an empty candidate set."""


class EndOfStreamError(StreamTreeError, IndexError):
    """A stream was asked for a timestep at or beyond its length."""


class StreamLoadError(StreamTreeError, ValueError):
    """A CSV stream could not be loaded (empty, ragged, unknown values, bad schema)."""

    exit_code = EXIT_INVALID_CONFIG


class ConfigValidationError(StreamTreeError, ValueError):
    """Hyperparameters, stream parameters or CLI flags violate their invariants."""

    exit_code = EXIT_INVALID_CONFIG


class OutputPathError(StreamTreeError, OSError):
    """An output file or directory could not be written."""

    exit_code = EXIT_INVALID_CONFIG


def exit_code_for(exception: BaseException) -> int:
    """
    Description:
        Maps an exception onto the CLI exit code contract.

    Args:
        exception (BaseException): The exception raised by a command.

    Returns:
        int: 2 for configuration / input / output-path problems, 1 for anything else.

    Raises:
        None.
    """
    if isinstance(exception, StreamTreeError):
        return exception.exit_code
    if isinstance(exception, (PermissionError, IsADirectoryError, NotADirectoryError, FileExistsError)):
        return EXIT_INVALID_CONFIG
    return EXIT_FAILURE


# ====================================================================================================
# 5. GLOBAL ERROR HANDLING FUNCTIONS
# ----------------------------------------------------------------------------------------------------
def handle_error(exception: Exception, context: str = "", fatal: bool = False) -> None:
    """
    Description:
        Handles an exception by logging it and optionally triggering a fatal exit
        depending on configuration settings.

    Args:
        exception (Exception): The exception object to be handled.
        context (str, optional): Where the error occurred.
        fatal (bool, optional): Whether the error should be treated as fatal. If True,
            behaviour depends on CONFIG["error_handling"]["exit_on_fatal"].

    Returns:
        None.

    Raises:
        SystemExit: If fatal=True and configuration enables fatal exiting. The exit status is
            exit_code_for(exception).

    Notes:
        - All exceptions are logged with full traceback via log_exception().
    """
    log_exception(exception, context=context)

    exit_on_fatal = get_config("error_handling", "exit_on_fatal", default=False)
    if fatal and exit_on_fatal:
        logger.error("💀 Fatal error encountered. Exiting application.")
        sys.exit(exit_code_for(exception))


def global_exception_hook(exc_type, exc_value, exc_traceback) -> None:
    """
    Description:
        Global fallback handler for uncaught exceptions. Installed via
        install_global_exception_hook().

    Args:
        exc_type (type): The exception class.
        exc_value (Exception): The exception instance.
        exc_traceback (TracebackType): The associated traceback.

    Returns:
        None.

    Raises:
        None.

    Notes:
        - KeyboardInterrupt is passed through cleanly to avoid noisy logs.
    """
    if issubclass(exc_type, KeyboardInterrupt):
        logger.info("🛑 Experiment interrupted by user (Ctrl+C).")
        sys.__excepthook__(exc_type, exc_value, exc_traceback)
        return

    logger.error("❌ Unhandled Exception", exc_info=(exc_type, exc_value, exc_traceback))
    handle_error(exc_value, context="Unhandled Exception", fatal=True)


def install_global_exception_hook() -> None:
    """Replaces sys.excepthook so uncaught exceptions are logged consistently."""
    sys.excepthook = global_exception_hook
    logger.debug("🛡️ Global exception hook installed.")


# ====================================================================================================
# 6. MAIN EXECUTION (STANDALONE TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging(log_to_file=False)
    logger.info("C05_error_handler self-test started.")
    install_global_exception_hook()

    for sample in (
        SchemaViolationError("value 7 out of range for attribute 'a0' (v=5)"),
        ConfigValidationError("--classes must be >= 2"),
        EndOfStreamError("t=10 >= length=10"),
        RuntimeError("unexpected"),
    ):
        try:
            raise sample
        except Exception as error:
            handle_error(error, context="During standalone test")
            logger.info("%s -> exit code %s", type(error).__name__, exit_code_for(error))

    logger.info("C05_error_handler self-test complete.")
