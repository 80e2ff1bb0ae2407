# ====================================================================================================
# C06_validation_utils.py
# ----------------------------------------------------------------------------------------------------
# Validation helpers for files, directories and numeric parameters.
#
# Purpose:
#   - Validate input files and output directories before an experiment starts.
#   - Validate hyperparameters and stream parameters against their invariants, raising
#     ConfigValidationError (CLI exit code 2) with a message naming the offending parameter.
#   - Log aggregated PASS/FAIL reports.
#
# Usage:
#   from core.C06_validation_utils import (
#       validate_file_exists,
#       validate_writable_directory,
#       validate_open_probability,
#       validate_min_int,
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
from core.C05_error_handler import ConfigValidationError, OutputPathError
# ====================================================================================================


# ====================================================================================================
# 3. FILE & DIRECTORY VALIDATION
# ----------------------------------------------------------------------------------------------------
def validate_file_exists(file_path: str | Path) -> bool:
    """
    Description:
        Validates that the specified file exists and is accessible.

    Args:
        file_path (str | Path): Path to the required file.

    Returns:
        bool: True if the file exists.

    Raises:
        FileNotFoundError: If the file does not exist or is not a file.
    """
    path = Path(file_path)
    if not path.exists() or not path.is_file():
        logger.error("File not found: %s", path)
        raise FileNotFoundError(f"Required file not found: {path}")

    logger.debug("File exists: %s", path)
    return True


def validate_directory_exists(dir_path: str | Path, create_if_missing: bool = False) -> bool:
    """
    Description:
        Validates that a directory exists, with optional creation.

    Args:
        dir_path (str | Path): Path to the directory.
        create_if_missing (bool): If True, the directory will be created automatically.

    Returns:
        bool: True if validation succeeds.

    Raises:
        FileNotFoundError: If the directory does not exist and creation is disabled.
    """
    path = Path(dir_path)

    if not path.exists():
        if create_if_missing:
            path.mkdir(parents=True, exist_ok=True)
            logger.info("Directory created: %s", path)
        else:
            logger.error("Directory not found: %s", path)
            raise FileNotFoundError(f"Directory not found: {path}")

    return True


def validate_writable_directory(dir_path: str | Path) -> Path:
    """
    Description:
        Ensures an output directory exists (creating it) and accepts new files.

    Args:
        dir_path (str | Path): Output directory.

    Returns:
        Path: The resolved directory.

    Raises:
        OutputPathError: If the directory cannot be created or written to.

    Notes:
        - Checks writability with a temporary file that is removed immediately.
    """
    path = Path(dir_path)
    try:
        validate_directory_exists(path, create_if_missing=True)
        if not path.is_dir():
            raise NotADirectoryError(str(path))
        with tempfile.NamedTemporaryFile(dir=path, prefix=".write_check_", delete=True):
            pass
    except OSError as exc:
        logger.error("Output directory is not writable: %s (%s)", path, exc)
        raise OutputPathError(f"Output directory is not writable: {path}") from exc

    return path.resolve()


# ====================================================================================================
# 4. PARAMETER VALIDATION
# ----------------------------------------------------------------------------------------------------
def validate_open_probability(name: str, value: float) -> float:
    """
    Description:
        Checks 0 < value < 1 (used for the split-test significance delta).

    Args:
        name (str): Parameter name used in the error message.
        value (float): Value to check.

    Returns:
        float: The value, unchanged.

    Raises:
        ConfigValidationError: If the value is outside the open unit interval or not finite.
    """
    if not isinstance(value, (int, float)) or not math.isfinite(value) or not 0.0 < value < 1.0:
        raise ConfigValidationError(f"{name} must lie strictly between 0 and 1 (got {value!r})")
    return float(value)


def validate_fraction(name: str, value: float) -> float:
    """Checks 0 <= value <= 1; raises ConfigValidationError otherwise."""
    if not isinstance(value, (int, float)) or not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise ConfigValidationError(f"{name} must lie in [0, 1] (got {value!r})")
    return float(value)


def validate_non_negative(name: str, value: float) -> float:
    """Checks value >= 0 and finite; raises ConfigValidationError otherwise."""
    if not isinstance(value, (int, float)) or not math.isfinite(value) or value < 0:
        raise ConfigValidationError(f"{name} must be a non-negative number (got {value!r})")
    return float(value)


def validate_min_int(name: str, value: int, minimum: int = 1) -> int:
    """
    Description:
        Checks that a value is an integer no smaller than a minimum.

    Args:
        name (str): Parameter name used in the error message.
        value (int): Value to check. Booleans are rejected.
        minimum (int): Smallest accepted value.

    Returns:
        int: The value, unchanged.

    Raises:
        ConfigValidationError: If the value is not an integer or is below the minimum.
    """
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < minimum:
        raise ConfigValidationError(f"{name} must be an integer >= {minimum} (got {value!r})")
    return int(value)


def validate_non_empty(data: Any, label: str = "Data") -> bool:
    """
    Description:
        Validates that the provided collection is not empty or None.

    Args:
        data (Any): Any object supporting __len__().
        label (str): Friendly label for the error message.

    Returns:
        bool: True if the collection is non-empty.

    Raises:
        ConfigValidationError: If the data is None or empty.
    """
    if data is None or (hasattr(data, "__len__") and len(data) == 0):
        raise ConfigValidationError(f"{label} cannot be empty.")
    return True


# ====================================================================================================
# 5. AGGREGATED VALIDATION REPORT
# ----------------------------------------------------------------------------------------------------
def validation_report(results: Dict[str, bool], title: str = "Validation Summary Report") -> None:
    """
    Description:
        Logs a structured validation report mapping check names to statuses.

    Args:
        results (Dict[str, bool]): Mapping of check name → success flag.
        title (str): Heading line for the report.

    Returns:
        None.

    Raises:
        None.
    """
    logger.info("%s:", title)
    for name, result in results.items():
        status = "PASS" if result else "FAIL"
        logger.info(" - %-30s : %s", name, status)


# ====================================================================================================
# 6. MAIN EXECUTION (SELF-TEST, SAFE, TEMPORARY, NO REAL FILES)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging(log_to_file=False)
    logger.info("C06_validation_utils self-test started.")

    with tempfile.TemporaryDirectory() as tmp:
        tmp_dir = Path(tmp)
        test_file = tmp_dir / "stream.csv"
        test_file.write_text("a0:nominal,class\nx,c0\n")
        validate_file_exists(test_file)
        validate_writable_directory(tmp_dir / "results")

    checks: Dict[str, bool] = {}
    for label, check in {
        "delta=0.05": lambda: validate_open_probability("delta", 0.05),
        "delta=1.0 (expect FAIL)": lambda: validate_open_probability("delta", 1.0),
        "leaf_cadence=200": lambda: validate_min_int("leaf_cadence", 200),
        "classes=1 (expect FAIL)": lambda: validate_min_int("classes", 1, minimum=2),
    }.items():
        try:
            check()
            checks[label] = True
        except ConfigValidationError as error:
            logger.info("Rejected as expected: %s", error)
            checks[label] = False

    validation_report(checks)
    logger.info("C06_validation_utils self-test complete.")
