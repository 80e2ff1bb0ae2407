# ====================================================================================================
# C09_io_utils.py
# ----------------------------------------------------------------------------------------------------
# File input/output helpers for stream CSVs, experiment result tables and tree exports.
#
# Purpose:
#   - Read CSV files into pandas DataFrames with validation and logging.
#   - Write DataFrames to CSV deterministically (identical inputs give identical bytes).
#   - Write plain text artefacts (indented tree exports).
#
# Usage:
#   from core.C09_io_utils import read_csv_file, save_dataframe, save_text
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
from core.C05_error_handler import OutputPathError
from core.C06_validation_utils import validate_directory_exists, validate_file_exists


# ====================================================================================================
# 3. CSV UTILITIES
# ----------------------------------------------------------------------------------------------------
def read_csv_file(file_path: str | Path, **kwargs) -> pd.DataFrame:
    """
    Description:
        Reads a CSV file into a pandas DataFrame with validation and logging.
        The target file is validated for existence before reading, and the
        resulting row and column counts are logged on success.

    Args:
        file_path (str | Path): Path to the CSV file to read.
        **kwargs: Additional keyword arguments passed directly to pandas.read_csv().

    Returns:
        pd.DataFrame: DataFrame containing the loaded CSV data.

    Raises:
        FileNotFoundError: If the file does not exist or is not accessible.
        pandas.errors.EmptyDataError / pandas.errors.ParserError: Propagated from pandas so that
            callers can translate them into domain errors.

    Notes:
        - All exceptions are logged at DEBUG level before being re-raised; the caller decides
          whether the failure is an error worth a traceback.
    """
    path = Path(file_path)

    try:
        validate_file_exists(path)
        df = pd.read_csv(path, **kwargs)
        logger.info("📄 Loaded CSV: %s (%s rows, %s columns)", path, len(df), len(df.columns))
        return df
    except Exception as exc:
        logger.debug("Reading CSV file failed: %s (%s)", path, exc)
        raise


def save_dataframe(
    df: pd.DataFrame,
    file_path: str | Path,
    index: bool = False,
    float_format: str | None = None,
    **kwargs,
) -> Path:
    """
    Description:
        Saves a pandas DataFrame to a CSV file, creating the destination directory
        if necessary. Existing files are overwritten so that repeated runs with identical
        inputs leave byte-identical results behind.

    Args:
        df (pd.DataFrame): DataFrame to save.
        file_path (str | Path): Path to the target CSV file.
        index (bool, optional): Whether to include the DataFrame index. Defaults to False.
        float_format (str | None): Optional printf-style float format.
        **kwargs: Additional keyword arguments passed to DataFrame.to_csv().

    Returns:
        Path: The final path where the CSV file was saved.

    Raises:
        OutputPathError: The directory cannot be created or the CSV cannot be written (exit code 2).

    Notes:
        - Line terminator is fixed to "\\n" so output bytes do not depend on the platform.
    """
    path = Path(file_path)

    try:
        validate_directory_exists(path.parent, create_if_missing=True)
        df.to_csv(path, index=index, float_format=float_format, lineterminator="\n", **kwargs)
        logger.info("💾 DataFrame saved to: %s (%s rows)", path, len(df))
        return path
    except OutputPathError:
        raise
    except OSError as exc:
        log_exception(exc, logger_instance=logger, context=f"Saving DataFrame to {path}")
        raise OutputPathError(f"cannot write {path}: {exc.strerror or exc}") from exc


# ====================================================================================================
# 4. TEXT UTILITIES
# ----------------------------------------------------------------------------------------------------
def save_text(lines: Iterable[str], file_path: str | Path) -> Path:
    """
    Description:
        Writes lines of text to a UTF-8 file, one per line, with a trailing newline.

    Args:
        lines (Iterable[str]): Lines to write (without newline characters).
        file_path (str | Path): Target path.

    Returns:
        Path: Path to the written file.

    Raises:
        OutputPathError: The directory cannot be created or the file cannot be written (exit code 2).
    """
    path = Path(file_path)

    try:
        validate_directory_exists(path.parent, create_if_missing=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for line in lines:
                fh.write(line + "\n")
        logger.info("✏️  Text written to: %s", path)
        return path
    except OutputPathError:
        raise
    except OSError as exc:
        log_exception(exc, logger_instance=logger, context=f"Writing text file: {path}")
        raise OutputPathError(f"cannot write {path}: {exc.strerror or exc}") from exc


# ====================================================================================================
# 5. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging(enable_console=True, log_to_file=False)
    logger.info("🔍 C09_io_utils self-test started.")

    with tempfile.TemporaryDirectory() as tmpdir:
        tmp = Path(tmpdir)

        df = pd.DataFrame({"timestep": [1000, 2000], "cum_error": [0.41, 0.32]})
        csv_path = save_dataframe(df, tmp / "sample.csv")
        _ = read_csv_file(csv_path)

        save_text(["a0=v0 ->", "  class=1"], tmp / "tree.txt")

    logger.info("✅ C09_io_utils self-test complete.")
