# ====================================================================================================
# C01_set_file_paths.py
# ----------------------------------------------------------------------------------------------------
# Centralises all key file and directory paths for the project.
#
# Purpose:
#   - Provide a single source of truth for project root detection.
#   - Define standardised directory constants (data, logs, config, outputs).
#   - Provide small, safe helper utilities for building experiment result paths.
#   - Avoid ALL side effects at import time (no directory or file creation).
#
# Usage:
#   from core.C01_set_file_paths import (
#       PROJECT_ROOT,
#       OUTPUTS_DIR,
#       experiment_file,
#       mean_curve_file,
#       stream_file,
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
# Bring in shared external packages from the central import hub.
#
# CRITICAL ARCHITECTURE RULE:
#   ALL external + stdlib packages MUST be imported exclusively via:
#       from core.C00_set_packages import *
#   No other script may import external libraries directly.
# ----------------------------------------------------------------------------------------------------
from core.C00_set_packages import *

# --- Initialise module-level logger -----------------------------------------------------------------
from core.C03_logging_handler import get_logger, log_exception, init_logging
logger = get_logger(__name__)

# --- Additional project-level imports (append below this line only) ----------------------------------
# (None required for this module)


# ====================================================================================================
# 3. PROJECT DIRECTORIES
# ----------------------------------------------------------------------------------------------------
PROJECT_ROOT: Path = Path(__file__).resolve().parent.parent

CONFIG_DIR: Path = PROJECT_ROOT / "config"
DATA_DIR: Path = PROJECT_ROOT / "data"          # Generated / user CSV streams
LOGS_DIR: Path = PROJECT_ROOT / "logs"          # Daily log files (mirrors C03)
OUTPUTS_DIR: Path = PROJECT_ROOT / "outputs"    # Result CSVs, event logs, tree exports


# ====================================================================================================
# 4. RESULT FILE NAMES
# ----------------------------------------------------------------------------------------------------
# Every experiment writes into one flat directory; names carry experiment, learner and seed so that
# runs of different experiments can share a folder without clobbering each other.
#
#   <experiment>_<learner>_<seed>.csv          prequential records of one run
#   <experiment>_<learner>_<seed>_events.csv   split events of one run (--export-events)
#   <experiment>_<learner>_<seed>_tree.txt     final tree text export (convergence)
#   <experiment>_mean.csv                      mean curves across seeds
#   <experiment>_stream_<seed>.csv             stream written by `generate`
# ====================================================================================================

def _check_experiment_name(experiment: str) -> str:
    if not experiment or any(sep in experiment for sep in ("/", "\\")):
        raise ValueError(f"experiment name must be non-empty and contain no path separators (got {experiment!r})")
    return experiment


def experiment_file(directory: Path, experiment: str, learner: str, seed: int | str, suffix: str = ".csv") -> Path:
    """
    Description:
        Builds the result path for one learner/seed run of an experiment.

    Args:
        directory (Path): Output directory.
        experiment (str): Experiment label (e.g. "random_tree").
        learner (str): Learner name ("vfdt" / "efdt", or "batch" for the oracle's tree export).
        seed (int | str): Seed of the run.
        suffix (str): Everything after the seed: ".csv", "_events.csv", "_tree.txt".

    Returns:
        Path: <directory>/<experiment>_<learner>_<seed><suffix>

    Raises:
        ValueError: experiment is empty or contains a path separator.
    """
    return Path(directory) / f"{_check_experiment_name(experiment)}_{learner}_{seed}{suffix}"


def mean_curve_file(directory: Path, experiment: str) -> Path:
    """Mean-curve CSV for a multi-seed comparison."""
    return Path(directory) / f"{_check_experiment_name(experiment)}_mean.csv"


def stream_file(directory: Path, experiment: str, seed: int | str) -> Path:
    """Default target of the `generate` command."""
    return Path(directory) / f"{_check_experiment_name(experiment)}_stream_{seed}.csv"


# ====================================================================================================
# 5. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging(log_to_file=False)
    logger.info("🔍 C01_set_file_paths self-test started.")

    for name, folder in (("config", CONFIG_DIR), ("data", DATA_DIR), ("logs", LOGS_DIR), ("outputs", OUTPUTS_DIR)):
        logger.info("  %-8s %s", name, folder)

    logger.info("  run:     %s", experiment_file(OUTPUTS_DIR, "random_tree", "efdt", 1))
    logger.info("  events:  %s", experiment_file(OUTPUTS_DIR, "random_tree", "efdt", 1, suffix="_events.csv"))
    logger.info("  mean:    %s", mean_curve_file(OUTPUTS_DIR, "random_tree"))
    logger.info("  stream:  %s", stream_file(DATA_DIR, "random_tree", 7))

    logger.info("✅ C01_set_file_paths self-test complete.")
