# ====================================================================================================
# C18_parallel_executor.py
# ----------------------------------------------------------------------------------------------------
# Runs independent experiment tasks (one per seed) on a thread or process pool.
#
# Purpose:
#   - Fan seeds out to workers while each worker owns its learner and stream cursor exclusively.
#   - Merge results deterministically in task (seed) order, whatever order workers finish in.
#   - Show optional tqdm progress.
#
# Usage:
#   from core.C18_parallel_executor import run_in_parallel
#
#   summaries = run_in_parallel(run_one_seed, tasks, mode="process", max_workers=4)
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
# (None required)


# ====================================================================================================
# 3. CORE PARALLEL EXECUTION UTILITIES
# ----------------------------------------------------------------------------------------------------
def run_in_parallel(
    func: Callable[[Any], Any],
    tasks: Sequence[Any],
    mode: Literal["thread", "process"] = "process",
    max_workers: int = 1,
    show_progress: bool = False,
    description: str = "🚀 Running seeds",
) -> List[Any]:
    """
    Execute a list of tasks using threads or processes and return results in task order.

    Description:
        Wraps ThreadPoolExecutor / ProcessPoolExecutor. Results are collected by task position,
        so the merged output is identical whichever worker finishes first. With
        max_workers <= 1 the tasks run inline in the calling process.

    Args:
        func (Callable):
            Function to execute per task. Must be a module-level function in process mode.
        tasks (Sequence[Any]):
            Inputs to pass to func, one call per item.
        mode (str):
            'thread' or 'process' (CPU-bound learners default to processes).
        max_workers (int):
            Maximum number of worker threads/processes.
        show_progress (bool):
            Whether to display a tqdm progress bar.
        description (str):
            Progress bar label.

    Returns:
        List[Any]:
            One result per task, in the order of tasks.

    Raises:
        TypeError: If func is not callable.
        Exception: The first task failure is logged and re-raised; partial results cannot be
            merged into a seed-ordered comparison.
    """
    if not callable(func):
        raise TypeError("Provided function is not callable.")

    task_list = list(tasks)
    results: List[Any] = [None] * len(task_list)

    if max_workers <= 1 or len(task_list) <= 1:
        iterator: Iterable[Tuple[int, Any]] = enumerate(task_list)
        if show_progress:
            iterator = tqdm(iterator, total=len(task_list), desc=description, unit="task")
        for position, task in iterator:
            results[position] = func(task)
        return results

    executor_class = ThreadPoolExecutor if mode == "thread" else ProcessPoolExecutor
    logger.info("⚙️  Executing %s tasks in %s mode (%s workers)...", len(task_list), mode, max_workers)

    with executor_class(max_workers=max_workers) as executor:
        futures = [executor.submit(func, task) for task in task_list]
        iterator = enumerate(futures)
        if show_progress:
            iterator = tqdm(iterator, total=len(futures), desc=description, unit="task")

        for position, future in iterator:
            try:
                results[position] = future.result()
            except Exception as exc:
                log_exception(exc, logger_instance=logger, context=f"run_in_parallel task #{position}")
                raise

    logger.info("✅ All tasks completed.")
    return results


# ====================================================================================================
# 4. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
def _square(n: int) -> int:
    return n * n


if __name__ == "__main__":
    init_logging(enable_console=True, log_to_file=False)
    logger.info("🔍 Running C18_parallel_executor self-test...")

    tasks = list(range(1, 11))

    threaded_results = run_in_parallel(_square, tasks, mode="thread", max_workers=4)
    logger.info("🧾 Thread results (task order): %s", threaded_results)

    process_results = run_in_parallel(_square, tasks, mode="process", max_workers=2)
    logger.info("🧾 Process results (task order): %s", process_results)

    logger.info("✅ C18_parallel_executor self-test complete.")
