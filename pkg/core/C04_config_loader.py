# ====================================================================================================
# C04_config_loader.py
# ----------------------------------------------------------------------------------------------------
# Loads experiment defaults (learner hyperparameters, stream generator, evaluation cadence) from /config/.
#
# Purpose:
#   - Hold the built-in defaults and merge a YAML file on top (config/config.yaml by default).
#   - Warn about unknown sections and keys so typos do not silently fall back to defaults.
#   - Provide safe lookups (get_config / get_section) with caller-supplied fallbacks.
#
# Usage:
#   from core.C04_config_loader import initialise_config, get_config, get_section
#
#   initialise_config()
#   delta = get_config("learner", "delta", default=0.05)
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
from core.C01_set_file_paths import CONFIG_DIR


# ====================================================================================================
# 3. DEFAULTS
# ----------------------------------------------------------------------------------------------------
# Built-in experiment defaults. config/config.yaml (or the file named by --config / STREAMTREE_CONFIG)
# is merged on top, section by section; CLI flags override both.
# ====================================================================================================

CONFIG: Dict[str, Any] = {}   # Empty until initialise_config() runs; nothing is read at import time.

CONFIG_ENV_VAR: str = "STREAMTREE_CONFIG"
DEFAULT_CONFIG_FILE: Path = CONFIG_DIR / "config.yaml"

DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    "learner": {
        "delta": 0.05,
        "tau": 0.05,
        "leaf_cadence": 200,
        "internal_cadence": 2000,
        "numeric_candidates": 10,
        "reuse_nominal_attributes": False,
        "efdt_tie_break": False,
    },
    "stream": {
        "attributes": 5,
        "values": 5,
        "classes": 5,
        "numeric_attributes": 0,
        "length": 100_000,
        "max_depth": 5,
        "leaf_probability": 0.15,
    },
    "evaluation": {
        "experiment": "randomtree",
        "checkpoint_every": 1000,
        "window": 1000,
        "workers": 1,
    },
    "convergence": {
        "attributes": 3,
        "values": 2,
        "classes": 2,
        "numeric_attributes": 0,
        "length": 100_000,
        "max_depth": 3,
        "leaf_probability": 0.15,
        "checkpoint_every": 1000,
    },
    "logging": {"level": "WARNING"},
    "error_handling": {"exit_on_fatal": True},
}


# ====================================================================================================
# 4. LOADING & MERGING
# ----------------------------------------------------------------------------------------------------
def load_yaml_config(path: Path) -> Dict[str, Any]:
    """
    Description:
        Reads one YAML file into a dictionary.

    Args:
        path (Path): YAML file to read.

    Returns:
        Dict[str, Any]: Parsed mapping; {} when the file is missing, unreadable, or not a mapping.

    Notes:
        - Parse errors are logged via log_exception() and never raised, so a broken user file
          falls back to the built-in defaults.
    """
    try:
        if not path.exists():
            logger.debug("No config file at %s", path)
            return {}
        with open(path, "r", encoding="utf-8") as file:
            data = yaml.safe_load(file) or {}
        if not isinstance(data, dict):
            logger.warning("⚠️  Ignoring %s: top level is %s, expected a mapping", path.name, type(data).__name__)
            return {}
        logger.debug("Loaded YAML config: %s", path)
        return data
    except Exception as exc:
        log_exception(exc, context=f"Loading YAML config: {path}")
        return {}


def merge_dicts(base: Dict[str, Any], update: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively merges update into base (in place); update wins on collisions."""
    for key, value in update.items():
        if isinstance(base.get(key), dict) and isinstance(value, dict):
            base[key] = merge_dicts(base[key], value)
        else:
            base[key] = value
    return base


def unknown_keys(config: Mapping[str, Any]) -> List[str]:
    """
    Description:
        Lists dotted keys present in config but absent from DEFAULT_CONFIG (typos such as
        `learner.leaf_cadance`).

    Returns:
        List[str]: Sorted dotted names; [] when every key is known.
    """
    found: List[str] = []
    for section, values in config.items():
        known = DEFAULT_CONFIG.get(section)
        if known is None:
            found.append(section)
            continue
        if isinstance(values, dict):
            found.extend(f"{section}.{key}" for key in values if key not in known)
    return sorted(found)


def resolve_config_file(config_file: Path | str | None = None) -> Path:
    """Explicit argument first, then the STREAMTREE_CONFIG environment variable, then config/config.yaml."""
    if config_file is not None:
        return Path(config_file)
    from_env = os.environ.get(CONFIG_ENV_VAR)
    return Path(from_env) if from_env else DEFAULT_CONFIG_FILE


def initialise_config(config_file: Path | str | None = None) -> Dict[str, Any]:
    """
    Description:
        Rebuilds the global CONFIG: a fresh copy of DEFAULT_CONFIG with the YAML file merged on top.

    Args:
        config_file (Path | str | None): YAML file to merge. See resolve_config_file() for the
            fallback order.

    Returns:
        Dict[str, Any]: The merged configuration (also stored in CONFIG).

    Notes:
        - Unknown sections or keys are logged as warnings and otherwise kept.
        - Safe to call repeatedly; every call starts again from the defaults.
    """
    global CONFIG
    path = resolve_config_file(config_file)
    CONFIG = merge_dicts(deepcopy(DEFAULT_CONFIG), load_yaml_config(path))

    for name in unknown_keys(CONFIG):
        logger.warning("⚠️  Unknown config key '%s' in %s", name, path.name)

    logger.debug("Configuration initialised from %s. Sections: %s", path, list(CONFIG.keys()))
    return CONFIG


# ====================================================================================================
# 5. LOOKUPS
# ----------------------------------------------------------------------------------------------------
def get_config(section: str, key: str, default: Any = None) -> Any:
    """
    Description:
        Looks up CONFIG[section][key].

    Args:
        section (str): Top-level section (for example, "learner").
        key (str): Key within the section (for example, "delta").
        default (Any, optional): Returned when the key is missing or explicitly null.

    Returns:
        Any: The configured value, or default.
    """
    try:
        value = CONFIG.get(section, {}).get(key, default)
        return default if value is None else value
    except Exception as exc:
        log_exception(exc, context=f"get_config(section={section!r}, key={key!r})")
        return default


def get_section(section: str) -> Dict[str, Any]:
    """Returns a shallow copy of one configuration section ({} when absent)."""
    value = CONFIG.get(section, {})
    return dict(value) if isinstance(value, dict) else {}


# ====================================================================================================
# 6. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging(log_to_file=False)
    logger.info("🔍 C04_config_loader self-test started.")

    initialise_config()
    logger.info("Config file: %s", resolve_config_file())
    for section in CONFIG:
        logger.info("  [%s] %s", section, get_section(section))
    logger.info("Unknown keys: %s", unknown_keys(CONFIG) or "none")

    logger.info("✅ C04_config_loader self-test complete.")
