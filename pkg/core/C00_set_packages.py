# ====================================================================================================
# C00_set_packages.py
# ----------------------------------------------------------------------------------------------------
# Central import hub for all reusable project dependencies.
#
# Purpose:
#   - Provide a single controlled location for all third-party and standard library imports.
#   - Allow other modules to simplify their imports using:  from core.C00_set_packages import *
#   - Guarantee consistent dependency availability across the streaming-tree learners,
#     stream generators, evaluation harness and CLI.
#
# Usage:
#   from core.C00_set_packages import *
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
# Notes:
#   - ALWAYS use ABSOLUTE imports.
#       Example: from core.C03_logging_handler import get_logger
#   - DO NOT use relative imports ("from .x import y").
#
#   - IMPORTANT:
#       Core, implementation and main modules MUST import shared packages from:
#           from core.C00_set_packages import *
#
#   - C00 itself must NEVER import from other project modules to avoid circular dependencies.
# ----------------------------------------------------------------------------------------------------


# ====================================================================================================
# 3. STANDARD LIBRARY IMPORTS
# ----------------------------------------------------------------------------------------------------
# Standard-library modules used across the learners, streams, evaluation and CLI.
# ----------------------------------------------------------------------------------------------------

import argparse                                          # Command-line parsing (main/M01)
from collections import Counter, deque                   # Weighted domain counts, sliding error window
from copy import deepcopy                                # Deep copies of count tables / trees
from dataclasses import dataclass, field, replace        # Data class decorator and helpers
import datetime as dt                                    # Primary datetime module (aliased)
from enum import Enum                                    # Small closed vocabularies (attribute kinds)
import functools                                         # lru_cache for materialised file streams
import itertools                                         # Domain enumeration, id sequences
import logging                                           # Logging API (configured separately in C03)
import math                                              # erf / log / sqrt for bounds and CDFs
import os                                                # OS operations (paths, environment variables)
import tempfile                                          # Temporary file/directory utilities
import time                                              # process_time() for CPU accounting

from typing import (
    Any,                # Generic placeholder type: value may be of any type
    Callable,           # Callable[[Args], Return]: function or method type signature
    ClassVar,           # ClassVar[T]: class-level constant inside a dataclass
    Dict,               # Dict[K, V]: mutable key/value mapping
    FrozenSet,          # FrozenSet[T]: immutable set (candidate attribute sets)
    Iterable,           # Iterable[T]: object capable of yielding items one at a time
    Iterator,           # Iterator[T]: stateful iterator (instance streams, id sequences)
    List,               # List[T]: ordered, mutable collection
    Literal,            # Literal["A", "B"]: restricts a variable to specific fixed values
    Mapping,            # Mapping[K, V]: read-only key/value mapping interface
    Optional,           # Optional[T]: shorthand for T | None
    Protocol,           # Protocol: structural typing base class (learner interface)
    Sequence,           # Sequence[T]: read-only ordered container (tuple/list-like)
    TYPE_CHECKING,      # True at type-check time only: avoids runtime imports in type-only branches
    Tuple,              # Tuple[T1, T2]: fixed-length tuple type
    Union               # Union[A, B]: value may be one of several allowed types (pre-PEP 604)
)

from concurrent.futures import (
    ProcessPoolExecutor,                                # Process-based (CPU-bound) seed parallelism
    ThreadPoolExecutor                                  # Thread-based parallel task execution
)

# ====================================================================================================
# 4. THIRD-PARTY LIBRARIES
# ----------------------------------------------------------------------------------------------------
# External libraries used across multiple modules.
# ----------------------------------------------------------------------------------------------------
import numpy as np                                      # (pip install numpy) Count tables, entropy, argmax
import pandas as pd                                     # (pip install pandas) CSV ingestion, result frames
import yaml                                             # (pip install pyyaml) YAML configuration parsing

from tqdm import tqdm                                   # (pip install tqdm) Progress bars for seed runs
