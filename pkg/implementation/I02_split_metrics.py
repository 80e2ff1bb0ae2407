# ====================================================================================================
# I02_split_metrics.py
# ----------------------------------------------------------------------------------------------------
# Split-evaluation mathematics: entropy, information gain, null-split merit, the Hoeffding bound
# and candidate ranking.
#
# Purpose:
#   - Compute merits G(X_i) in bits from a node's sufficient statistics.
#   - Rank candidate splits deterministically (lower attribute index wins ties, the null split
#     loses every tie).
#   - Provide the confidence radius epsilon used by both split tests.
#
# Usage:
#   from implementation.I02_split_metrics import rank_candidates, hoeffding_bound, merit_range
#
#   report = rank_candidates(stats, node.available, include_null=True, schema=schema, params=params)
#   epsilon = hoeffding_bound(report.range_R, params.delta, stats.total)
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
from core.C05_error_handler import EmptyReportError, UndefinedBoundError
from core.C06_validation_utils import validate_open_probability
from implementation.I01_data_model import (
    NULL_CHOICE,
    NULL_SPLIT,
    HyperParams,
    Schema,
    SplitChoice,
    SufficientStats,
)


# ====================================================================================================
# 3. ENTROPY & INFORMATION GAIN
# ----------------------------------------------------------------------------------------------------
def entropy(class_counts: Sequence[float] | np.ndarray) -> float:
    """Shannon entropy in bits of a count vector; zero cells contribute 0, an all-zero vector gives 0."""
    counts = np.asarray(class_counts, dtype=float)
    total = counts.sum()
    if total <= 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def merit_range(class_count: int) -> float:
    """Range R of information gain for c classes (log2 c)."""
    return math.log2(class_count)


def _partition_gain(table: np.ndarray) -> float:
    """Parent entropy minus weighted child entropy for a (branches x classes) table."""
    branch_totals = table.sum(axis=1)
    n = branch_totals.sum()
    if n <= 0:
        return 0.0
    children = sum(
        (branch_totals[j] / n) * entropy(table[j])
        for j in range(table.shape[0])
        if branch_totals[j] > 0
    )
    return entropy(table.sum(axis=0)) - children


def numeric_split_table(stats: SufficientStats, attribute: int, threshold: float) -> np.ndarray:
    """Implied class mass (2 x c) on each side of threshold from the per-class Gaussian summaries."""
    estimators = stats.numeric_estimators[attribute]
    left = np.array([e.weight * e.cdf(threshold) for e in estimators], dtype=float)
    total = np.array([e.weight for e in estimators], dtype=float)
    return np.vstack([left, total - left])


def info_gain(stats: SufficientStats, choice: SplitChoice, schema: Schema) -> float:
    """
    Description:
        Information gain of a split choice, clamped to [0, log2 c].

    Args:
        stats (SufficientStats): Node statistics.
        choice (SplitChoice): Nominal attribute, numeric attribute with threshold, or NULL_CHOICE.
        schema (Schema): Attribute declarations.

    Returns:
        float: Merit in bits. The null split returns exactly 0.
    """
    if choice.is_null:
        return null_split_merit(stats)

    if schema.attributes[choice.attribute].is_nominal:
        table = stats.nominal_counts[choice.attribute]
    else:
        table = numeric_split_table(stats, choice.attribute, choice.threshold)

    gain = _partition_gain(table)
    return min(max(gain, 0.0), merit_range(schema.class_count))


def null_split_merit(stats: SufficientStats) -> float:
    """Merit of not splitting; relative to the node's own class distribution this is identically 0."""
    return 0.0


# ====================================================================================================
# 4. HOEFFDING BOUND
# ----------------------------------------------------------------------------------------------------
def hoeffding_bound(range_R: float, delta: float, n: int) -> float:
    """
    Description:
        Confidence radius epsilon = sqrt(R^2 ln(1/delta) / (2n)).

    Args:
        range_R (float): Range of the merit (bits), > 0.
        delta (float): Significance, 0 < delta < 1.
        n (int): Examples observed at the node, >= 1.

    Returns:
        float: epsilon in bits.

    Raises:
        UndefinedBoundError: n < 1.
        ConfigValidationError: delta outside (0, 1) or range_R <= 0.
    """
    if n < 1:
        raise UndefinedBoundError(f"Hoeffding bound undefined for n={n}")
    validate_open_probability("delta", delta)
    if not range_R > 0:
        raise UndefinedBoundError(f"Hoeffding bound needs range_R > 0 (got {range_R})")
    return math.sqrt(range_R * range_R * math.log(1.0 / delta) / (2.0 * n))


# ====================================================================================================
# 5. NUMERIC CANDIDATES
# ----------------------------------------------------------------------------------------------------
def numeric_thresholds(stats: SufficientStats, attribute: int, params: HyperParams) -> List[float]:
    """Midpoints of numeric_candidates equal-width bins over the observed range (empty if degenerate)."""
    observed = stats.observed_range(attribute)
    if observed is None:
        return []
    low, high = observed
    if not high > low:
        return []
    k = params.numeric_candidates
    width = (high - low) / k
    return [low + width * (i + 0.5) for i in range(k)]


@dataclass(frozen=True)
class SplitCandidate:
    choice: SplitChoice
    merit: float


def best_numeric_split(
    stats: SufficientStats, attribute: int, schema: Schema, params: HyperParams
) -> Optional[SplitCandidate]:
    """Best threshold for a numeric attribute (lowest threshold wins ties); None without a usable range."""
    best: Optional[SplitCandidate] = None
    for threshold in numeric_thresholds(stats, attribute, params):
        choice = SplitChoice(attribute, threshold)
        merit = info_gain(stats, choice, schema)
        if best is None or merit > best.merit:
            best = SplitCandidate(choice, merit)
    return best


# ====================================================================================================
# 6. MERIT REPORT & RANKING
# ----------------------------------------------------------------------------------------------------
def _rank_key(candidate: SplitCandidate) -> Tuple[float, int, int]:
    # null sorts after every attribute of equal merit
    is_null = 1 if candidate.choice.is_null else 0
    return (-candidate.merit, is_null, candidate.choice.attribute)


@dataclass(frozen=True)
class MeritReport:
    """
    Description:
        Candidates ordered best first, plus the merit range R.

    Notes:
        - from_merits() builds a report from arbitrary (possibly signed) merits; the anytime tree
          accepts such reports to exercise its kill path.
    """

    candidates: Tuple[SplitCandidate, ...]
    range_R: float

    def __post_init__(self) -> None:
        if not self.candidates:
            raise EmptyReportError("merit report needs at least one candidate")
        object.__setattr__(self, "candidates", tuple(sorted(self.candidates, key=_rank_key)))

    @classmethod
    def from_merits(
        cls, merits: Mapping[int, float], range_R: float, thresholds: Mapping[int, float] | None = None
    ) -> "MeritReport":
        thresholds = thresholds or {}
        return cls(
            tuple(SplitCandidate(SplitChoice(a, thresholds.get(a)), float(m)) for a, m in merits.items()),
            range_R,
        )

    @property
    def best(self) -> SplitCandidate:
        return self.candidates[0]

    @property
    def second_best(self) -> Optional[SplitCandidate]:
        return self.candidates[1] if len(self.candidates) > 1 else None

    def merit_of(self, attribute: int) -> Optional[float]:
        for candidate in self.candidates:
            if candidate.choice.attribute == attribute:
                return candidate.merit
        return None

    def merits(self) -> Dict[int, float]:
        return {c.choice.attribute: c.merit for c in self.candidates}


def rank_candidates(
    stats: SufficientStats,
    available: Iterable[int],
    include_null: bool,
    schema: Schema,
    params: HyperParams,
) -> MeritReport:
    """
    Description:
        Computes the merit of every available attribute (numeric attributes at their best
        threshold) and optionally of the null split, and ranks them.

    Args:
        stats (SufficientStats): Node statistics (total >= 1 expected).
        available (Iterable[int]): Candidate attribute indices.
        include_null (bool): Whether to add the null split at merit 0.
        schema (Schema): Attribute declarations.
        params (HyperParams): Supplies numeric_candidates.

    Returns:
        MeritReport: Candidates best first.

    Raises:
        EmptyReportError: No candidate could be formed.

    Notes:
        - Numeric attributes with no observed range (no readings or a single value) are skipped.
    """
    candidates: List[SplitCandidate] = []
    for attribute in sorted(available):
        if schema.attributes[attribute].is_nominal:
            choice = SplitChoice(attribute)
            candidates.append(SplitCandidate(choice, info_gain(stats, choice, schema)))
        else:
            numeric = best_numeric_split(stats, attribute, schema, params)
            if numeric is not None:
                candidates.append(numeric)

    if include_null:
        candidates.append(SplitCandidate(NULL_CHOICE, null_split_merit(stats)))

    if not candidates:
        raise EmptyReportError("no split candidates available at this node")
    return MeritReport(tuple(candidates), merit_range(schema.class_count))


# ====================================================================================================
# 7. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    from implementation.I01_data_model import Instance

    init_logging(log_to_file=False)
    logger.info("🔍 I02_split_metrics self-test started.")

    logger.info("entropy([1,1])=%.6f entropy([2,2,2,2])=%.6f", entropy([1, 1]), entropy([2, 2, 2, 2]))
    logger.info("epsilon(R=1, delta=0.05, n=100)=%.5f", hoeffding_bound(1.0, 0.05, 100))

    schema = Schema.nominal_grid(attributes=2, values=2, classes=2)
    stats = SufficientStats.empty(schema)
    for x0, x1 in [(0, 0), (0, 1), (1, 0), (1, 1)] * 5:
        stats.update(Instance((x0, x1), label=x0))

    report = rank_candidates(stats, {0, 1}, include_null=True, schema=schema, params=HyperParams())
    for candidate in report.candidates:
        logger.info("  %-6s merit=%.4f", candidate.choice.label(schema), candidate.merit)

    logger.info("✅ I02_split_metrics self-test complete.")
