# ====================================================================================================
# I03_hoeffding_tree.py
# ----------------------------------------------------------------------------------------------------
# Baseline Hoeffding Tree (VFDT): split a leaf once the top candidate beats the runner-up with
# confidence, never revisit the decision.
#
# Purpose:
#   - Route each instance to a leaf and update only that leaf's statistics.
#   - Every leaf_cadence examples at an impure leaf, split on X_a iff
#       G(X_a) - G(X_b) > epsilon   or   epsilon < tau
#   - Freeze internal nodes (their statistics are dropped after the split).
#
# Usage:
#   from implementation.I03_hoeffding_tree import HoeffdingTree
#
#   learner = HoeffdingTree(schema, HyperParams(delta=0.05))
#   predicted = learner.predict(instance)
#   learner.learn_one(instance)
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
from core.C05_error_handler import EmptyReportError
from implementation.I01_data_model import (
    NULL_CHOICE,
    HyperParams,
    Instance,
    NodeIdSequence,
    Schema,
    SplitEvent,
    SufficientStats,
    TreeNode,
    model_size,
    route_to_leaf,
    spawn_children,
)
from implementation.I02_split_metrics import MeritReport, hoeffding_bound, rank_candidates


# ====================================================================================================
# 3. HOEFFDING TREE
# ----------------------------------------------------------------------------------------------------
class HoeffdingTree:
    """
    Description:
        Very Fast Decision Tree learner. Only leaves carry live statistics; a split is final.

    Args:
        schema (Schema): Attribute declarations of the stream.
        params (HyperParams | None): Hyperparameters; defaults to HyperParams().

    Notes:
        - A single learner is single-writer; predict and learn_one are called alternately by
          the prequential harness.
    """

    name: str = "vfdt"

    def __init__(self, schema: Schema, params: HyperParams | None = None) -> None:
        self.schema = schema
        self.params = params or HyperParams()
        self._ids = NodeIdSequence()
        self.root = TreeNode(
            node_id=self._ids.next(),
            stats=SufficientStats.empty(schema),
            available=frozenset(range(schema.attribute_count)),
        )
        self.examples_seen = 0
        self.split_events: List[SplitEvent] = []
        self.last_root_test: Optional[Tuple[int, float]] = None   # (timestep, dG) of the latest root split test

    # --- Prediction ----------------------------------------------------------------------------------
    def predict(self, instance: Instance) -> int:
        """Majority class of the leaf the instance routes to (class 0 at an empty leaf)."""
        return route_to_leaf(self.root, instance.values).predict()

    # --- Learning ------------------------------------------------------------------------------------
    def learn_one(self, instance: Instance) -> "HoeffdingTree":
        """
        Description:
            Updates the reached leaf and runs the split test on the leaf's cadence.

        Args:
            instance (Instance): Labelled observation.

        Returns:
            HoeffdingTree: self.

        Raises:
            SchemaViolationError: The instance does not conform to the schema.
        """
        self.schema.validate_instance(instance)
        self.examples_seen += 1

        leaf = route_to_leaf(self.root, instance.values)
        leaf.stats.update(instance)
        leaf.examples_since_evaluation += 1

        if leaf.examples_since_evaluation >= self.params.leaf_cadence:
            leaf.examples_since_evaluation = 0
            if not leaf.stats.is_pure():
                self._attempt_split(leaf)
        return self

    def learn_many(self, instances: Iterable[Instance]) -> "HoeffdingTree":
        for instance in instances:
            self.learn_one(instance)
        return self

    def _leaf_report(self, leaf: TreeNode) -> Optional[MeritReport]:
        try:
            return rank_candidates(leaf.stats, leaf.available, False, self.schema, self.params)
        except EmptyReportError:
            return None

    def _test_statistic(self, report: MeritReport) -> float:
        runner_up = report.second_best.merit if report.second_best is not None else 0.0
        return report.best.merit - runner_up

    def _attempt_split(self, leaf: TreeNode) -> bool:
        report = self._leaf_report(leaf)
        if report is None:
            return False

        epsilon = hoeffding_bound(report.range_R, self.params.delta, leaf.stats.total)
        delta_g = self._test_statistic(report)
        if leaf is self.root:
            self.last_root_test = (self.examples_seen, delta_g)
        if not (delta_g > epsilon or epsilon < self.params.tau):
            return False

        choice = report.best.choice
        leaf.split = choice
        leaf.children = spawn_children(
            leaf, choice, self.schema, self._ids, self.params.reuse_nominal_attributes, self.examples_seen
        )
        leaf.stats = None
        self.split_events.append(SplitEvent(self.examples_seen, leaf.node_id, "split", NULL_CHOICE, choice))
        logger.debug(
            "vfdt split node %s on %s at t=%s (dG=%.4f, eps=%.4f)",
            leaf.node_id, choice.label(self.schema), self.examples_seen, delta_g, epsilon,
        )
        return True

    # --- Telemetry -----------------------------------------------------------------------------------
    def root_test_statistic(self) -> Optional[float]:
        """G(X_a) - G(X_b) at the root while it is still a leaf; None once split or before data."""
        if not self.root.is_leaf or self.root.stats.total == 0:
            return None
        report = self._leaf_report(self.root)
        return None if report is None else self._test_statistic(report)

    def model_size(self) -> Dict[str, int]:
        return model_size(self.root)


# ====================================================================================================
# 4. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging(log_to_file=False)
    logger.info("🔍 I03_hoeffding_tree self-test started.")

    schema = Schema.nominal_grid(attributes=2, values=2, classes=2)
    learner = HoeffdingTree(schema, HyperParams(delta=0.05))
    for t in range(400):
        x0, x1 = t % 2, (t // 2) % 2
        learner.learn_one(Instance((x0, x1), label=x1))

    logger.info("Model size: %s", learner.model_size())
    logger.info("Split events: %s", [(e.timestep, e.new_choice.label(schema)) for e in learner.split_events])
    logger.info("✅ I03_hoeffding_tree self-test complete.")
