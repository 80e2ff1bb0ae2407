# ====================================================================================================
# I04_anytime_tree.py
# ----------------------------------------------------------------------------------------------------
# Hoeffding Anytime Tree (EFDT): split a leaf as soon as the best attribute beats the null split,
# and keep re-evaluating internal nodes so that a split which stops being best is replaced.
#
# Purpose:
#   - Update the statistics of EVERY node on the instance's root-to-leaf path.
#   - Leaves (every leaf_cadence examples): AttemptToSplit, splitting on X_a iff
#       G(X_a) - G(X_null) > epsilon
#   - Internal nodes (every internal_cadence examples): ReEvaluateBestSplit, which replaces the
#     split with X_a (fresh children) or kills the subtree when X_a is the null split, iff
#       G(X_a) - G(X_current) > epsilon
#   - Log every structural change as a SplitEvent.
#
# Usage:
#   from implementation.I04_anytime_tree import HoeffdingAnytimeTree
#
#   learner = HoeffdingAnytimeTree(schema, HyperParams(delta=0.05))
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
from implementation.I01_data_model import (
    NULL_CHOICE,
    NULL_SPLIT,
    HyperParams,
    Instance,
    NodeIdSequence,
    Schema,
    SplitChoice,
    SplitEvent,
    SufficientStats,
    TreeNode,
    model_size,
    route_to_leaf,
    spawn_children,
)
from implementation.I02_split_metrics import MeritReport, hoeffding_bound, rank_candidates


# ====================================================================================================
# 3. HOEFFDING ANYTIME TREE
# ----------------------------------------------------------------------------------------------------
class HoeffdingAnytimeTree:
    """
    Description:
        Extremely Fast Decision Tree learner. Every node keeps live statistics so that internal
        splits can be revisited.

    Args:
        schema (Schema): Attribute declarations of the stream.
        params (HyperParams | None): Hyperparameters; defaults to HyperParams().

    Notes:
        - Cadence counters are per node and reset at every evaluation and on restructuring.
        - A restructured node stops processing of the current instance; its fresh children start
          from zero counts and do not see the instance that triggered the change.
        - split_events is strictly increasing in timestep (at most one change per instance).
    """

    name: str = "efdt"

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
        self.last_touch_count = 0

    # --- Prediction ----------------------------------------------------------------------------------
    def predict(self, instance: Instance) -> int:
        return route_to_leaf(self.root, instance.values).predict()

    # --- Learning ------------------------------------------------------------------------------------
    def learn_one(self, instance: Instance) -> "HoeffdingAnytimeTree":
        """
        Description:
            Sorts the instance down the tree, updating and (on cadence) evaluating each node.

        Args:
            instance (Instance): Labelled observation.

        Returns:
            HoeffdingAnytimeTree: self.

        Raises:
            SchemaViolationError: The instance does not conform to the schema.
        """
        self.schema.validate_instance(instance)
        self.examples_seen += 1

        node = self.root
        touched = 0
        while True:
            node.stats.update(instance)
            node.examples_since_evaluation += 1
            touched += 1

            if node.is_leaf:
                if node.examples_since_evaluation >= self.params.leaf_cadence:
                    node.examples_since_evaluation = 0
                    self.attempt_to_split(node)
                break

            if node.examples_since_evaluation >= self.params.internal_cadence:
                node.examples_since_evaluation = 0
                if self.re_evaluate_best_split(node):
                    break

            node = node.child_for(instance.values)

        self.last_touch_count = touched
        return self

    def learn_many(self, instances: Iterable[Instance]) -> "HoeffdingAnytimeTree":
        for instance in instances:
            self.learn_one(instance)
        return self

    # --- Split tests ---------------------------------------------------------------------------------
    def _report(self, node: TreeNode) -> MeritReport:
        return rank_candidates(node.stats, node.available, True, self.schema, self.params)

    def _passes(self, merit_gap: float, epsilon: float) -> bool:
        if merit_gap > epsilon:
            return True
        return self.params.efdt_tie_break and epsilon < self.params.tau

    def attempt_to_split(self, leaf: TreeNode, report: MeritReport | None = None) -> bool:
        """
        Description:
            Splits an impure leaf on X_a iff X_a is not the null split and G(X_a) - G(X_null) > epsilon.

        Args:
            leaf (TreeNode): A leaf with live statistics.
            report (MeritReport | None): Precomputed merits; computed from the leaf when omitted.

        Returns:
            bool: True when the leaf was split.
        """
        if not leaf.is_leaf or leaf.stats.total == 0 or leaf.stats.is_pure():
            return False

        report = report or self._report(leaf)
        best = report.best
        if best.choice.is_null:
            return False

        null_merit = report.merit_of(NULL_SPLIT) or 0.0
        epsilon = hoeffding_bound(report.range_R, self.params.delta, leaf.stats.total)
        if not self._passes(best.merit - null_merit, epsilon):
            return False

        self._install_split(leaf, best.choice)
        self._log_event(leaf, "split", NULL_CHOICE, best.choice, best.merit - null_merit, epsilon)
        return True

    def re_evaluate_best_split(self, node: TreeNode, report: MeritReport | None = None) -> bool:
        """
        Description:
            Revisits an internal node's split against every candidate including the null split.

            If G(X_a) - G(X_current) > epsilon:
              - X_a is the null split  -> kill: the node becomes a leaf keeping its own statistics.
              - X_a is another attribute -> replace: re-split on X_a with fresh zero-count children.
            If X_a is the current attribute nothing changes.

        Args:
            node (TreeNode): Internal node with live statistics.
            report (MeritReport | None): Precomputed merits (signed merits may be injected).

        Returns:
            bool: True when the node was restructured.

        Notes:
            - Under information gain every merit is >= 0 = G(X_null), so the kill branch is only
              reachable through an injected report.
        """
        if node.is_leaf or node.stats is None or node.stats.total == 0:
            return False

        report = report or self._report(node)
        best = report.best
        current = node.split
        if best.choice.attribute == current.attribute:
            return False

        current_merit = report.merit_of(current.attribute)
        if current_merit is None:
            current_merit = 0.0
        epsilon = hoeffding_bound(report.range_R, self.params.delta, node.stats.total)
        gap = best.merit - current_merit
        if not self._passes(gap, epsilon):
            return False

        if best.choice.is_null:
            node.split = None
            node.children = []
            node.examples_since_evaluation = 0
            self._log_event(node, "kill", current, NULL_CHOICE, gap, epsilon)
        else:
            self._install_split(node, best.choice)
            self._log_event(node, "replace", current, best.choice, gap, epsilon)
        return True

    def _install_split(self, node: TreeNode, choice: SplitChoice) -> None:
        node.split = choice
        node.children = spawn_children(
            node, choice, self.schema, self._ids, self.params.reuse_nominal_attributes, self.examples_seen
        )
        node.examples_since_evaluation = 0

    def _log_event(
        self, node: TreeNode, kind: str, old: SplitChoice, new: SplitChoice, gap: float, epsilon: float
    ) -> None:
        self.split_events.append(SplitEvent(self.examples_seen, node.node_id, kind, old, new))
        log = logger.info if kind != "split" else logger.debug
        log(
            "efdt %s at node %s t=%s: %s -> %s (gap=%.4f, eps=%.4f)",
            kind, node.node_id, self.examples_seen,
            old.label(self.schema), new.label(self.schema), gap, epsilon,
        )

    # --- Telemetry -----------------------------------------------------------------------------------
    def root_test_statistic(self) -> Optional[float]:
        """G(X_a) minus G(X_current) when the root is split on another attribute, else minus G(X_null)."""
        if self.root.stats.total == 0:
            return None
        report = self._report(self.root)
        best = report.best
        baseline = report.merit_of(NULL_SPLIT) or 0.0
        if not self.root.is_leaf and self.root.split.attribute != best.choice.attribute:
            baseline = report.merit_of(self.root.split.attribute) or 0.0
        return best.merit - baseline

    def model_size(self) -> Dict[str, int]:
        return model_size(self.root)


# ====================================================================================================
# 4. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging(log_to_file=False)
    logger.info("🔍 I04_anytime_tree self-test started.")

    schema = Schema.nominal_grid(attributes=2, values=2, classes=2)
    learner = HoeffdingAnytimeTree(schema, HyperParams(delta=0.05, internal_cadence=400))

    # first concept: class = a0; second concept: class = a1
    for t in range(6000):
        x0, x1 = t % 2, (t // 2) % 2
        label = x0 if t < 2000 else x1
        learner.learn_one(Instance((x0, x1), label))

    logger.info("Model size: %s", learner.model_size())
    for event in learner.split_events:
        logger.info(
            "  t=%s node=%s %s %s -> %s", event.timestep, event.node_id, event.event,
            event.old_choice.label(schema), event.new_choice.label(schema),
        )
    logger.info("✅ I04_anytime_tree self-test complete.")
