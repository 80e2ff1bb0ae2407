# ====================================================================================================
# I06_batch_oracle.py
# ----------------------------------------------------------------------------------------------------
# Batch ID3-style decision tree (information gain, nominal attributes, no pruning) used as the
# convergence target of the anytime tree, plus tree comparison and export.
#
# Purpose:
#   - Fit a batch tree on a materialised dataset or on aggregated (values, label) counts.
#   - Compare trees structurally and extensionally (prediction disagreement on a domain sample).
#   - Export trees as indented text for golden-file tests.
#
# Usage:
#   from implementation.I06_batch_oracle import batch_fit, trees_structurally_equal
#
#   oracle = batch_fit(instances, schema)
#   same = trees_structurally_equal(learner.root, oracle)
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
from core.C05_error_handler import ConfigValidationError
from core.C06_validation_utils import validate_non_empty
from implementation.I01_data_model import (
    Instance,
    NodeIdSequence,
    Schema,
    SplitChoice,
    SufficientStats,
    TreeNode,
    predict_with_tree,
)
from implementation.I02_split_metrics import info_gain
from implementation.I05_stream_sources import RandomTreeConcept

DomainCounts = Mapping[Tuple[Tuple[Union[int, float], ...], int], int]


# ====================================================================================================
# 3. BATCH FITTING
# ----------------------------------------------------------------------------------------------------
def batch_fit(instances: Iterable[Instance], schema: Schema) -> TreeNode:
    """
    Description:
        Fits the unpruned batch tree on a dataset.

    Args:
        instances (Iterable[Instance]): Training data (at least one instance).
        schema (Schema): Attribute declarations; only nominal attributes are split on.

    Returns:
        TreeNode: Root of the batch tree; every node carries the statistics of its subset.

    Notes:
        - Order-independent: only the (values, label) multiset matters.
    """
    counts = Counter((tuple(instance.values), instance.label) for instance in instances)
    validate_non_empty(counts, label="batch training set")
    return fit_from_counts(counts, schema)


def fit_from_counts(counts: DomainCounts, schema: Schema) -> TreeNode:
    """
    Description:
        Fits the batch tree from aggregated (values, label) -> multiplicity counts.

        At each node: stop when pure, when no nominal attribute is left, or when every remaining
        attribute is constant on the subset. Otherwise split on the attribute with the highest
        gain (lowest index on ties). A zero-gain split is still taken when some attribute
        separates the data, so XOR-shaped concepts are learnt.

    Args:
        counts (DomainCounts): Aggregated training data.
        schema (Schema): Attribute declarations.

    Returns:
        TreeNode: Root of the batch tree.
    """
    ids = NodeIdSequence()

    def build(subset: Dict[Tuple[Tuple[Any, ...], int], int], available: FrozenSet[int], depth: int) -> TreeNode:
        stats = _stats_of(subset, schema)
        node = TreeNode(node_id=ids.next(), stats=stats, available=available, depth=depth)
        if stats.total == 0 or stats.is_pure():
            return node

        separating = [a for a in sorted(available) if _is_separating(stats, a)]
        if not separating:
            return node

        gains = [(info_gain(stats, SplitChoice(a), schema), a) for a in separating]
        best_gain = max(g for g, _ in gains)
        attribute = min(a for g, a in gains if g == best_gain)

        node.split = SplitChoice(attribute)
        remaining = available - {attribute}
        for value in range(schema.attributes[attribute].value_count):
            child_subset = {key: w for key, w in subset.items() if key[0][attribute] == value}
            node.children.append(build(child_subset, remaining, depth + 1))
        return node

    return build(dict(counts), frozenset(schema.nominal_indices), 0)


def _stats_of(subset: Mapping[Tuple[Tuple[Any, ...], int], int], schema: Schema) -> SufficientStats:
    stats = SufficientStats.empty(schema)
    for (values, label), weight in subset.items():
        stats.update(Instance(values, label), weight=weight)
    return stats


def _is_separating(stats: SufficientStats, attribute: int) -> bool:
    """True when the subset takes at least two values of a nominal attribute."""
    return int(np.count_nonzero(stats.nominal_counts[attribute].sum(axis=1))) >= 2


class PrefixOracle:
    """
    Description:
        Batch tree on a growing stream prefix. Observations are folded into a Counter so that
        refitting at each checkpoint costs time in the number of DISTINCT points, not the prefix
        length. fit() equals batch_fit() on the raw prefix.
    """

    def __init__(self, schema: Schema) -> None:
        self.schema = schema
        self.counts: Counter = Counter()
        self.n = 0

    def observe(self, instance: Instance) -> None:
        self.counts[(tuple(instance.values), instance.label)] += 1
        self.n += 1

    def fit(self) -> TreeNode:
        validate_non_empty(self.counts, label="prefix")
        return fit_from_counts(self.counts, self.schema)


# ====================================================================================================
# 4. TREE COMPARISON
# ----------------------------------------------------------------------------------------------------
def trees_structurally_equal(a: TreeNode, b: TreeNode) -> bool:
    """Same split attribute/threshold at every corresponding node and same leaf majority labels."""
    stack = [(a, b)]
    while stack:
        left, right = stack.pop()
        if left.is_leaf != right.is_leaf:
            return False
        if left.is_leaf:
            if left.predict() != right.predict():
                return False
            continue
        if left.split != right.split or len(left.children) != len(right.children):
            return False
        stack.extend(zip(left.children, right.children))
    return True


def enumerate_domain(schema: Schema) -> List[Tuple[int, ...]]:
    """Every point of a nominal-only attribute domain, in lexicographic value order."""
    if not schema.is_nominal_only:
        raise ConfigValidationError("domain enumeration needs a nominal-only schema")
    return list(itertools.product(*(range(spec.value_count) for spec in schema.attributes)))


def extensional_disagreement(a: TreeNode, b: TreeNode, domain_sample: Sequence[Sequence[Any]]) -> float:
    """Fraction of sample points on which the two trees predict different classes."""
    validate_non_empty(domain_sample, label="domain sample")
    differing = sum(1 for values in domain_sample if predict_with_tree(a, values) != predict_with_tree(b, values))
    return differing / len(domain_sample)


def concept_domain_counts(concept: RandomTreeConcept) -> Counter:
    """Exhaustive domain labelled by the concept, one count per point."""
    return Counter((values, concept.label_of(values)) for values in enumerate_domain(concept.schema))


def has_distinct_gain_ordering(concept: RandomTreeConcept, margin: float = 0.05) -> bool:
    """
    Description:
        Checks, on the concept's exhaustive domain, that at every impure node of the batch tree
        the best attribute has gain of at least margin and beats the runner-up by at least margin.

    Args:
        concept (RandomTreeConcept): Nominal-only concept.
        margin (float): Minimum gap between the best and second-best gains.

    Returns:
        bool: True when the tree is identifiable from a stream by gain comparisons alone.
    """
    schema = concept.schema

    def check(subset: Dict[Tuple[Tuple[Any, ...], int], int], available: FrozenSet[int]) -> bool:
        stats = _stats_of(subset, schema)
        if stats.is_pure() or not available:
            return True
        gains = [(info_gain(stats, SplitChoice(a), schema), a) for a in available]
        ranked = sorted(gains, key=lambda ga: (-ga[0], ga[1]))
        best_gain, best = ranked[0]
        if best_gain < margin or (len(ranked) > 1 and best_gain - ranked[1][0] < margin):
            return False
        remaining = available - {best}
        return all(
            check({k: w for k, w in subset.items() if k[0][best] == value}, remaining)
            for value in range(schema.attributes[best].value_count)
        )

    return check(dict(concept_domain_counts(concept)), frozenset(schema.nominal_indices))


# ====================================================================================================
# 5. TEXT EXPORT
# ----------------------------------------------------------------------------------------------------
def export_tree_text(root: TreeNode, schema: Schema) -> List[str]:
    """
    Description:
        Indented text export, one node per line: `attr=value ->` per branch, `class=k` at leaves.

    Args:
        root (TreeNode): Tree to export.
        schema (Schema): Attribute and value names.

    Returns:
        List[str]: Lines, two spaces of indentation per level.
    """
    lines: List[str] = []

    def branch_labels(node: TreeNode) -> List[str]:
        spec = schema.attributes[node.split.attribute]
        if spec.is_nominal:
            return [f"{spec.name}={value}" for value in spec.value_names]
        threshold = f"{node.split.threshold:.6g}"
        return [f"{spec.name}<={threshold}", f"{spec.name}>{threshold}"]

    def walk(node: TreeNode, indent: int) -> None:
        pad = "  " * indent
        if node.is_leaf:
            lines.append(f"{pad}class={node.predict()}")
            return
        for text, child in zip(branch_labels(node), node.children):
            lines.append(f"{pad}{text} ->")
            walk(child, indent + 1)

    walk(root, 0)
    return lines


# ====================================================================================================
# 6. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging(log_to_file=False)
    logger.info("🔍 I06_batch_oracle self-test started.")

    schema = Schema.nominal_grid(attributes=2, values=2, classes=2)
    xor = [Instance((x0, x1), x0 ^ x1) for x0 in (0, 1) for x1 in (0, 1)]
    tree = batch_fit(xor, schema)
    for line in export_tree_text(tree, schema):
        logger.info("  %s", line)

    logger.info("Self-equal: %s", trees_structurally_equal(tree, tree))
    logger.info("Disagreement with itself: %s", extensional_disagreement(tree, tree, enumerate_domain(schema)))
    logger.info("✅ I06_batch_oracle self-test complete.")
