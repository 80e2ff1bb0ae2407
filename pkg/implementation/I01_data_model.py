# ====================================================================================================
# I01_data_model.py
# ----------------------------------------------------------------------------------------------------
# Shared data model for every learner: schemas, instances, sufficient statistics, tree nodes,
# split choices, split events and hyperparameters.
#
# Purpose:
#   - Describe the attribute space (Schema / AttributeSpec) and one labelled observation (Instance).
#   - Keep the class-conditional counts n_ijk (SufficientStats) with exact integer arithmetic for
#     nominal attributes and per-class Gaussian summaries for numeric attributes.
#   - Provide the tree node type and the traversal helpers shared by the incremental learners
#     and the batch oracle.
#
# Usage:
#   from implementation.I01_data_model import Schema, AttributeSpec, Instance, SufficientStats
#
#   schema = Schema.nominal_grid(attributes=5, values=5, classes=5)
#   stats = SufficientStats.empty(schema)
#   stats.update(Instance((0, 1, 2, 3, 4), label=2))
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
from core.C04_config_loader import get_section
from core.C05_error_handler import SchemaViolationError
from core.C06_validation_utils import (
    validate_min_int,
    validate_non_negative,
    validate_open_probability,
)
from core.C09_io_utils import save_dataframe


# ====================================================================================================
# 3. SCHEMA & INSTANCES
# ----------------------------------------------------------------------------------------------------
NULL_SPLIT: int = -1     # attribute index of the "do not split" candidate


class AttributeKind(Enum):
    NOMINAL = "nominal"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class AttributeSpec:
    """
    Description:
        Declaration of one attribute: a name plus either a list of nominal value names or the
        numeric kind.

    Raises:
        SchemaViolationError: Empty name, fewer than two nominal values, or duplicated value names.
    """

    name: str
    kind: AttributeKind
    value_names: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.name:
            raise SchemaViolationError("attribute names must be non-empty")
        if self.kind is AttributeKind.NOMINAL:
            if len(self.value_names) < 2:
                raise SchemaViolationError(f"nominal attribute '{self.name}' needs at least 2 values")
            if len(set(self.value_names)) != len(self.value_names):
                raise SchemaViolationError(f"nominal attribute '{self.name}' has duplicated value names")
        elif self.value_names:
            raise SchemaViolationError(f"numeric attribute '{self.name}' cannot declare value names")

    @classmethod
    def nominal(cls, name: str, value_names: Sequence[str]) -> "AttributeSpec":
        return cls(name, AttributeKind.NOMINAL, tuple(value_names))

    @classmethod
    def numeric(cls, name: str) -> "AttributeSpec":
        return cls(name, AttributeKind.NUMERIC)

    @property
    def is_nominal(self) -> bool:
        return self.kind is AttributeKind.NOMINAL

    @property
    def value_count(self) -> int:
        """Number of nominal values (0 for numeric attributes)."""
        return len(self.value_names)


@dataclass(frozen=True)
class Instance:
    """One labelled observation; values are aligned to the schema's attribute order."""

    values: Tuple[Union[int, float], ...]
    label: int


@dataclass(frozen=True)
class Schema:
    """
    Description:
        Ordered attribute declarations plus the class vocabulary.

    Raises:
        SchemaViolationError: Duplicate attribute names, fewer than two classes or duplicated
            class names.

    Notes:
        - Instances are validated against the schema once, on entry to a learner.
    """

    attributes: Tuple[AttributeSpec, ...]
    class_names: Tuple[str, ...]

    def __post_init__(self) -> None:
        names = [spec.name for spec in self.attributes]
        if len(set(names)) != len(names):
            raise SchemaViolationError(f"attribute names must be unique (got {names})")
        if len(self.class_names) < 2:
            raise SchemaViolationError(f"class_count must be >= 2 (got {len(self.class_names)})")
        if len(set(self.class_names)) != len(self.class_names):
            raise SchemaViolationError("class names must be unique")

    # --- Constructors --------------------------------------------------------------------------------
    @classmethod
    def nominal_grid(cls, attributes: int, values: int, classes: int, numeric_attributes: int = 0) -> "Schema":
        """Builds the generator schema: nominal a0..a{d-1} with values v0.., numeric after, classes c0.."""
        specs = [
            AttributeSpec.nominal(f"a{i}", [f"v{j}" for j in range(values)])
            for i in range(attributes)
        ]
        specs += [AttributeSpec.numeric(f"a{attributes + i}") for i in range(numeric_attributes)]
        return cls(tuple(specs), tuple(f"c{k}" for k in range(classes)))

    # --- Shape queries -------------------------------------------------------------------------------
    @property
    def class_count(self) -> int:
        return len(self.class_names)

    @property
    def attribute_count(self) -> int:
        return len(self.attributes)

    @property
    def nominal_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, spec in enumerate(self.attributes) if spec.is_nominal)

    @property
    def numeric_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, spec in enumerate(self.attributes) if not spec.is_nominal)

    @property
    def is_nominal_only(self) -> bool:
        return not self.numeric_indices

    def index_of(self, name: str) -> int:
        for index, spec in enumerate(self.attributes):
            if spec.name == name:
                return index
        raise KeyError(name)

    # --- Validation ----------------------------------------------------------------------------------
    def validate_instance(self, instance: Instance) -> Instance:
        """
        Description:
            Checks that an instance conforms to this schema.

        Args:
            instance (Instance): The observation to check.

        Returns:
            Instance: The same instance, for chaining.

        Raises:
            SchemaViolationError: Wrong arity, label outside [0, c), nominal index outside [0, v_i)
                or a non-finite numeric reading.
        """
        if len(instance.values) != len(self.attributes):
            raise SchemaViolationError(
                f"instance has {len(instance.values)} values, schema declares {len(self.attributes)}"
            )
        if not 0 <= instance.label < self.class_count:
            raise SchemaViolationError(f"label {instance.label} out of range [0, {self.class_count})")

        for spec, value in zip(self.attributes, instance.values):
            if spec.is_nominal:
                if not 0 <= value < spec.value_count or value != int(value):
                    raise SchemaViolationError(
                        f"value {value!r} out of range for attribute '{spec.name}' (v={spec.value_count})"
                    )
            elif not math.isfinite(value):
                raise SchemaViolationError(f"numeric attribute '{spec.name}' received non-finite {value!r}")
        return instance

    def describe(self) -> str:
        """One-line schema summary printed by the generate command."""
        nominal = self.nominal_indices
        value_counts = [self.attributes[i].value_count for i in nominal]
        return (
            f"attributes={self.attribute_count} (nominal={len(nominal)}, numeric={len(self.numeric_indices)}) "
            f"values={value_counts} classes={self.class_count}"
        )


# ====================================================================================================
# 4. SUFFICIENT STATISTICS
# ----------------------------------------------------------------------------------------------------
@dataclass
class GaussianEstimator:
    """
    Description:
        Running weighted mean / variance of one numeric attribute for one class, plus the observed
        min and max. Updated with the weighted Welford recurrence.

    Notes:
        - m2 is the sum of weighted squared deviations; it never goes negative because each step
          adds weight * delta_old * delta_new, which share a sign.
    """

    weight: float = 0.0
    mean: float = 0.0
    m2: float = 0.0
    min_value: float = math.inf
    max_value: float = -math.inf

    MEMORY_CELLS: ClassVar[int] = 5

    def update(self, value: float, weight: float = 1.0) -> None:
        new_weight = self.weight + weight
        delta = value - self.mean
        self.mean += weight * delta / new_weight
        self.m2 += weight * delta * (value - self.mean)
        self.weight = new_weight
        self.min_value = min(self.min_value, value)
        self.max_value = max(self.max_value, value)

    @property
    def variance(self) -> float:
        if self.weight <= 1.0:
            return 0.0
        return max(self.m2, 0.0) / (self.weight - 1.0)

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)

    def cdf(self, threshold: float) -> float:
        """Fraction of this class's mass expected at or below threshold."""
        if self.weight <= 0:
            return 0.0
        std = self.std
        if std <= 0.0:
            return 1.0 if threshold >= self.mean else 0.0
        return 0.5 * (1.0 + math.erf((threshold - self.mean) / (std * math.sqrt(2.0))))

    def copy(self) -> "GaussianEstimator":
        return replace(self)


@dataclass
class SufficientStats:
    """
    Description:
        The n_ijk statistics of one node.

        class_counts        int64 vector of length c
        nominal_counts      {attribute index: int64 table of shape (v_i, c)}
        numeric_estimators  {attribute index: [GaussianEstimator per class]}
        total               number of (weighted) examples folded in

    Notes:
        - Count identities (total = sum(class_counts), every nominal table sums to total) hold
          exactly because every update adds the same integer weight everywhere.
    """

    class_counts: np.ndarray
    nominal_counts: Dict[int, np.ndarray]
    numeric_estimators: Dict[int, List[GaussianEstimator]]
    total: int = 0

    @classmethod
    def empty(cls, schema: Schema) -> "SufficientStats":
        c = schema.class_count
        return cls(
            class_counts=np.zeros(c, dtype=np.int64),
            nominal_counts={
                i: np.zeros((schema.attributes[i].value_count, c), dtype=np.int64)
                for i in schema.nominal_indices
            },
            numeric_estimators={i: [GaussianEstimator() for _ in range(c)] for i in schema.numeric_indices},
        )

    # --- Updates -------------------------------------------------------------------------------------
    def update(self, instance: Instance, weight: int = 1) -> "SufficientStats":
        """
        Description:
            Folds one instance into the statistics.

        Args:
            instance (Instance): Observation aligned to the schema these stats were built from.
            weight (int): Integer multiplicity (the batch oracle folds duplicated domain points).

        Returns:
            SufficientStats: self.

        Raises:
            SchemaViolationError: Label or nominal value index outside the table bounds.
        """
        label = instance.label
        if not 0 <= label < self.class_counts.shape[0]:
            raise SchemaViolationError(f"label {label} out of range [0, {self.class_counts.shape[0]})")

        values = instance.values
        for attribute, table in self.nominal_counts.items():
            value = values[attribute]
            if not 0 <= value < table.shape[0]:
                raise SchemaViolationError(
                    f"value {value!r} out of range for attribute #{attribute} (v={table.shape[0]})"
                )

        for attribute, table in self.nominal_counts.items():
            table[int(values[attribute]), label] += weight
        for attribute, estimators in self.numeric_estimators.items():
            estimators[label].update(float(values[attribute]), weight)
        self.class_counts[label] += weight
        self.total += weight
        return self

    # --- Queries -------------------------------------------------------------------------------------
    def is_pure(self) -> bool:
        """True when at most one class has been observed."""
        return int(np.count_nonzero(self.class_counts)) <= 1

    def observed_range(self, attribute: int) -> Optional[Tuple[float, float]]:
        """Min and max reading of a numeric attribute across classes, or None before any reading."""
        estimators = [e for e in self.numeric_estimators[attribute] if e.weight > 0]
        if not estimators:
            return None
        return min(e.min_value for e in estimators), max(e.max_value for e in estimators)

    def memory_cells(self) -> int:
        """Accounting counter: number of stored cells (c + sum_i v_i*c + 5*c per numeric attribute)."""
        cells = int(self.class_counts.size)
        cells += sum(int(table.size) for table in self.nominal_counts.values())
        cells += sum(len(ests) * GaussianEstimator.MEMORY_CELLS for ests in self.numeric_estimators.values())
        return cells

    def check_identities(self) -> bool:
        if self.total != int(self.class_counts.sum()):
            return False
        if any(int(table.sum()) != self.total for table in self.nominal_counts.values()):
            return False
        if (self.class_counts < 0).any() or any((t < 0).any() for t in self.nominal_counts.values()):
            return False
        return all(e.m2 >= 0 for ests in self.numeric_estimators.values() for e in ests)

    def copy(self) -> "SufficientStats":
        return SufficientStats(
            class_counts=self.class_counts.copy(),
            nominal_counts={i: t.copy() for i, t in self.nominal_counts.items()},
            numeric_estimators={i: [e.copy() for e in ests] for i, ests in self.numeric_estimators.items()},
            total=self.total,
        )


def majority_class(stats: Optional[SufficientStats]) -> int:
    """Argmax of class_counts; ties (including an all-zero vector) resolve to the lowest class index."""
    if stats is None:
        return 0
    return int(np.argmax(stats.class_counts))


def update_stats(stats: SufficientStats, instance: Instance, schema: Schema) -> SufficientStats:
    """Validates the instance against the schema, then folds it into stats."""
    schema.validate_instance(instance)
    return stats.update(instance)


# ====================================================================================================
# 5. SPLITS & TREE NODES
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class SplitChoice:
    """An attribute test; threshold is set for numeric attributes only. NULL_SPLIT means no split."""

    attribute: int
    threshold: Optional[float] = None

    @property
    def is_null(self) -> bool:
        return self.attribute == NULL_SPLIT

    def branch_count(self, schema: Schema) -> int:
        spec = schema.attributes[self.attribute]
        return spec.value_count if spec.is_nominal else 2

    def branch_of(self, values: Sequence[Union[int, float]]) -> int:
        value = values[self.attribute]
        if self.threshold is None:
            return int(value)
        return 0 if value <= self.threshold else 1

    def label(self, schema: Schema) -> str:
        if self.is_null:
            return "null"
        name = schema.attributes[self.attribute].name
        return name if self.threshold is None else f"{name}<={self.threshold:.6g}"


NULL_CHOICE = SplitChoice(NULL_SPLIT)


@dataclass(eq=False)
class TreeNode:
    """
    Description:
        Leaf (split is None) or internal node of a learner or batch tree.

    Notes:
        - available: attributes still eligible as split candidates below this point.
        - created_at: learner timestep at which the node was created (0 for the root).
        - stats is None only on frozen VFDT internal nodes.
    """

    node_id: int
    stats: Optional[SufficientStats]
    available: FrozenSet[int]
    split: Optional[SplitChoice] = None
    children: List["TreeNode"] = field(default_factory=list)
    examples_since_evaluation: int = 0
    depth: int = 0
    created_at: int = 0

    @property
    def is_leaf(self) -> bool:
        return self.split is None

    def child_for(self, values: Sequence[Union[int, float]]) -> "TreeNode":
        return self.children[self.split.branch_of(values)]

    def predict(self) -> int:
        return majority_class(self.stats)


class NodeIdSequence:
    """Monotone node-id source owned by one learner."""

    def __init__(self, start: int = 0) -> None:
        self._counter = itertools.count(start)

    def next(self) -> int:
        return next(self._counter)


def child_available(parent: TreeNode, split: SplitChoice, schema: Schema, reuse_nominal: bool) -> FrozenSet[int]:
    """Candidate set for the children of a split: a used nominal attribute drops out unless reuse is on."""
    if schema.attributes[split.attribute].is_nominal and not reuse_nominal:
        return parent.available - {split.attribute}
    return parent.available


def spawn_children(
    parent: TreeNode,
    split: SplitChoice,
    schema: Schema,
    ids: NodeIdSequence,
    reuse_nominal: bool,
    timestep: int,
) -> List[TreeNode]:
    """Fresh leaves with zeroed counts, one per branch of split."""
    available = child_available(parent, split, schema, reuse_nominal)
    return [
        TreeNode(
            node_id=ids.next(),
            stats=SufficientStats.empty(schema),
            available=available,
            depth=parent.depth + 1,
            created_at=timestep,
        )
        for _ in range(split.branch_count(schema))
    ]


# ====================================================================================================
# 6. TREE TRAVERSAL HELPERS
# ----------------------------------------------------------------------------------------------------
def route_to_leaf(root: TreeNode, values: Sequence[Union[int, float]]) -> TreeNode:
    node = root
    while not node.is_leaf:
        node = node.child_for(values)
    return node


def route_path(root: TreeNode, values: Sequence[Union[int, float]]) -> List[TreeNode]:
    """Every node from root to the reached leaf, inclusive."""
    path = [root]
    while not path[-1].is_leaf:
        path.append(path[-1].child_for(values))
    return path


def predict_with_tree(root: TreeNode, values: Sequence[Union[int, float]]) -> int:
    return route_to_leaf(root, values).predict()


def iter_nodes(root: TreeNode) -> Iterator[TreeNode]:
    """Pre-order traversal, children in branch order."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def count_nodes(root: TreeNode) -> int:
    return sum(1 for _ in iter_nodes(root))


def count_leaves(root: TreeNode) -> int:
    return sum(1 for node in iter_nodes(root) if node.is_leaf)


def tree_depth(root: TreeNode) -> int:
    """Edges on the longest root-to-leaf path (a lone leaf has depth 0)."""
    deepest = 0
    stack = [(root, 0)]
    while stack:
        node, depth = stack.pop()
        deepest = max(deepest, depth)
        stack.extend((child, depth + 1) for child in node.children)
    return deepest


def model_size(root: TreeNode) -> Dict[str, int]:
    return {"nodes": count_nodes(root), "leaves": count_leaves(root), "depth": tree_depth(root)}


# ====================================================================================================
# 7. SPLIT EVENTS
# ----------------------------------------------------------------------------------------------------
SplitEventKind = Literal["split", "replace", "kill"]


@dataclass(frozen=True)
class SplitEvent:
    """One structural change: a leaf split, an internal re-split (replace) or a subtree kill."""

    timestep: int
    node_id: int
    event: SplitEventKind
    old_choice: SplitChoice
    new_choice: SplitChoice


def export_split_events(events: Sequence[SplitEvent], schema: Schema, file_path: str | Path) -> Path:
    """Writes the event log as CSV: timestep,node_id,event,old_attr,new_attr ('null' for no split)."""
    frame = pd.DataFrame(
        [
            {
                "timestep": e.timestep,
                "node_id": e.node_id,
                "event": e.event,
                "old_attr": e.old_choice.label(schema),
                "new_attr": e.new_choice.label(schema),
            }
            for e in events
        ],
        columns=["timestep", "node_id", "event", "old_attr", "new_attr"],
    )
    return save_dataframe(frame, file_path)


# ====================================================================================================
# 8. HYPERPARAMETERS
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class HyperParams:
    """
    Description:
        Learner hyperparameters.

        delta                     split-test significance, 0 < delta < 1
        tau                       tie-break threshold (VFDT; EFDT only with efdt_tie_break)
        leaf_cadence              examples at a leaf between split attempts
        internal_cadence          examples at an internal node between re-evaluations
        numeric_candidates        candidate thresholds per numeric attribute
        reuse_nominal_attributes  allow a nominal attribute to recur on a path
        efdt_tie_break            apply tau in the anytime tree's tests too

    Raises:
        ConfigValidationError: Any field violates its range.
    """

    delta: float = 0.05
    tau: float = 0.05
    leaf_cadence: int = 200
    internal_cadence: int = 2000
    numeric_candidates: int = 10
    reuse_nominal_attributes: bool = False
    efdt_tie_break: bool = False

    def __post_init__(self) -> None:
        validate_open_probability("delta", self.delta)
        validate_non_negative("tau", self.tau)
        validate_min_int("leaf_cadence", self.leaf_cadence)
        validate_min_int("internal_cadence", self.internal_cadence)
        validate_min_int("numeric_candidates", self.numeric_candidates)

    @classmethod
    def from_config(cls, **overrides: Any) -> "HyperParams":
        """Defaults from the 'learner' config section, then explicit overrides (None ignored)."""
        known = {f for f in cls.__dataclass_fields__}
        values = {k: v for k, v in get_section("learner").items() if k in known and v is not None}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


# ====================================================================================================
# 9. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging(log_to_file=False)
    logger.info("🔍 I01_data_model self-test started.")

    schema = Schema.nominal_grid(attributes=5, values=5, classes=5)
    stats = SufficientStats.empty(schema)
    for label in (1, 1, 3):
        update_stats(stats, Instance((0, 1, 2, 3, 4), label), schema)

    logger.info("Schema: %s", schema.describe())
    logger.info("Majority class: %s | identities hold: %s", majority_class(stats), stats.check_identities())
    logger.info("Memory cells per node: %s", stats.memory_cells())

    try:
        update_stats(stats, Instance((0, 1, 2, 3, 9), 0), schema)
    except SchemaViolationError as error:
        logger.info("Rejected as expected: %s", error)

    logger.info("✅ I01_data_model self-test complete.")
