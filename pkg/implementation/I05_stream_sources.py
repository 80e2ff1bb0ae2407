# ====================================================================================================
# I05_stream_sources.py
# ----------------------------------------------------------------------------------------------------
# Stream sources: the random-tree synthetic generator, abrupt-drift composition, CSV ingestion
# and export, and seeded shuffling.
#
# Purpose:
#   - Generate reproducible instances from a hidden random decision tree (nominal attributes,
#     optionally numeric ones) with a small explicitly specified PRNG.
#   - Compose two concepts into an abrupt-drift stream.
#   - Load CSV streams (header tags `name:nominal`, last column is the class) and write them back.
#   - Build per-seed stream specs for multi-seed experiments (StreamRecipe).
#
# Usage:
#   from implementation.I05_stream_sources import build_random_tree_concept, StreamSpec, ConceptSource
#
#   concept = build_random_tree_concept(seed=7, d=5, v=5, c=5)
#   spec = StreamSpec(ConceptSource(concept), length=100_000, instance_seed=7)
#   for instance in iter_stream(spec): ...
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
from core.C05_error_handler import (
    ConfigValidationError,
    EndOfStreamError,
    SchemaViolationError,
    StreamLoadError,
)
from core.C06_validation_utils import validate_fraction, validate_min_int
from core.C09_io_utils import read_csv_file, save_dataframe
from implementation.I01_data_model import AttributeSpec, Instance, Schema


# ====================================================================================================
# 3. PSEUDO-RANDOM GENERATOR
# ----------------------------------------------------------------------------------------------------
# xorshift64* (shifts 12 / 25 / 27, output multiplier 0x2545F4914F6CDD1D), seeded through
# splitmix64 (increment 0x9E3779B97F4A7C15, multipliers 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB).
# All arithmetic is on unsigned 64-bit integers, so any language reproduces the same streams.
# ----------------------------------------------------------------------------------------------------
MASK64: int = (1 << 64) - 1

CONCEPT_TAG: int = 0xC0
INSTANCE_TAG: int = 0x1D
DRIFT_TAG: int = 0xD1


def splitmix64(value: int) -> int:
    z = (value + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(*parts: int) -> int:
    """Folds integers into one 64-bit seed: h = splitmix64(h ^ part) for each part."""
    h = 0
    for part in parts:
        h = splitmix64(h ^ (int(part) & MASK64))
    return h


class XorShift64Star:
    """Small 64-bit PRNG; the constructor passes the seed through splitmix64 (state never 0)."""

    def __init__(self, seed: int) -> None:
        self.state = splitmix64(int(seed) & MASK64) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randbelow(self, n: int) -> int:
        """Integer in [0, n) by modulo reduction."""
        return self.next_u64() % n

    def shuffle(self, items: List[Any]) -> List[Any]:
        """In-place Fisher-Yates, last position first."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


# ====================================================================================================
# 4. RANDOM-TREE CONCEPTS
# ----------------------------------------------------------------------------------------------------
@dataclass
class ConceptNode:
    """Hidden-tree node: a leaf carries a label; an internal node tests one attribute."""

    label: Optional[int] = None
    attribute: Optional[int] = None
    threshold: Optional[float] = None
    children: List["ConceptNode"] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return self.attribute is None


@dataclass
class RandomTreeConcept:
    """
    Description:
        A labelling function over the schema's attribute domain, given by a hidden decision tree.

    Notes:
        - label_of() is total: every nominal value has a child and numeric cuts are binary.
    """

    schema: Schema
    root: ConceptNode
    seed: int = 0
    max_depth: int = 5
    leaf_probability: float = 0.15

    @classmethod
    def from_tree(cls, schema: Schema, root: ConceptNode, seed: int = 0) -> "RandomTreeConcept":
        """Wraps a hand-built hidden tree (tests and worked examples)."""
        return cls(schema=schema, root=root, seed=seed, max_depth=_concept_depth(root), leaf_probability=0.0)

    def label_of(self, values: Sequence[Union[int, float]]) -> int:
        node = self.root
        while not node.is_leaf:
            value = values[node.attribute]
            if node.threshold is None:
                node = node.children[int(value)]
            else:
                node = node.children[0 if value <= node.threshold else 1]
        return node.label

    def class_mass(self) -> np.ndarray:
        """Exact class distribution under uniform attribute draws, by enumerating the hidden leaves."""
        mass = np.zeros(self.schema.class_count, dtype=float)
        stack: List[Tuple[ConceptNode, float, Dict[int, Tuple[float, float]]]] = [(self.root, 1.0, {})]
        while stack:
            node, probability, intervals = stack.pop()
            if node.is_leaf:
                mass[node.label] += probability
                continue
            spec = self.schema.attributes[node.attribute]
            if spec.is_nominal:
                share = probability / spec.value_count
                stack.extend((child, share, intervals) for child in node.children)
                continue
            low, high = intervals.get(node.attribute, (0.0, 1.0))
            cut = min(max(node.threshold, low), high)
            left = (cut - low) / (high - low) if high > low else 0.0
            stack.append((node.children[0], probability * left, {**intervals, node.attribute: (low, cut)}))
            stack.append((node.children[1], probability * (1 - left), {**intervals, node.attribute: (cut, high)}))
        return mass


def _concept_depth(node: ConceptNode) -> int:
    if node.is_leaf:
        return 0
    return 1 + max(_concept_depth(child) for child in node.children)


def build_random_tree_concept(
    seed: int,
    d: int,
    v: int,
    c: int,
    max_depth: int = 5,
    leaf_prob: float = 0.15,
    numeric_attributes: int = 0,
) -> RandomTreeConcept:
    """
    Description:
        Grows a hidden tree by recursive random attribute selection.

    Args:
        seed (int): Concept seed; the same seed always yields the same concept.
        d (int): Nominal attributes (>= 1).
        v (int): Values per nominal attribute (>= 2).
        c (int): Classes (>= 2).
        max_depth (int): Maximum hidden-tree depth (>= 1).
        leaf_prob (float): Probability of stopping early at each level below the root.
        numeric_attributes (int): Extra numeric attributes, uniform in [0, 1).

    Returns:
        RandomTreeConcept: Concept over Schema.nominal_grid(d, v, c, numeric_attributes).

    Raises:
        ConfigValidationError: A parameter is out of range.

    Notes:
        - The root is always a split. Nominal attributes are not reused along a path, so without
          numeric attributes the depth is capped at d. Numeric attributes may recur with nested cuts.
        - Leaves are labelled uniformly at random over the c classes.
    """
    validate_min_int("attributes", d, minimum=1)
    validate_min_int("values", v, minimum=2)
    validate_min_int("classes", c, minimum=2)
    validate_min_int("max_depth", max_depth, minimum=1)
    validate_min_int("numeric_attributes", numeric_attributes, minimum=0)
    validate_fraction("leaf_probability", leaf_prob)

    schema = Schema.nominal_grid(d, v, c, numeric_attributes)
    depth_limit = max_depth
    if numeric_attributes == 0 and max_depth > d:
        depth_limit = d
        logger.debug("max_depth %s capped at %s (nominal attributes are not reused on a path)", max_depth, d)

    rng = XorShift64Star(derive_seed(seed, CONCEPT_TAG))
    numeric = list(schema.numeric_indices)

    def grow(depth: int, nominal_left: Tuple[int, ...], intervals: Dict[int, Tuple[float, float]]) -> ConceptNode:
        candidates = list(nominal_left) + numeric
        if depth >= depth_limit or not candidates or (depth > 0 and rng.random() < leaf_prob):
            return ConceptNode(label=rng.randbelow(c))

        attribute = candidates[rng.randbelow(len(candidates))]
        if attribute < d:
            remaining = tuple(a for a in nominal_left if a != attribute)
            return ConceptNode(
                attribute=attribute,
                children=[grow(depth + 1, remaining, intervals) for _ in range(v)],
            )

        low, high = intervals.get(attribute, (0.0, 1.0))
        cut = low + (high - low) * rng.random()
        return ConceptNode(
            attribute=attribute,
            threshold=cut,
            children=[
                grow(depth + 1, nominal_left, {**intervals, attribute: (low, cut)}),
                grow(depth + 1, nominal_left, {**intervals, attribute: (cut, high)}),
            ],
        )

    root = grow(0, tuple(range(d)), {})
    return RandomTreeConcept(schema=schema, root=root, seed=seed, max_depth=depth_limit, leaf_probability=leaf_prob)


# ====================================================================================================
# 5. STREAM SPECIFICATIONS
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class ConceptSource:
    concept: RandomTreeConcept


@dataclass(frozen=True)
class DriftSource:
    """Abrupt drift: concept_a labels t < switch_at, concept_b labels t >= switch_at."""

    concept_a: RandomTreeConcept
    concept_b: RandomTreeConcept
    switch_at: int


@dataclass(frozen=True)
class FileSource:
    """A CSV stream, optionally shuffled with a seed or ordered by label (stable)."""

    path: Path
    shuffle_seed: Optional[int] = None
    order_by_label: bool = False
    schema: Optional[Schema] = None


StreamSource = Union[ConceptSource, DriftSource, FileSource]


@dataclass(frozen=True)
class StreamSpec:
    """
    Description:
        Immutable description of a stream; (spec, seeds) fully determine the instance sequence.

    Raises:
        ConfigValidationError: length < 1, switch_at outside [0, length), mismatched drift schemas.
    """

    source: StreamSource
    length: int
    instance_seed: int = 0

    def __post_init__(self) -> None:
        validate_min_int("length", self.length, minimum=1)
        if isinstance(self.source, DriftSource):
            if not 0 <= self.source.switch_at < self.length:
                raise ConfigValidationError(
                    f"switch_at must lie in [0, length) (got {self.source.switch_at}, length={self.length})"
                )
            if self.source.concept_a.schema != self.source.concept_b.schema:
                raise ConfigValidationError("drift concepts must share one schema")

    @property
    def schema(self) -> Schema:
        source = self.source
        if isinstance(source, ConceptSource):
            return source.concept.schema
        if isinstance(source, DriftSource):
            return source.concept_a.schema
        return _materialise_file(source)[0]

    @property
    def drift_at(self) -> Optional[int]:
        return self.source.switch_at if isinstance(self.source, DriftSource) else None


def draw_values(schema: Schema, instance_seed: int, t: int) -> Tuple[Union[int, float], ...]:
    """Attribute values at timestep t: uniform nominal indices and uniform [0, 1) numeric readings."""
    rng = XorShift64Star(derive_seed(instance_seed, INSTANCE_TAG, t))
    return tuple(
        rng.randbelow(spec.value_count) if spec.is_nominal else rng.random()
        for spec in schema.attributes
    )


def next_instance(spec: StreamSpec, t: int) -> Instance:
    """
    Description:
        Random-access instance t of a stream.

    Args:
        spec (StreamSpec): The stream.
        t (int): Timestep, 0 <= t < spec.length.

    Returns:
        Instance: Deterministic in (spec, t).

    Raises:
        EndOfStreamError: t outside [0, length) (or beyond the rows of a file source).
    """
    if not 0 <= t < spec.length:
        raise EndOfStreamError(f"t={t} outside stream of length {spec.length}")

    source = spec.source
    if isinstance(source, FileSource):
        instances = _materialise_file(source)[1]
        if t >= len(instances):
            raise EndOfStreamError(f"t={t} beyond the {len(instances)} rows of {source.path}")
        return instances[t]

    if isinstance(source, DriftSource):
        concept = source.concept_b if t >= source.switch_at else source.concept_a
    else:
        concept = source.concept

    values = draw_values(concept.schema, spec.instance_seed, t)
    return Instance(values, concept.label_of(values))


def iter_stream(spec: StreamSpec) -> Iterator[Instance]:
    if isinstance(spec.source, FileSource):
        yield from _materialise_file(spec.source)[1][: spec.length]
        return
    for t in range(spec.length):
        yield next_instance(spec, t)


def materialise(spec: StreamSpec) -> List[Instance]:
    return list(iter_stream(spec))


# ====================================================================================================
# 6. CSV INGESTION & EXPORT
# ----------------------------------------------------------------------------------------------------
NOMINAL_TAG: str = ":nominal"
CLASS_COLUMN: str = "class"


def _parse_header(columns: Sequence[str]) -> Tuple[List[str], List[bool]]:
    names, tagged = [], []
    for raw in columns:
        text = str(raw).strip()
        is_tagged = text.endswith(NOMINAL_TAG)
        name = text[: -len(NOMINAL_TAG)] if is_tagged else text
        if not name:
            raise StreamLoadError("header contains an empty column name")
        names.append(name)
        tagged.append(is_tagged)
    return names, tagged


def _as_numbers(column: pd.Series) -> Optional[List[float]]:
    # float() parses repr() output exactly, so exported streams reload bit-for-bit
    try:
        numbers = [float(value) for value in column]
    except ValueError:
        return None
    return numbers if all(math.isfinite(x) for x in numbers) else None


def load_csv(
    file_path: str | Path, infer_schema: bool = True, schema: Schema | None = None
) -> Tuple[Schema, List[Instance]]:
    """
    Description:
        Loads a CSV stream. The header names the attributes; the last column is the class.

    Args:
        file_path (str | Path): CSV path.
        infer_schema (bool): Infer the schema from the data when none is supplied.
        schema (Schema | None): Declared schema; values are mapped by name and unknown values fail.

    Returns:
        Tuple[Schema, List[Instance]]: The schema and instances in file order.

    Raises:
        StreamLoadError: Missing or empty file, ragged rows, empty cells, unknown values, a column
            that cannot form a valid attribute, or a header that does not match the schema.

    Notes:
        - Inference: a column is nominal iff its header is tagged `:nominal` or any value is
          non-numeric. Nominal values and class labels are indexed by first appearance.
    """
    path = Path(file_path)
    try:
        raw = read_csv_file(path, header=None, dtype=str, keep_default_na=False, skipinitialspace=True)
    except FileNotFoundError as exc:
        raise StreamLoadError(f"stream file not found: {path}") from exc
    except pd.errors.EmptyDataError as exc:
        raise StreamLoadError(f"stream file is empty: {path}") from exc
    except pd.errors.ParserError as exc:
        raise StreamLoadError(f"ragged row in {path}: {exc}") from exc

    names, tagged = _parse_header(raw.iloc[0].tolist())
    body = raw.iloc[1:].reset_index(drop=True)
    if body.empty:
        raise StreamLoadError(f"stream file has a header but no rows: {path}")
    if len(names) < 2:
        raise StreamLoadError(f"stream file needs at least one attribute and a class column: {path}")

    missing = body.isna() | (body.apply(lambda col: col.astype(str).str.strip()) == "")
    if missing.to_numpy().any():
        row = int(np.argmax(missing.to_numpy().any(axis=1))) + 2
        raise StreamLoadError(f"ragged or empty cell at line {row} of {path}")
    body = body.apply(lambda col: col.str.strip())

    if schema is None and not infer_schema:
        raise StreamLoadError("schema inference disabled and no schema supplied")

    try:
        if schema is None:
            schema = _infer_schema(names, tagged, body)
        encoded = _encode_columns(schema, names, body, path)
    except SchemaViolationError as exc:
        raise StreamLoadError(f"{path}: {exc}") from exc

    labels = encoded.pop()
    instances = [Instance(tuple(row), int(label)) for row, label in zip(zip(*encoded), labels)]
    logger.info("📥 Loaded %s instances from %s (%s)", len(instances), path.name, schema.describe())
    return schema, instances


def _infer_schema(names: List[str], tagged: List[bool], body: pd.DataFrame) -> Schema:
    specs: List[AttributeSpec] = []
    for position, (name, is_tagged) in enumerate(zip(names[:-1], tagged[:-1])):
        column = body[position]
        if is_tagged or _as_numbers(column) is None:
            specs.append(AttributeSpec.nominal(name, [str(x) for x in pd.unique(column)]))
        else:
            specs.append(AttributeSpec.numeric(name))
    class_names = tuple(str(x) for x in pd.unique(body[len(names) - 1]))
    return Schema(tuple(specs), class_names)


def _encode_columns(schema: Schema, names: List[str], body: pd.DataFrame, path: Path) -> List[List[Any]]:
    if len(names) - 1 != schema.attribute_count:
        raise StreamLoadError(
            f"{path} has {len(names) - 1} attribute columns, schema declares {schema.attribute_count}"
        )

    columns: List[List[Any]] = []
    for position, spec in enumerate(schema.attributes):
        if names[position] != spec.name:
            raise StreamLoadError(f"column {position} is '{names[position]}', schema expects '{spec.name}'")
        column = body[position]
        if spec.is_nominal:
            lookup = {value: index for index, value in enumerate(spec.value_names)}
            unknown = sorted(set(column) - set(lookup))
            if unknown:
                raise StreamLoadError(f"unknown values {unknown[:5]} for attribute '{spec.name}'")
            columns.append([lookup[value] for value in column])
        else:
            numbers = _as_numbers(column)
            if numbers is None:
                raise StreamLoadError(f"non-numeric or non-finite reading in numeric attribute '{spec.name}'")
            columns.append(numbers)

    class_lookup = {value: index for index, value in enumerate(schema.class_names)}
    labels = body[len(names) - 1]
    unknown = sorted(set(labels) - set(class_lookup))
    if unknown:
        raise StreamLoadError(f"unknown class labels {unknown[:5]}")
    columns.append([class_lookup[value] for value in labels])
    return columns


def write_csv(file_path: str | Path, schema: Schema, instances: Iterable[Instance]) -> Path:
    """Writes a stream in the load_csv format: nominal columns tagged, class column last."""
    header = [
        f"{spec.name}{NOMINAL_TAG}" if spec.is_nominal else spec.name for spec in schema.attributes
    ] + [CLASS_COLUMN]
    rows = [
        [
            spec.value_names[int(value)] if spec.is_nominal else repr(float(value))
            for spec, value in zip(schema.attributes, instance.values)
        ]
        + [schema.class_names[instance.label]]
        for instance in instances
    ]
    return save_dataframe(pd.DataFrame(rows, columns=header), file_path)


def shuffle(instances: Sequence[Instance], seed: int) -> List[Instance]:
    """Seeded Fisher-Yates permutation (XorShift64Star(seed)); the input is left untouched."""
    return XorShift64Star(seed).shuffle(list(instances))


def order_by_label(instances: Sequence[Instance]) -> List[Instance]:
    """Stable sort by class label: a stream whose concept changes as each class block ends."""
    return sorted(instances, key=lambda instance: instance.label)


@functools.lru_cache(maxsize=8)
def _materialise_file(source: FileSource) -> Tuple[Schema, Tuple[Instance, ...]]:
    schema, instances = load_csv(source.path, schema=source.schema)
    if source.order_by_label:
        instances = order_by_label(instances)
    elif source.shuffle_seed is not None:
        instances = shuffle(instances, source.shuffle_seed)
    return schema, tuple(instances)


# ====================================================================================================
# 7. PER-SEED RECIPES
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class StreamRecipe:
    """
    Description:
        Seed-independent stream parameters; build_stream_spec() turns them into one stream per seed.

        kind="tree"   random-tree concept; concept and instance seeds derive from the run seed
        kind="drift"  two random-tree concepts swapped at drift_at (default: stream midpoint)
        kind="file"   CSV stream; the run seed is the shuffle seed unless order_by_label is set
    """

    kind: Literal["tree", "drift", "file"] = "tree"
    attributes: int = 5
    values: int = 5
    classes: int = 5
    numeric_attributes: int = 0
    length: int = 100_000
    max_depth: int = 5
    leaf_probability: float = 0.15
    drift_at: Optional[int] = None
    path: Optional[Path] = None
    order_by_label: bool = False
    shuffle_file: bool = True


def build_stream_spec(recipe: StreamRecipe, seed: int) -> StreamSpec:
    """
    Description:
        Builds the stream for one run seed.

    Args:
        recipe (StreamRecipe): Stream parameters.
        seed (int): Run seed.

    Returns:
        StreamSpec: The seeded stream.

    Raises:
        ConfigValidationError: Invalid parameters (including a file recipe without a path).
        StreamLoadError: The file source cannot be loaded.
    """
    if recipe.kind == "file":
        if recipe.path is None:
            raise ConfigValidationError("file streams need a CSV path")
        source = FileSource(
            path=Path(recipe.path),
            shuffle_seed=seed if recipe.shuffle_file and not recipe.order_by_label else None,
            order_by_label=recipe.order_by_label,
        )
        rows = len(_materialise_file(source)[1])
        return StreamSpec(source, length=min(recipe.length, rows) if recipe.length else rows, instance_seed=seed)

    def concept(concept_seed: int) -> RandomTreeConcept:
        return build_random_tree_concept(
            concept_seed, recipe.attributes, recipe.values, recipe.classes,
            recipe.max_depth, recipe.leaf_probability, recipe.numeric_attributes,
        )

    instance_seed = derive_seed(seed, INSTANCE_TAG)
    if recipe.kind == "drift":
        switch_at = recipe.drift_at if recipe.drift_at is not None else recipe.length // 2
        source = DriftSource(concept(seed), concept(derive_seed(seed, DRIFT_TAG)), switch_at)
        return StreamSpec(source, recipe.length, instance_seed)
    return StreamSpec(ConceptSource(concept(seed)), recipe.length, instance_seed)


# ====================================================================================================
# 8. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging(log_to_file=False)
    logger.info("🔍 I05_stream_sources self-test started.")

    concept = build_random_tree_concept(seed=7, d=5, v=5, c=5)
    logger.info("Class mass: %s", np.round(concept.class_mass(), 4).tolist())

    spec = StreamSpec(ConceptSource(concept), length=5, instance_seed=7)
    for instance in iter_stream(spec):
        logger.info("  %s -> %s", instance.values, instance.label)

    with tempfile.TemporaryDirectory() as tmp:
        target = Path(tmp) / "stream.csv"
        write_csv(target, concept.schema, materialise(spec))
        schema, loaded = load_csv(target, schema=concept.schema)
        logger.info("Round trip identical: %s", loaded == materialise(spec))

    logger.info("✅ I05_stream_sources self-test complete.")
