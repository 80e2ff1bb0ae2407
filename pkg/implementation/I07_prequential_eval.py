# ====================================================================================================
# I07_prequential_eval.py
# ----------------------------------------------------------------------------------------------------
# Prequential (test-then-train) evaluation, paired multi-seed comparisons, and the instrumented
# lock-step runs behind the simultaneity, dominance and convergence checks.
#
# Purpose:
#   - Predict each instance first, score it, then learn from it; record error, model size and CPU
#     time at regular checkpoints.
#   - Run VFDT and EFDT on byte-identical instance sequences for every seed (optionally on a
#     process pool) and average the curves.
#   - Provide the acceptance helpers: settle timestep, post-drift windowed error, CPU ratio.
#
# Usage:
#   from implementation.I07_prequential_eval import prequential_run, compare_run, make_learner
#
#   summary = prequential_run(make_learner("efdt", spec.schema, params), spec)
#   result = compare_run(StreamRecipe(), params, seeds=range(1, 11))
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
from core.C06_validation_utils import validate_min_int, validate_non_empty
from core.C18_parallel_executor import run_in_parallel
from implementation.I01_data_model import HyperParams, Instance, Schema, SplitEvent, TreeNode
from implementation.I03_hoeffding_tree import HoeffdingTree
from implementation.I04_anytime_tree import HoeffdingAnytimeTree
from implementation.I05_stream_sources import StreamRecipe, StreamSpec, build_stream_spec, materialise
from implementation.I06_batch_oracle import PrefixOracle, trees_structurally_equal


# ====================================================================================================
# 3. LEARNER FACTORY
# ----------------------------------------------------------------------------------------------------
class StreamLearner(Protocol):
    name: str
    split_events: List[SplitEvent]

    def predict(self, instance: Instance) -> int: ...

    def learn_one(self, instance: Instance) -> Any: ...

    def model_size(self) -> Dict[str, int]: ...


LEARNERS: Dict[str, Callable[[Schema, HyperParams], StreamLearner]] = {
    "vfdt": HoeffdingTree,
    "efdt": HoeffdingAnytimeTree,
}


def make_learner(name: str, schema: Schema, params: HyperParams) -> StreamLearner:
    if name not in LEARNERS:
        raise ConfigValidationError(f"unknown learner '{name}' (choose from {sorted(LEARNERS)})")
    return LEARNERS[name](schema, params)


# ====================================================================================================
# 4. RECORDS & SUMMARIES
# ----------------------------------------------------------------------------------------------------
RESULT_COLUMNS: List[str] = ["timestep", "cum_error", "window_error", "nodes", "leaves", "depth", "cpu_s"]


@dataclass(frozen=True)
class PrequentialRecord:
    timestep: int
    cum_error: float
    window_error: float
    nodes: int
    leaves: int
    depth: int
    cpu_s: float


@dataclass
class RunSummary:
    """
    Description:
        Outcome of one prequential run.

    Notes:
        - total_error_rate is errors / length exactly.
    """

    learner: str
    seed: Optional[int]
    length: int
    errors: int
    total_cpu_seconds: float
    records: List[PrequentialRecord]
    split_events: List[SplitEvent] = field(default_factory=list)

    @property
    def total_error_rate(self) -> float:
        return self.errors / self.length

    @property
    def final_nodes(self) -> int:
        return self.records[-1].nodes

    @property
    def final_leaves(self) -> int:
        return self.records[-1].leaves

    def to_frame(self, with_learner: bool = False) -> pd.DataFrame:
        frame = pd.DataFrame([vars(r) for r in self.records], columns=RESULT_COLUMNS)
        if with_learner:
            frame.insert(0, "learner", self.learner)
        return frame


# ====================================================================================================
# 5. PREQUENTIAL RUN
# ----------------------------------------------------------------------------------------------------
def prequential_run(
    learner: StreamLearner,
    stream: StreamSpec | Sequence[Instance],
    checkpoint_every: int = 1000,
    window: int = 1000,
    seed: Optional[int] = None,
) -> RunSummary:
    """
    Description:
        Interleaved test-then-train evaluation of one fresh learner.

    Args:
        learner (StreamLearner): A fresh learner.
        stream (StreamSpec | Sequence[Instance]): The stream, or its materialised instances.
        checkpoint_every (int): Instances between records; a final record is always added.
        window (int): Width W of the sliding error window.
        seed (int | None): Run seed carried into the summary.

    Returns:
        RunSummary: Errors, CPU time and checkpoint records.

    Raises:
        StreamLoadError: Propagated from file sources.

    Notes:
        - CPU time is process time around predict + learn only (stream generation excluded).
    """
    validate_min_int("checkpoint_every", checkpoint_every)
    validate_min_int("window", window)
    instances = materialise(stream) if isinstance(stream, StreamSpec) else list(stream)
    validate_non_empty(instances, label="stream")

    recent: deque = deque(maxlen=window)
    errors = 0
    cpu = 0.0
    records: List[PrequentialRecord] = []
    length = len(instances)

    for t, instance in enumerate(instances):
        started = time.process_time()
        predicted = learner.predict(instance)
        learner.learn_one(instance)
        cpu += time.process_time() - started

        mistake = int(predicted != instance.label)
        errors += mistake
        recent.append(mistake)

        timestep = t + 1
        if timestep % checkpoint_every == 0 or timestep == length:
            size = learner.model_size()
            records.append(
                PrequentialRecord(
                    timestep=timestep,
                    cum_error=errors / timestep,
                    window_error=sum(recent) / len(recent),
                    nodes=size["nodes"],
                    leaves=size["leaves"],
                    depth=size["depth"],
                    cpu_s=cpu,
                )
            )
            logger.debug("%s t=%s cum_error=%.4f nodes=%s", learner.name, timestep, errors / timestep, size["nodes"])

    return RunSummary(
        learner=learner.name,
        seed=seed,
        length=length,
        errors=errors,
        total_cpu_seconds=cpu,
        records=records,
        split_events=list(learner.split_events),
    )


# ====================================================================================================
# 6. PAIRED MULTI-SEED COMPARISON
# ----------------------------------------------------------------------------------------------------
@dataclass
class ComparisonResult:
    """Per-learner run summaries in seed order, plus the drift point when the stream drifts."""

    seeds: List[int]
    summaries: Dict[str, List[RunSummary]]
    schema: Schema
    drift_at: Optional[int] = None

    def mean_curves(self) -> pd.DataFrame:
        """Pointwise mean of every result column across seeds, one block per learner."""
        frames = [s.to_frame(with_learner=True) for runs in self.summaries.values() for s in runs]
        combined = pd.concat(frames, ignore_index=True)
        means = combined.groupby(["learner", "timestep"], sort=False, as_index=False)[RESULT_COLUMNS[1:]].mean()
        return means[["learner"] + RESULT_COLUMNS]

    def overview(self) -> Dict[str, Tuple[float, float]]:
        """Mean total error E and mean CPU seconds T per learner."""
        return {
            name: (
                float(np.mean([s.total_error_rate for s in runs])),
                float(np.mean([s.total_cpu_seconds for s in runs])),
            )
            for name, runs in self.summaries.items()
        }


def _run_seed(task: Tuple[StreamRecipe, HyperParams, int, Tuple[str, ...], int, int]) -> List[RunSummary]:
    recipe, params, seed, learners, checkpoint_every, window = task
    spec = build_stream_spec(recipe, seed)
    instances = materialise(spec)
    return [
        prequential_run(make_learner(name, spec.schema, params), instances, checkpoint_every, window, seed)
        for name in learners
    ]


def compare_run(
    recipe: StreamRecipe,
    params: HyperParams,
    seeds: Iterable[int],
    learners: Sequence[str] = ("vfdt", "efdt"),
    checkpoint_every: int = 1000,
    window: int = 1000,
    workers: int = 1,
    show_progress: bool = False,
) -> ComparisonResult:
    """
    Description:
        Runs every learner on the same instances for each seed.

    Args:
        recipe (StreamRecipe): Stream parameters shared by all seeds.
        params (HyperParams): Hyperparameters shared by all learners.
        seeds (Iterable[int]): Run seeds (at least one).
        learners (Sequence[str]): Learner names.
        checkpoint_every (int): Instances between records.
        window (int): Sliding error window.
        workers (int): Worker processes; 1 runs inline.
        show_progress (bool): tqdm progress over seeds.

    Returns:
        ComparisonResult: Summaries merged in seed order.
    """
    seed_list = [int(s) for s in seeds]
    validate_non_empty(seed_list, label="seeds")
    for name in learners:
        if name not in LEARNERS:
            raise ConfigValidationError(f"unknown learner '{name}' (choose from {sorted(LEARNERS)})")

    tasks = [(recipe, params, seed, tuple(learners), checkpoint_every, window) for seed in seed_list]
    logger.info("▶️  Comparing %s on %s seed(s), stream=%s length=%s", list(learners), len(seed_list), recipe.kind, recipe.length)
    per_seed = run_in_parallel(_run_seed, tasks, mode="process", max_workers=workers, show_progress=show_progress)

    summaries: Dict[str, List[RunSummary]] = {name: [] for name in learners}
    for runs in per_seed:
        for summary in runs:
            summaries[summary.learner].append(summary)

    drift_at = None
    if recipe.kind == "drift":
        drift_at = recipe.drift_at if recipe.drift_at is not None else recipe.length // 2
    schema = build_stream_spec(recipe, seed_list[0]).schema
    return ComparisonResult(seeds=seed_list, summaries=summaries, schema=schema, drift_at=drift_at)


# ====================================================================================================
# 7. CURVE HELPERS
# ----------------------------------------------------------------------------------------------------
def settle_timestep(records: Sequence[PrequentialRecord], tolerance: float = 0.1) -> int:
    """First checkpoint timestep after which cumulative error stays within tolerance (relative) of its final value."""
    validate_non_empty(records, label="records")
    final = records[-1].cum_error
    allowed = tolerance * final
    settled = records[-1].timestep
    for record in reversed(records):
        if abs(record.cum_error - final) > allowed:
            break
        settled = record.timestep
    return settled


def mean_window_error(records: Sequence[PrequentialRecord], from_timestep: int) -> float:
    """Mean windowed error over checkpoints at or after from_timestep."""
    selected = [r.window_error for r in records if r.timestep >= from_timestep]
    validate_non_empty(selected, label="records after from_timestep")
    return float(np.mean(selected))


def cpu_ratio(numerator: RunSummary, denominator: RunSummary) -> float:
    if denominator.total_cpu_seconds <= 0:
        return math.inf
    return numerator.total_cpu_seconds / denominator.total_cpu_seconds


# ====================================================================================================
# 8. INSTRUMENTED LOCK-STEP RUNS
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class SimultaneityResult:
    """Root attributes of both learners at the first VFDT root split (None fields if it never splits)."""

    vfdt_split_at: Optional[int]
    vfdt_attribute: Optional[int]
    efdt_attribute: Optional[int]

    @property
    def agreed(self) -> Optional[bool]:
        if self.vfdt_split_at is None:
            return None
        return self.vfdt_attribute == self.efdt_attribute


def check_root_simultaneity(spec: StreamSpec | Sequence[Instance], schema: Schema, params: HyperParams) -> SimultaneityResult:
    """
    Description:
        Feeds both learners the same instances until VFDT splits its root, then reads EFDT's root
        split attribute at that timestep.

    Args:
        spec (StreamSpec | Sequence[Instance]): Shared stream.
        schema (Schema): Stream schema.
        params (HyperParams): Shared hyperparameters (tau is forced to 0 for VFDT).

    Returns:
        SimultaneityResult: The two root attributes at VFDT's first root split.
    """
    vfdt = HoeffdingTree(schema, replace(params, tau=0.0))
    efdt = HoeffdingAnytimeTree(schema, params)
    instances = iter(spec) if not isinstance(spec, StreamSpec) else iter(materialise(spec))

    for t, instance in enumerate(instances, start=1):
        vfdt.learn_one(instance)
        efdt.learn_one(instance)
        if not vfdt.root.is_leaf:
            efdt_attribute = None if efdt.root.is_leaf else efdt.root.split.attribute
            return SimultaneityResult(t, vfdt.root.split.attribute, efdt_attribute)
    return SimultaneityResult(None, None, None)


def root_dominance_trace(
    spec: StreamSpec | Sequence[Instance], schema: Schema, params: HyperParams
) -> List[Tuple[int, float, float]]:
    """
    Description:
        Pairs VFDT's root split statistic G(X_a) - G(X_b) with EFDT's root statistic at every
        timestep where VFDT tests its root, up to and including the test that splits it.

    Returns:
        List[Tuple[int, float, float]]: (timestep, VFDT statistic, EFDT statistic).

    Notes:
        - VFDT's value is the one its split test saw, recorded before the split discards the
          root statistics; both roots have seen the same prefix at that point.
    """
    vfdt = HoeffdingTree(schema, replace(params, tau=0.0))
    efdt = HoeffdingAnytimeTree(schema, params)
    instances = iter(spec) if not isinstance(spec, StreamSpec) else iter(materialise(spec))

    trace: List[Tuple[int, float, float]] = []
    for t, instance in enumerate(instances, start=1):
        vfdt.learn_one(instance)
        efdt.learn_one(instance)
        if vfdt.last_root_test is not None and vfdt.last_root_test[0] == t:
            efdt_stat = efdt.root_test_statistic()
            if efdt_stat is not None:
                trace.append((t, vfdt.last_root_test[1], efdt_stat))
        if not vfdt.root.is_leaf:
            break
    return trace


@dataclass
class ConvergenceReport:
    """
    Description:
        Structural comparison of EFDT against the batch tree on the same prefix at each checkpoint.

    Notes:
        - converged means equality holds at the final checkpoint; stable_from is the first
          checkpoint of the final unbroken run of equal checkpoints.
    """

    checkpoints: List[Tuple[int, bool]]
    learner_tree: Optional[TreeNode] = None
    batch_tree: Optional[TreeNode] = None

    @property
    def first_equal_timestep(self) -> Optional[int]:
        return next((t for t, equal in self.checkpoints if equal), None)

    @property
    def stable_from(self) -> Optional[int]:
        stable = None
        for t, equal in reversed(self.checkpoints):
            if not equal:
                break
            stable = t
        return stable

    @property
    def converged(self) -> bool:
        return bool(self.checkpoints) and self.checkpoints[-1][1]


def convergence_check(spec: StreamSpec, params: HyperParams, checkpoint_every: int = 1000) -> ConvergenceReport:
    """
    Description:
        Runs EFDT on a stationary nominal stream and refits the batch oracle on the same prefix at
        every checkpoint (and at the end).

    Raises:
        ConfigValidationError: The schema has numeric attributes.
    """
    schema = spec.schema
    if not schema.is_nominal_only:
        raise ConfigValidationError("convergence checks need a nominal-only schema")
    validate_min_int("checkpoint_every", checkpoint_every)

    learner = HoeffdingAnytimeTree(schema, params)
    oracle = PrefixOracle(schema)
    checkpoints: List[Tuple[int, bool]] = []
    instances = materialise(spec)
    batch_tree: Optional[TreeNode] = None

    for t, instance in enumerate(instances, start=1):
        learner.learn_one(instance)
        oracle.observe(instance)
        if t % checkpoint_every == 0 or t == len(instances):
            batch_tree = oracle.fit()
            checkpoints.append((t, trees_structurally_equal(learner.root, batch_tree)))

    report = ConvergenceReport(checkpoints, learner_tree=learner.root, batch_tree=batch_tree)
    logger.info(
        "🧭 Convergence: converged=%s first_equal=%s stable_from=%s",
        report.converged, report.first_equal_timestep, report.stable_from,
    )
    return report


# ====================================================================================================
# 9. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging(log_to_file=False)
    logger.info("🔍 I07_prequential_eval self-test started.")

    recipe = StreamRecipe(length=5000)
    result = compare_run(recipe, HyperParams(), seeds=[1, 2])
    for name, (error, cpu) in result.overview().items():
        logger.info("  %s E=%.4f T=%.2fs", name, error, cpu)

    logger.info("✅ I07_prequential_eval self-test complete.")
