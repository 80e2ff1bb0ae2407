# ====================================================================================================
# M01_experiment_cli.py
# ----------------------------------------------------------------------------------------------------
# Command-line entry point: generate streams, run and compare learners, check convergence to the
# batch tree and root-split simultaneity.
#
# Purpose:
#   - Wire stream sources, learners and the prequential harness into reproducible experiments.
#   - Validate every flag before any work starts (exit code 2 on invalid configuration).
#   - Keep stdout for result lines; logs go to stderr and the daily log file.
#
# Usage:
#   python main/M01_experiment_cli.py generate --classes 5 --attrs 5 --values 5 --length 1000 --seed 7
#   python main/M01_experiment_cli.py compare --seeds 10 --length 100000
#   python main/M01_experiment_cli.py convergence --attrs 3 --values 2 --classes 2
#
#   Exit codes: 0 success, 2 invalid configuration, 3 check failed (not converged / disagreement).
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
from core.C01_set_file_paths import OUTPUTS_DIR, experiment_file, mean_curve_file, stream_file
from core.C03_logging_handler import log_divider, set_console_level
from core.C04_config_loader import get_config, initialise_config
from core.C05_error_handler import (
    EXIT_INVALID_CONFIG,
    EXIT_NOT_CONVERGED,
    EXIT_SUCCESS,
    ConfigValidationError,
    OutputPathError,
    StreamTreeError,
    exit_code_for,
    install_global_exception_hook,
)
from core.C06_validation_utils import (
    validate_fraction,
    validate_min_int,
    validate_writable_directory,
    validation_report,
)
from core.C09_io_utils import save_dataframe, save_text
from implementation.I01_data_model import HyperParams, export_split_events
from implementation.I05_stream_sources import (
    ConceptSource,
    StreamRecipe,
    build_stream_spec,
    load_csv,
    materialise,
    write_csv,
)
from implementation.I06_batch_oracle import export_tree_text, has_distinct_gain_ordering
from implementation.I07_prequential_eval import (
    ComparisonResult,
    check_root_simultaneity,
    compare_run,
    convergence_check,
)


# ====================================================================================================
# 3. ARGUMENT PARSER
# ----------------------------------------------------------------------------------------------------
COMMANDS: Tuple[str, ...] = ("generate", "run", "compare", "convergence", "simultaneity")


def _learner_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("learner")
    group.add_argument(
        "--delta", type=float, default=get_config("learner", "delta", 0.05),
        help="split-test significance; 0.05 is a library default, not a published experimental value",
    )
    group.add_argument("--tau", type=float, default=get_config("learner", "tau", 0.05), help="VFDT tie-break threshold")
    group.add_argument("--leaf-cadence", type=int, default=get_config("learner", "leaf_cadence", 200),
                       help="examples at a leaf between split attempts")
    group.add_argument("--internal-cadence", type=int, default=get_config("learner", "internal_cadence", 2000),
                       help="examples at an internal node between re-evaluations")
    group.add_argument("--numeric-candidates", type=int, default=get_config("learner", "numeric_candidates", 10),
                       help="candidate thresholds per numeric attribute")
    group.add_argument("--reuse-nominal", action="store_true",
                       default=get_config("learner", "reuse_nominal_attributes", False),
                       help="allow a nominal attribute to recur on a root-to-leaf path")
    group.add_argument("--efdt-tie-break", action="store_true", default=get_config("learner", "efdt_tie_break", False),
                       help="apply tau in the anytime tree's split tests")


def _stream_flags(parser: argparse.ArgumentParser, section: str = "stream") -> None:
    group = parser.add_argument_group("stream")
    group.add_argument("--attrs", type=int, default=get_config(section, "attributes", 5), help="nominal attributes d")
    group.add_argument("--values", type=int, default=get_config(section, "values", 5), help="values per nominal attribute v")
    group.add_argument("--classes", type=int, default=get_config(section, "classes", 5), help="classes c")
    group.add_argument("--numeric-attrs", type=int, default=get_config(section, "numeric_attributes", 0),
                       help="extra numeric attributes")
    group.add_argument("--length", type=int, default=get_config(section, "length", 100_000), help="instances per stream")
    group.add_argument("--max-depth", type=int, default=get_config(section, "max_depth", 5), help="hidden-tree depth")
    group.add_argument("--leaf-prob", type=float, default=get_config(section, "leaf_probability", 0.15),
                       help="hidden-tree early-leaf probability per level")
    group.add_argument("--drift-at", type=int, default=None, help="abrupt concept swap at this timestep")
    group.add_argument("--csv", type=Path, default=None, help="read the stream from a CSV file")
    group.add_argument("--order-by-label", action="store_true", help="feed a CSV stream sorted by class label")


def _run_flags(parser: argparse.ArgumentParser, seeds_default: int) -> None:
    group = parser.add_argument_group("run")
    group.add_argument("--seeds", type=int, default=seeds_default, help="number of seeds (first-seed .. first-seed+N-1)")
    group.add_argument("--first-seed", type=int, default=1, help="first run seed")
    group.add_argument("--checkpoint-every", type=int, default=get_config("evaluation", "checkpoint_every", 1000),
                       help="instances between result rows")
    group.add_argument("--window", type=int, default=get_config("evaluation", "window", 1000), help="windowed-error width W")
    group.add_argument("--workers", type=int, default=get_config("evaluation", "workers", 1), help="worker processes")
    group.add_argument("--export-events", action="store_true", help="also write split-event CSVs")


def build_parser() -> argparse.ArgumentParser:
    """Builds the parser; defaults come from config/config.yaml when loaded."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None,
                        help="YAML file merged over the built-in defaults; falls back to $STREAMTREE_CONFIG, then config/config.yaml")
    common.add_argument("--log-level", default=get_config("logging", "level", "WARNING"),
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="console log level")
    common.add_argument("--output-dir", type=Path, default=OUTPUTS_DIR, help="directory for result files")
    common.add_argument("--experiment", default=get_config("evaluation", "experiment", "experiment"),
                        help="experiment name used in result file names")

    formatter = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog="streamtree", description="Hoeffding Tree / Hoeffding Anytime Tree experiments", formatter_class=formatter
    )
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", parents=[common], formatter_class=formatter,
                                   help="write a seeded synthetic stream to CSV")
    _stream_flags(generate)
    generate.add_argument("--seed", type=int, default=1, help="stream seed")
    generate.add_argument("--output", type=Path, default=None, help="CSV path (default: <output-dir>/<experiment>_stream_<seed>.csv)")

    run = commands.add_parser("run", parents=[common], formatter_class=formatter, help="prequential run of one learner")
    run.add_argument("--learner", choices=["vfdt", "efdt"], default="efdt", help="learner to evaluate")
    _stream_flags(run)
    _learner_flags(run)
    _run_flags(run, seeds_default=1)

    compare = commands.add_parser("compare", parents=[common], formatter_class=formatter,
                                  help="paired VFDT / EFDT runs over several seeds")
    _stream_flags(compare)
    _learner_flags(compare)
    _run_flags(compare, seeds_default=10)

    convergence = commands.add_parser("convergence", parents=[common], formatter_class=formatter,
                                      help="check EFDT against the batch tree on a stationary nominal stream")
    _stream_flags(convergence, section="convergence")
    _learner_flags(convergence)
    convergence.add_argument("--seed", type=int, default=1, help="stream seed")
    convergence.add_argument("--checkpoint-every", type=int, default=get_config("convergence", "checkpoint_every", 1000),
                             help="instances between structural comparisons")

    simultaneity = commands.add_parser("simultaneity", parents=[common], formatter_class=formatter,
                                       help="check that both learners pick the same root attribute (tau=0)")
    _stream_flags(simultaneity)
    _learner_flags(simultaneity)
    simultaneity.add_argument("--seeds", type=int, default=20, help="number of seeds")
    simultaneity.add_argument("--first-seed", type=int, default=1, help="first seed")
    return parser


# ====================================================================================================
# 4. CONFIG ASSEMBLY & VALIDATION
# ----------------------------------------------------------------------------------------------------
def params_from_args(args: argparse.Namespace) -> HyperParams:
    return HyperParams(
        delta=args.delta,
        tau=args.tau,
        leaf_cadence=args.leaf_cadence,
        internal_cadence=args.internal_cadence,
        numeric_candidates=args.numeric_candidates,
        reuse_nominal_attributes=args.reuse_nominal,
        efdt_tie_break=args.efdt_tie_break,
    )


def recipe_from_args(args: argparse.Namespace) -> StreamRecipe:
    """
    Description:
        Validates the stream flags and turns them into a StreamRecipe.

    Raises:
        ConfigValidationError: Any stream flag violates its range, or the flags conflict.
    """
    validate_min_int("--attrs", args.attrs, minimum=1)
    validate_min_int("--values", args.values, minimum=2)
    validate_min_int("--classes", args.classes, minimum=2)
    validate_min_int("--numeric-attrs", args.numeric_attrs, minimum=0)
    validate_min_int("--length", args.length, minimum=1)
    validate_min_int("--max-depth", args.max_depth, minimum=1)
    validate_fraction("--leaf-prob", args.leaf_prob)

    if args.csv is not None:
        if args.drift_at is not None:
            raise ConfigValidationError("--drift-at cannot be combined with --csv")
        return StreamRecipe(kind="file", path=args.csv, length=args.length, order_by_label=args.order_by_label)

    if args.order_by_label:
        raise ConfigValidationError("--order-by-label applies to --csv streams only")

    kind = "tree"
    if args.drift_at is not None:
        if not 0 <= args.drift_at < args.length:
            raise ConfigValidationError(f"--drift-at must lie in [0, --length) (got {args.drift_at})")
        kind = "drift"

    return StreamRecipe(
        kind=kind,
        attributes=args.attrs,
        values=args.values,
        classes=args.classes,
        numeric_attributes=args.numeric_attrs,
        length=args.length,
        max_depth=args.max_depth,
        leaf_probability=args.leaf_prob,
        drift_at=args.drift_at,
    )


def _seed_list(args: argparse.Namespace) -> List[int]:
    validate_min_int("--seeds", args.seeds, minimum=1)
    return list(range(args.first_seed, args.first_seed + args.seeds))


# ====================================================================================================
# 5. COMMANDS
# ----------------------------------------------------------------------------------------------------
def cmd_generate(args: argparse.Namespace) -> int:
    """Writes the seeded synthetic stream to CSV and prints the schema summary."""
    recipe = recipe_from_args(args)
    if recipe.kind == "file":
        raise ConfigValidationError("generate builds synthetic streams; --csv is not accepted")

    target = Path(args.output or stream_file(args.output_dir, args.experiment, args.seed))
    if target.is_dir():
        raise OutputPathError(f"--output must name a file, not a directory: {target}")
    validate_writable_directory(target.parent)

    spec = build_stream_spec(recipe, args.seed)
    write_csv(target, spec.schema, materialise(spec))
    print(spec.schema.describe())
    if spec.drift_at is not None:
        print(f"drift_at={spec.drift_at}")
    print(f"wrote {spec.length} instances to {target}")
    return EXIT_SUCCESS


def _write_runs(result: ComparisonResult, args: argparse.Namespace, with_learner: bool) -> None:
    output_dir = validate_writable_directory(args.output_dir)
    for name, runs in result.summaries.items():
        for summary in runs:
            frame = summary.to_frame(with_learner=with_learner)
            save_dataframe(frame, experiment_file(output_dir, args.experiment, name, summary.seed), float_format="%.6f")
            if args.export_events:
                events_path = experiment_file(output_dir, args.experiment, name, summary.seed, suffix="_events.csv")
                export_split_events(summary.split_events, result.schema, events_path)

    if len(result.seeds) > 1:
        save_dataframe(result.mean_curves(), mean_curve_file(output_dir, args.experiment), float_format="%.6f")


def _print_overview(result: ComparisonResult) -> None:
    if result.drift_at is not None:
        print(f"drift_at={result.drift_at}")
    for name, (error, cpu) in result.overview().items():
        print(f"{name} E={error:.4f} T={cpu:.2f}s")


def _compare(args: argparse.Namespace, learners: Sequence[str], with_learner: bool) -> int:
    recipe = recipe_from_args(args)
    params = params_from_args(args)
    seeds = _seed_list(args)
    validate_min_int("--checkpoint-every", args.checkpoint_every)
    validate_min_int("--window", args.window)
    validate_min_int("--workers", args.workers)
    validate_writable_directory(args.output_dir)

    result = compare_run(
        recipe, params, seeds, learners=learners,
        checkpoint_every=args.checkpoint_every, window=args.window,
        workers=args.workers, show_progress=args.workers > 1,
    )
    _write_runs(result, args, with_learner=with_learner)
    _print_overview(result)
    return EXIT_SUCCESS


def cmd_run(args: argparse.Namespace) -> int:
    return _compare(args, [args.learner], with_learner=False)


def cmd_compare(args: argparse.Namespace) -> int:
    """Paired VFDT / EFDT runs: per-seed result CSVs, a mean-curve CSV for >1 seed, E/T summary lines."""
    return _compare(args, ["vfdt", "efdt"], with_learner=True)


def cmd_convergence(args: argparse.Namespace) -> int:
    """
    Description:
        Runs EFDT on a stationary nominal stream and compares it with the batch tree at checkpoints.

    Returns:
        int: 0 when the final checkpoint is structurally equal, 3 otherwise.

    Raises:
        ConfigValidationError: Numeric attributes, drift, or a CSV schema with numeric columns.
    """
    recipe = recipe_from_args(args)
    params = params_from_args(args)
    validate_min_int("--checkpoint-every", args.checkpoint_every)
    output_dir = validate_writable_directory(args.output_dir)
    if recipe.kind == "drift":
        raise ConfigValidationError("convergence needs a stationary stream; drop --drift-at")
    if recipe.numeric_attributes > 0:
        raise ConfigValidationError("convergence needs a nominal-only concept; drop --numeric-attrs")
    if recipe.kind == "file":
        schema, _ = load_csv(recipe.path)
        if not schema.is_nominal_only:
            raise ConfigValidationError(f"convergence needs a nominal-only schema ({recipe.path} has numeric columns)")

    spec = build_stream_spec(recipe, args.seed)
    report = convergence_check(spec, params, checkpoint_every=args.checkpoint_every)
    for name, tree in (("efdt", report.learner_tree), ("batch", report.batch_tree)):
        if tree is not None:
            target = experiment_file(output_dir, args.experiment, name, args.seed, suffix="_tree.txt")
            save_text(export_tree_text(tree, spec.schema), target)

    checks = {"final checkpoint equal": report.converged}
    if isinstance(spec.source, ConceptSource):
        checks["distinct gain ordering"] = has_distinct_gain_ordering(spec.source.concept)
        print(f"distinct_gain_ordering={'yes' if checks['distinct gain ordering'] else 'no'}")
    validation_report(checks, title="Convergence")

    print(f"converged={'yes' if report.converged else 'no'}")
    print(f"first_equal={report.first_equal_timestep}")
    print(f"stable_from={report.stable_from}")
    return EXIT_SUCCESS if report.converged else EXIT_NOT_CONVERGED


def cmd_simultaneity(args: argparse.Namespace) -> int:
    """Root-attribute agreement at VFDT's first root split, per seed; 0 when every splitting seed agrees."""
    recipe = recipe_from_args(args)
    params = replace(params_from_args(args), tau=0.0)
    seeds = _seed_list(args)

    checks: Dict[str, bool] = {}
    for seed in seeds:
        spec = build_stream_spec(recipe, seed)
        outcome = check_root_simultaneity(spec, spec.schema, params)
        if outcome.agreed is None:
            print(f"seed={seed} no_root_split")
            continue
        print(f"seed={seed} t={outcome.vfdt_split_at} vfdt={outcome.vfdt_attribute} efdt={outcome.efdt_attribute}")
        checks[f"seed {seed}"] = bool(outcome.agreed)

    validation_report(checks, title="Root simultaneity")
    agreed = sum(checks.values())
    print(f"agreed={agreed}/{len(checks)}")
    return EXIT_SUCCESS if checks and all(checks.values()) else EXIT_NOT_CONVERGED


HANDLERS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "generate": cmd_generate,
    "run": cmd_run,
    "compare": cmd_compare,
    "convergence": cmd_convergence,
    "simultaneity": cmd_simultaneity,
}


# ====================================================================================================
# 6. ENTRY POINT
# ----------------------------------------------------------------------------------------------------
def _config_file(argv: Sequence[str] | None) -> Path | None:
    """Reads --config ahead of the full parse, since the parser's defaults come from the config."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", type=Path, default=None)
    known, _ = pre.parse_known_args(argv)
    return known.config


def main(argv: Sequence[str] | None = None) -> int:
    """
    Description:
        Parses arguments, validates them and dispatches to the command handler.

    Args:
        argv (Sequence[str] | None): Arguments (defaults to sys.argv[1:]).

    Returns:
        int: Process exit code (0 success, 2 invalid configuration, 3 check failed).
    """
    init_logging(level=logging.INFO, console_stream=sys.stderr)
    config_file = _config_file(argv)
    if config_file is not None and not config_file.is_file():
        print(f"error: config file not found: {config_file}", file=sys.stderr)
        return EXIT_INVALID_CONFIG
    initialise_config(config_file)
    args = build_parser().parse_args(argv)
    set_console_level(args.log_level)

    log_divider("info", f"streamtree {args.command}")
    try:
        if not args.experiment or any(sep in args.experiment for sep in ("/", "\\")):
            raise ConfigValidationError(f"--experiment must be a plain name (got {args.experiment!r})")
        return HANDLERS[args.command](args)
    except StreamTreeError as exc:
        logger.error("❌ %s: %s", type(exc).__name__, exc)
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except OSError as exc:
        logger.error("❌ %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    install_global_exception_hook()
    sys.exit(main())
