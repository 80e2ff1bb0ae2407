# ====================================================================================================
# test_I01_data_model.py
# ----------------------------------------------------------------------------------------------------
# Schema validation, sufficient statistics, tree helpers and hyperparameter validation.
# ====================================================================================================

from __future__ import annotations

import numpy as np
import pandas as pd
import pytest

from core.C05_error_handler import ConfigValidationError, SchemaViolationError
from implementation.I01_data_model import (
    AttributeSpec,
    GaussianEstimator,
    HyperParams,
    Instance,
    NodeIdSequence,
    Schema,
    SplitChoice,
    SplitEvent,
    SufficientStats,
    TreeNode,
    count_leaves,
    count_nodes,
    export_split_events,
    majority_class,
    model_size,
    predict_with_tree,
    route_path,
    spawn_children,
    tree_depth,
    update_stats,
)


# --- Schema --------------------------------------------------------------------------------------------
def test_nominal_grid_names_and_shape():
    schema = Schema.nominal_grid(attributes=3, values=4, classes=2, numeric_attributes=1)
    assert [a.name for a in schema.attributes] == ["a0", "a1", "a2", "a3"]
    assert schema.nominal_indices == (0, 1, 2)
    assert schema.numeric_indices == (3,)
    assert schema.attributes[0].value_names == ("v0", "v1", "v2", "v3")
    assert schema.class_names == ("c0", "c1")
    assert not schema.is_nominal_only
    assert schema.index_of("a2") == 2


def test_schema_rejects_single_class_and_duplicates():
    with pytest.raises(SchemaViolationError):
        Schema.nominal_grid(attributes=2, values=2, classes=1)
    spec = AttributeSpec.nominal("x", ["p", "q"])
    with pytest.raises(SchemaViolationError):
        Schema((spec, spec), ("c0", "c1"))
    with pytest.raises(SchemaViolationError):
        AttributeSpec.nominal("x", ["only"])


@pytest.mark.parametrize(
    "instance",
    [
        Instance((0,), 0),
        Instance((0, 2), 0),
        Instance((0, 1), 2),
        Instance((-1, 0), 0),
    ],
)
def test_validate_instance_rejects_bad_rows(binary_schema, instance):
    with pytest.raises(SchemaViolationError):
        binary_schema.validate_instance(instance)


def test_validate_instance_rejects_non_finite_numeric():
    schema = Schema.nominal_grid(attributes=1, values=2, classes=2, numeric_attributes=1)
    with pytest.raises(SchemaViolationError):
        schema.validate_instance(Instance((0, float("nan")), 0))


# --- Sufficient statistics -------------------------------------------------------------------------------
def test_majority_class_examples():
    schema = Schema.nominal_grid(attributes=1, values=2, classes=3)
    stats = SufficientStats.empty(schema)
    assert majority_class(stats) == 0
    stats.class_counts[:] = [3, 5, 2]
    assert majority_class(stats) == 1
    stats.class_counts[:] = [4, 4, 0]
    assert majority_class(stats) == 0
    stats.class_counts[:] = [0, 0, 7]
    assert stats.total == 0
    assert majority_class(stats) == 2
    assert majority_class(None) == 0


def test_update_from_empty(binary_schema):
    stats = SufficientStats.empty(binary_schema)
    update_stats(stats, Instance((1, 0), 1), binary_schema)
    assert stats.total == 1
    assert stats.class_counts.tolist() == [0, 1]
    assert stats.nominal_counts[0][1, 1] == 1
    assert stats.nominal_counts[1][0, 1] == 1

    update_stats(stats, Instance((1, 0), 1), binary_schema)
    assert stats.nominal_counts[0][1, 1] == 2


def test_update_rejects_out_of_range(binary_schema):
    stats = SufficientStats.empty(binary_schema)
    with pytest.raises(SchemaViolationError):
        stats.update(Instance((0, 5), 0))
    with pytest.raises(SchemaViolationError):
        stats.update(Instance((0, 0), 7))
    assert stats.total == 0


def test_count_identities_after_random_updates():
    schema = Schema.nominal_grid(attributes=3, values=4, classes=3, numeric_attributes=1)
    rng = np.random.default_rng(5)
    stats = SufficientStats.empty(schema)
    for _ in range(500):
        values = tuple(int(x) for x in rng.integers(0, 4, size=3)) + (float(rng.random()),)
        stats.update(Instance(values, int(rng.integers(0, 3))))
        assert stats.check_identities()
    assert stats.total == 500


def test_gaussian_estimator_constant_readings():
    estimator = GaussianEstimator()
    for _ in range(1000):
        estimator.update(1.0)
    assert estimator.weight == 1000
    assert estimator.mean == pytest.approx(1.0)
    assert estimator.m2 == pytest.approx(0.0, abs=1e-12)
    assert estimator.variance == pytest.approx(0.0, abs=1e-12)
    assert estimator.cdf(1.0) == 1.0
    assert estimator.cdf(0.5) == 0.0


def test_gaussian_estimator_matches_numpy():
    readings = np.random.default_rng(3).normal(2.0, 0.5, size=400)
    estimator = GaussianEstimator()
    for x in readings:
        estimator.update(float(x))
    assert estimator.mean == pytest.approx(readings.mean(), rel=1e-9)
    assert estimator.variance == pytest.approx(readings.var(ddof=1), rel=1e-9)
    assert estimator.min_value == readings.min()
    assert estimator.max_value == readings.max()
    assert estimator.cdf(estimator.mean) == pytest.approx(0.5)


def test_memory_cells_accounting():
    schema = Schema.nominal_grid(attributes=5, values=5, classes=5)
    assert SufficientStats.empty(schema).memory_cells() == 5 + 5 * 5 * 5

    mixed = Schema.nominal_grid(attributes=1, values=3, classes=2, numeric_attributes=2)
    assert SufficientStats.empty(mixed).memory_cells() == 2 + 3 * 2 + 2 * 2 * GaussianEstimator.MEMORY_CELLS


def test_copy_is_independent(binary_schema):
    stats = SufficientStats.empty(binary_schema)
    stats.update(Instance((0, 1), 1))
    clone = stats.copy()
    clone.update(Instance((1, 1), 0))
    assert stats.total == 1
    assert clone.total == 2


# --- Tree helpers -----------------------------------------------------------------------------------------
def _two_level_tree(schema: Schema) -> TreeNode:
    ids = NodeIdSequence()
    root = TreeNode(node_id=ids.next(), stats=SufficientStats.empty(schema), available=frozenset({0, 1}))
    root.split = SplitChoice(0)
    root.children = spawn_children(root, root.split, schema, ids, False, 0)
    left = root.children[0]
    left.split = SplitChoice(1)
    left.children = spawn_children(left, left.split, schema, ids, False, 0)
    left.children[1].stats.update(Instance((0, 1), 1))
    return root


def test_spawn_children_and_traversal(binary_schema):
    root = _two_level_tree(binary_schema)
    assert count_nodes(root) == 5
    assert count_leaves(root) == 3
    assert tree_depth(root) == 2
    assert model_size(root) == {"nodes": 5, "leaves": 3, "depth": 2}

    left = root.children[0]
    assert left.available == frozenset({1})
    assert left.depth == 1
    assert all(child.stats.total == 0 for child in root.children[1:])

    path = route_path(root, (0, 1))
    assert [node.node_id for node in path] == [root.node_id, left.node_id, left.children[1].node_id]
    assert predict_with_tree(root, (0, 1)) == 1
    assert predict_with_tree(root, (1, 1)) == 0


def test_numeric_split_branches():
    choice = SplitChoice(0, threshold=0.5)
    assert choice.branch_of((0.5,)) == 0
    assert choice.branch_of((0.51,)) == 1


def test_export_split_events(tmp_path, binary_schema):
    events = [
        SplitEvent(200, 0, "split", SplitChoice(-1), SplitChoice(0)),
        SplitEvent(4000, 0, "replace", SplitChoice(0), SplitChoice(1)),
    ]
    target = export_split_events(events, binary_schema, tmp_path / "events.csv")
    frame = pd.read_csv(target)
    assert list(frame.columns) == ["timestep", "node_id", "event", "old_attr", "new_attr"]
    assert frame["event"].tolist() == ["split", "replace"]
    assert frame["new_attr"].tolist() == ["a0", "a1"]


# --- Hyperparameters --------------------------------------------------------------------------------------
@pytest.mark.parametrize(
    "overrides",
    [{"delta": 0.0}, {"delta": 1.0}, {"tau": -0.1}, {"leaf_cadence": 0}, {"internal_cadence": 0}],
)
def test_hyperparams_rejects_out_of_range(overrides):
    with pytest.raises(ConfigValidationError):
        HyperParams(**overrides)


def test_hyperparams_defaults_and_overrides():
    params = HyperParams()
    assert params.delta == 0.05
    assert params.leaf_cadence == 200
    assert params.internal_cadence == 2000
    assert HyperParams.from_config(tau=0.0).tau == 0.0
