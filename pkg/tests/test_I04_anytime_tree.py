# ====================================================================================================
# test_I04_anytime_tree.py
# ----------------------------------------------------------------------------------------------------
# Hoeffding Anytime Tree (EFDT): leaf splits, re-evaluation (replace / kill), per-node statistics
# along the path and the touched-node count.
# ====================================================================================================

from __future__ import annotations

import pytest

from conftest import cycle_instances
from implementation.I01_data_model import (
    NULL_SPLIT,
    HyperParams,
    Instance,
    NodeIdSequence,
    Schema,
    SplitChoice,
    SufficientStats,
    iter_nodes,
    route_path,
    spawn_children,
    tree_depth,
)
from implementation.I02_split_metrics import MeritReport
from implementation.I04_anytime_tree import HoeffdingAnytimeTree
from implementation.I05_stream_sources import materialise


def _root_split_on(learner: HoeffdingAnytimeTree, attribute: int) -> None:
    root = learner.root
    root.split = SplitChoice(attribute)
    root.children = spawn_children(root, root.split, learner.schema, learner._ids, False, 0)


def test_fresh_learner_and_single_instance(binary_schema):
    learner = HoeffdingAnytimeTree(binary_schema)
    assert learner.predict(Instance((0, 1), 1)) == 0
    learner.learn_one(Instance((0, 1), 1))
    assert learner.root.stats.total == 1
    assert learner.root.is_leaf
    assert learner.split_events == []
    assert learner.last_touch_count == 1


def test_perfect_attribute_splits_at_first_evaluation(binary_schema, perfect_stream):
    learner = HoeffdingAnytimeTree(binary_schema, HyperParams(delta=0.05))
    learner.learn_many(perfect_stream[:199])
    assert learner.root.is_leaf
    learner.learn_one(perfect_stream[199])
    assert learner.root.split == SplitChoice(0)
    assert learner.root.stats.total == 200
    assert [(e.timestep, e.event) for e in learner.split_events] == [(200, "split")]


def test_uninformative_attributes_never_split(binary_schema):
    # label cycles with period 8 so every (x0, x1, label) combination is equally frequent
    learner = HoeffdingAnytimeTree(binary_schema)
    learner.learn_many(cycle_instances(4000, lambda t, x0, x1: (t // 4) % 2))
    assert learner.root.is_leaf
    assert not learner.attempt_to_split(learner.root)


def test_attempt_to_split_ignores_pure_leaf(binary_schema):
    learner = HoeffdingAnytimeTree(binary_schema)
    for _ in range(300):
        learner.root.stats.update(Instance((0, 1), 1))
    assert not learner.attempt_to_split(learner.root)
    assert learner.root.is_leaf


def test_replace_when_other_attribute_dominates(binary_schema):
    learner = HoeffdingAnytimeTree(binary_schema)
    _root_split_on(learner, 0)
    for instance in cycle_instances(400, lambda t, x0, x1: x1):
        learner.root.stats.update(instance)
    old_children = {child.node_id for child in learner.root.children}

    assert learner.re_evaluate_best_split(learner.root)
    assert learner.root.split == SplitChoice(1)
    assert all(child.stats.total == 0 for child in learner.root.children)
    assert not old_children & {child.node_id for child in learner.root.children}
    assert learner.split_events[-1].event == "replace"
    assert learner.split_events[-1].old_choice == SplitChoice(0)


def test_current_split_still_best_is_a_no_op(binary_schema):
    learner = HoeffdingAnytimeTree(binary_schema)
    _root_split_on(learner, 0)
    for instance in cycle_instances(400, lambda t, x0, x1: x0):
        learner.root.stats.update(instance)
    children = list(learner.root.children)
    assert not learner.re_evaluate_best_split(learner.root)
    assert learner.root.children == children
    assert learner.split_events == []


def test_kill_through_injected_report(binary_schema):
    learner = HoeffdingAnytimeTree(binary_schema)
    _root_split_on(learner, 0)
    for instance in cycle_instances(400, lambda t, x0, x1: 1 if t % 8 < 6 else 0):
        learner.root.stats.update(instance)

    report = MeritReport.from_merits({NULL_SPLIT: 0.0, 0: -0.5, 1: -0.6}, range_R=1.0)
    assert learner.re_evaluate_best_split(learner.root, report=report)
    assert learner.root.is_leaf
    assert learner.root.children == []
    assert learner.root.stats.total == 400
    assert learner.split_events[-1].event == "kill"
    assert learner.predict(Instance((0, 0), 0)) == 1


def test_kill_needs_gap_above_epsilon(binary_schema):
    learner = HoeffdingAnytimeTree(binary_schema)
    _root_split_on(learner, 0)
    for instance in cycle_instances(400, lambda t, x0, x1: x0):
        learner.root.stats.update(instance)
    report = MeritReport.from_merits({NULL_SPLIT: 0.0, 0: -0.01}, range_R=1.0)
    assert not learner.re_evaluate_best_split(learner.root, report=report)
    assert learner.root.split == SplitChoice(0)


def test_concept_swap_replaces_root(binary_schema):
    learner = HoeffdingAnytimeTree(binary_schema)
    learner.learn_many(cycle_instances(30_000, lambda t, x0, x1: x0 if t < 10_000 else x1))
    assert learner.root.split == SplitChoice(1)
    replaced = [e for e in learner.split_events if e.event == "replace" and e.node_id == 0]
    assert replaced and replaced[0].timestep > 10_000
    timesteps = [e.timestep for e in learner.split_events]
    assert timesteps == sorted(set(timesteps))


def test_node_statistics_count_every_instance_routed_through(random_tree_spec):
    learner = HoeffdingAnytimeTree(random_tree_spec.schema, HyperParams(internal_cadence=500))
    instances = materialise(random_tree_spec)
    learner.learn_many(instances)

    expected: dict[int, int] = {}
    for t, instance in enumerate(instances, start=1):
        for node in route_path(learner.root, instance.values):
            if t > node.created_at:
                expected[node.node_id] = expected.get(node.node_id, 0) + 1

    for node in iter_nodes(learner.root):
        assert node.stats.total == expected.get(node.node_id, 0)
        assert node.stats.check_identities()


def test_touch_count_bounded_by_depth(random_tree_spec):
    learner = HoeffdingAnytimeTree(random_tree_spec.schema, HyperParams(internal_cadence=500))
    for instance in materialise(random_tree_spec)[:8000]:
        learner.learn_one(instance)
        assert 1 <= learner.last_touch_count <= tree_depth(learner.root) + 1


@pytest.mark.parametrize(
    "attributes, values, classes, numeric, expected",
    [
        (2, 2, 2, 0, 10),
        (5, 5, 5, 0, 130),
        (3, 4, 2, 0, 26),
        (4, 3, 6, 0, 78),
        (2, 3, 4, 1, 48),
    ],
)
def test_memory_cells_follow_schema_shape(attributes, values, classes, numeric, expected):
    schema = Schema.nominal_grid(attributes, values, classes, numeric_attributes=numeric)
    formula = classes + attributes * values * classes + numeric * 5 * classes
    assert formula == expected
    assert SufficientStats.empty(schema).memory_cells() == expected


def test_memory_per_node_is_fixed_by_schema(random_tree_spec):
    schema = random_tree_spec.schema
    per_node = schema.class_count + sum(spec.value_count * schema.class_count for spec in schema.attributes)
    learner = HoeffdingAnytimeTree(schema, HyperParams(internal_cadence=500))
    for instance in materialise(random_tree_spec)[:10_000]:
        learner.learn_one(instance)

    nodes = list(iter_nodes(learner.root))
    assert len(nodes) > 1
    assert all(node.stats.memory_cells() == per_node == 130 for node in nodes)


def test_children_drop_used_nominal_attribute(binary_schema, perfect_stream):
    learner = HoeffdingAnytimeTree(binary_schema)
    learner.learn_many(perfect_stream[:200])
    assert all(child.available == frozenset({1}) for child in learner.root.children)

    reuse = HoeffdingAnytimeTree(binary_schema, HyperParams(reuse_nominal_attributes=True))
    reuse.learn_many(perfect_stream[:200])
    assert all(child.available == frozenset({0, 1}) for child in reuse.root.children)


def test_ids_are_not_reused_after_restructuring(binary_schema):
    learner = HoeffdingAnytimeTree(binary_schema)
    learner.learn_many(cycle_instances(30_000, lambda t, x0, x1: x0 if t < 10_000 else x1))
    ids = [node.node_id for node in iter_nodes(learner.root)]
    assert len(ids) == len(set(ids))
    assert isinstance(learner._ids, NodeIdSequence)
