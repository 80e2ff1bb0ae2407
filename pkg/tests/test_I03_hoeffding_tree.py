# ====================================================================================================
# test_I03_hoeffding_tree.py
# ----------------------------------------------------------------------------------------------------
# Hoeffding Tree (VFDT): split timing, frozen internal nodes, routing and determinism.
# ====================================================================================================

from __future__ import annotations

import pytest

from conftest import cycle_instances
from core.C05_error_handler import SchemaViolationError
from implementation.I01_data_model import HyperParams, Instance, count_leaves, iter_nodes
from implementation.I03_hoeffding_tree import HoeffdingTree
from implementation.I05_stream_sources import iter_stream, materialise
from implementation.I06_batch_oracle import export_tree_text


def test_fresh_learner_predicts_class_zero(binary_schema):
    learner = HoeffdingTree(binary_schema)
    assert learner.predict(Instance((1, 1), 1)) == 0
    assert learner.model_size() == {"nodes": 1, "leaves": 1, "depth": 0}


def test_perfect_attribute_splits_at_first_evaluation(binary_schema, perfect_stream):
    learner = HoeffdingTree(binary_schema, HyperParams(delta=0.05))
    learner.learn_many(perfect_stream[:199])
    assert learner.root.is_leaf

    learner.learn_one(perfect_stream[199])
    assert not learner.root.is_leaf
    assert learner.root.split.attribute == 0
    assert learner.root.stats is None
    assert [(e.timestep, e.event) for e in learner.split_events] == [(200, "split")]

    learner.learn_many(perfect_stream[200:400])
    assert learner.predict(Instance((1, 0), 0)) == 1
    assert learner.predict(Instance((0, 1), 1)) == 0


def test_pure_stream_never_splits(binary_schema):
    learner = HoeffdingTree(binary_schema)
    learner.learn_many(cycle_instances(5000, lambda t, x0, x1: 1))
    assert learner.root.is_leaf
    assert learner.predict(Instance((0, 0), 0)) == 1


def test_identical_attributes_never_split_without_tie_break(binary_schema):
    learner = HoeffdingTree(binary_schema, HyperParams(tau=0.0))
    # a1 is a copy of a0, so both attributes always carry the same gain
    learner.learn_many(Instance((t % 2, t % 2), t % 2) for t in range(100_000))
    assert learner.root.is_leaf
    assert learner.split_events == []


def test_tie_break_splits_identical_attributes(binary_schema):
    learner = HoeffdingTree(binary_schema, HyperParams(tau=0.05))
    learner.learn_many(Instance((t % 2, t % 2), t % 2) for t in range(5000))
    assert not learner.root.is_leaf
    assert learner.root.split.attribute == 0


def test_rejects_instances_outside_schema(binary_schema):
    learner = HoeffdingTree(binary_schema)
    with pytest.raises(SchemaViolationError):
        learner.learn_one(Instance((0, 3), 0))
    assert learner.examples_seen == 0


def test_internal_splits_are_frozen(random_tree_spec):
    learner = HoeffdingTree(random_tree_spec.schema)
    seen_splits: dict[int, object] = {}
    leaves = 1
    for t, instance in enumerate(iter_stream(random_tree_spec), start=1):
        learner.learn_one(instance)
        if t % 1000 == 0:
            for node in iter_nodes(learner.root):
                if not node.is_leaf:
                    assert seen_splits.setdefault(node.node_id, node.split) == node.split
                    assert node.stats is None
            assert count_leaves(learner.root) >= leaves
            leaves = count_leaves(learner.root)
    assert not learner.root.is_leaf
    assert all(e.event == "split" for e in learner.split_events)


def test_prediction_follows_attribute_tests(random_tree_spec):
    learner = HoeffdingTree(random_tree_spec.schema)
    instances = materialise(random_tree_spec)
    learner.learn_many(instances)

    for instance in instances[:500]:
        node = learner.root
        while node.split is not None:
            node = node.children[instance.values[node.split.attribute]]
        assert learner.predict(instance) == node.predict()


def test_same_stream_gives_same_tree(random_tree_spec):
    schema = random_tree_spec.schema
    first = HoeffdingTree(schema).learn_many(iter_stream(random_tree_spec))
    second = HoeffdingTree(schema).learn_many(iter_stream(random_tree_spec))
    assert export_tree_text(first.root, schema) == export_tree_text(second.root, schema)
    assert first.split_events == second.split_events
