# ====================================================================================================
# test_I06_batch_oracle.py
# ----------------------------------------------------------------------------------------------------
# Batch tree fitting, prefix refits, structural / extensional comparison and text export.
# ====================================================================================================

from __future__ import annotations

import pytest

import implementation.I06_batch_oracle as batch_oracle
from core.C05_error_handler import ConfigValidationError
from implementation.I01_data_model import Instance, Schema, SufficientStats, TreeNode, count_leaves, predict_with_tree
from implementation.I05_stream_sources import (
    ConceptNode,
    ConceptSource,
    RandomTreeConcept,
    StreamSpec,
    build_random_tree_concept,
    materialise,
    shuffle,
)
from implementation.I06_batch_oracle import (
    PrefixOracle,
    batch_fit,
    concept_domain_counts,
    enumerate_domain,
    export_tree_text,
    extensional_disagreement,
    fit_from_counts,
    has_distinct_gain_ordering,
    trees_structurally_equal,
)

XOR = [Instance((x0, x1), x0 ^ x1) for x0 in (0, 1) for x1 in (0, 1)]


def _leaf(schema: Schema, label: int) -> TreeNode:
    stats = SufficientStats.empty(schema)
    stats.update(Instance((0,) * schema.attribute_count, label))
    return TreeNode(node_id=0, stats=stats, available=frozenset())


def test_xor_needs_two_levels(binary_schema):
    tree = batch_fit(XOR, binary_schema)
    assert tree.split.attribute == 0
    assert all(child.split.attribute == 1 for child in tree.children)
    assert count_leaves(tree) == 4
    assert all(predict_with_tree(tree, x.values) == x.label for x in XOR)


def test_xor_text_export(binary_schema):
    assert export_tree_text(batch_fit(XOR, binary_schema), binary_schema) == [
        "a0=v0 ->",
        "  a1=v0 ->",
        "    class=0",
        "  a1=v1 ->",
        "    class=1",
        "a0=v1 ->",
        "  a1=v0 ->",
        "    class=1",
        "  a1=v1 ->",
        "    class=0",
    ]


def test_single_class_gives_single_leaf(binary_schema):
    tree = batch_fit([Instance((0, 1), 1), Instance((1, 0), 1)], binary_schema)
    assert tree.is_leaf
    assert tree.predict() == 1


def test_empty_training_set_rejected(binary_schema):
    with pytest.raises(ConfigValidationError):
        batch_fit([], binary_schema)


def test_recovers_concept_on_full_domain():
    concept = build_random_tree_concept(seed=5, d=3, v=3, c=3)
    tree = fit_from_counts(concept_domain_counts(concept), concept.schema)
    for values in enumerate_domain(concept.schema):
        assert predict_with_tree(tree, values) == concept.label_of(values)


def test_zero_training_error_on_sampled_concept():
    concept = build_random_tree_concept(seed=8, d=4, v=3, c=4)
    instances = materialise(StreamSpec(ConceptSource(concept), length=2000, instance_seed=8))
    tree = batch_fit(instances, concept.schema)
    assert all(predict_with_tree(tree, x.values) == x.label for x in instances)


def test_fit_is_order_independent():
    concept = build_random_tree_concept(seed=12, d=4, v=3, c=3)
    schema = concept.schema
    instances = materialise(StreamSpec(ConceptSource(concept), length=1500, instance_seed=12))
    forward = batch_fit(instances, schema)
    shuffled = batch_fit(shuffle(instances, 99), schema)
    assert export_tree_text(forward, schema) == export_tree_text(shuffled, schema)
    assert trees_structurally_equal(forward, shuffled)


def test_prefix_oracle_matches_batch_fit():
    concept = build_random_tree_concept(seed=14, d=4, v=2, c=2)
    schema = concept.schema
    instances = materialise(StreamSpec(ConceptSource(concept), length=600, instance_seed=14))
    oracle = PrefixOracle(schema)
    for t, instance in enumerate(instances, start=1):
        oracle.observe(instance)
        if t % 150 == 0:
            assert oracle.n == t
            assert trees_structurally_equal(oracle.fit(), batch_fit(instances[:t], schema))


def test_structural_equality_detects_leaf_label(binary_schema):
    assert trees_structurally_equal(_leaf(binary_schema, 0), _leaf(binary_schema, 0))
    assert not trees_structurally_equal(_leaf(binary_schema, 0), _leaf(binary_schema, 1))
    assert not trees_structurally_equal(batch_fit(XOR, binary_schema), _leaf(binary_schema, 0))


def test_extensional_disagreement(binary_schema):
    domain = enumerate_domain(binary_schema)
    xor = batch_fit(XOR, binary_schema)
    assert extensional_disagreement(xor, xor, domain) == 0.0
    assert extensional_disagreement(_leaf(binary_schema, 0), _leaf(binary_schema, 1), domain) == 1.0
    assert extensional_disagreement(xor, _leaf(binary_schema, 0), domain) == 0.5


def test_domain_enumeration_requires_nominal_schema():
    schema = Schema.nominal_grid(attributes=1, values=2, classes=2, numeric_attributes=1)
    with pytest.raises(ConfigValidationError):
        enumerate_domain(schema)
    assert len(enumerate_domain(Schema.nominal_grid(attributes=5, values=5, classes=5))) == 3125


def test_gain_ordering_check(binary_schema):
    single = ConceptNode(attribute=0, children=[ConceptNode(label=0), ConceptNode(label=1)])
    assert has_distinct_gain_ordering(RandomTreeConcept.from_tree(binary_schema, single))

    xor = ConceptNode(
        attribute=0,
        children=[
            ConceptNode(attribute=1, children=[ConceptNode(label=0), ConceptNode(label=1)]),
            ConceptNode(attribute=1, children=[ConceptNode(label=1), ConceptNode(label=0)]),
        ],
    )
    assert not has_distinct_gain_ordering(RandomTreeConcept.from_tree(binary_schema, xor))


def test_gain_ordering_evaluates_each_attribute_once_per_node(binary_schema, monkeypatch):
    calls = []
    real_gain = batch_oracle.info_gain

    def counting_gain(stats, choice, schema):
        calls.append(choice.attribute)
        return real_gain(stats, choice, schema)

    monkeypatch.setattr(batch_oracle, "info_gain", counting_gain)
    single = ConceptNode(attribute=1, children=[ConceptNode(label=0), ConceptNode(label=1)])
    assert has_distinct_gain_ordering(RandomTreeConcept.from_tree(binary_schema, single))
    assert sorted(calls) == [0, 1]
