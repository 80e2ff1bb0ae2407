# ====================================================================================================
# conftest.py
# ----------------------------------------------------------------------------------------------------
# Shared pytest fixtures: small schemas, hand-built streams and seeded synthetic stream specs.
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-11-18
# Project:      streamtree (Hoeffding / Anytime tree experiments)
# ====================================================================================================

from __future__ import annotations

import sys
from pathlib import Path

project_root = str(Path(__file__).resolve().parent.parent)
if project_root not in sys.path:
    sys.path.append(project_root)

sys.dont_write_bytecode = True

import pytest

from implementation.I01_data_model import Instance, Schema
from implementation.I05_stream_sources import ConceptSource, StreamSpec, build_random_tree_concept


def cycle_instances(length: int, label_rule) -> list[Instance]:
    """
    Two binary attributes cycling through (0,0), (1,0), (0,1), (1,1); the label comes from
    label_rule(t, x0, x1). Every multiple of 4 instances is a perfectly balanced block.
    """
    out = []
    for t in range(length):
        x0, x1 = t % 2, (t // 2) % 2
        out.append(Instance((x0, x1), label_rule(t, x0, x1)))
    return out


@pytest.fixture
def binary_schema() -> Schema:
    return Schema.nominal_grid(attributes=2, values=2, classes=2)


@pytest.fixture
def perfect_stream() -> list[Instance]:
    """class = a0, a1 independent of the class."""
    return cycle_instances(4000, lambda t, x0, x1: x0)


@pytest.fixture
def random_tree_spec() -> StreamSpec:
    concept = build_random_tree_concept(seed=11, d=5, v=5, c=5)
    return StreamSpec(ConceptSource(concept), length=20_000, instance_seed=11)
