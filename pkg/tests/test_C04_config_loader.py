# ====================================================================================================
# test_C04_config_loader.py
# ----------------------------------------------------------------------------------------------------
# Built-in defaults, YAML overlays and lookups.
# ====================================================================================================

from __future__ import annotations

import pytest

from core import C04_config_loader as cfg


@pytest.fixture(autouse=True)
def restore_config(monkeypatch):
    monkeypatch.delenv(cfg.CONFIG_ENV_VAR, raising=False)
    yield
    cfg.initialise_config(cfg.DEFAULT_CONFIG_FILE)


def test_defaults_without_a_file(tmp_path):
    cfg.initialise_config(tmp_path / "absent.yaml")
    assert cfg.get_config("learner", "delta") == 0.05
    assert cfg.get_config("learner", "internal_cadence") == 2000
    assert cfg.get_section("convergence")["max_depth"] == 3


def test_yaml_overrides_single_keys(tmp_path):
    path = tmp_path / "c.yaml"
    path.write_text("learner:\n  tau: 0.0\n")
    cfg.initialise_config(path)
    assert cfg.get_config("learner", "tau") == 0.0
    assert cfg.get_config("learner", "delta") == 0.05


def test_null_value_falls_back_to_caller_default(tmp_path):
    path = tmp_path / "c.yaml"
    path.write_text("evaluation:\n  workers: null\n")
    cfg.initialise_config(path)
    assert cfg.get_config("evaluation", "workers", 4) == 4
    assert cfg.get_config("nowhere", "nothing", "x") == "x"


def test_unknown_keys_are_reported(tmp_path):
    path = tmp_path / "c.yaml"
    path.write_text("learner:\n  leaf_cadance: 10\nplotting:\n  dpi: 300\n")
    config = cfg.initialise_config(path)
    assert cfg.unknown_keys(config) == ["learner.leaf_cadance", "plotting"]


def test_non_mapping_file_is_ignored(tmp_path):
    path = tmp_path / "c.yaml"
    path.write_text("- just\n- a list\n")
    cfg.initialise_config(path)
    assert cfg.get_config("stream", "classes") == 5


def test_environment_variable_names_the_file(tmp_path, monkeypatch):
    path = tmp_path / "env.yaml"
    path.write_text("stream:\n  classes: 7\n")
    monkeypatch.setenv(cfg.CONFIG_ENV_VAR, str(path))
    assert cfg.resolve_config_file() == path
    cfg.initialise_config()
    assert cfg.get_config("stream", "classes") == 7


def test_shipped_config_matches_built_in_defaults():
    config = cfg.initialise_config(cfg.DEFAULT_CONFIG_FILE)
    assert cfg.unknown_keys(config) == []
    assert config == cfg.DEFAULT_CONFIG
