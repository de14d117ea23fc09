import importlib
import warnings

import config
from config import Settings

def test_settings_read_prefixed_environment(monkeypatch):
    monkeypatch.setenv("YBL_BASIS_BUDGET", "128")
    monkeypatch.setenv("YBL_CORPUS_FILES", '["tests/fixtures/parity4.json"]')
    monkeypatch.setenv("BASIS_BUDGET", "1")
    loaded = Settings(_env_file=None)
    assert loaded.BASIS_BUDGET == 128
    assert loaded.CORPUS_FILES == ["tests/fixtures/parity4.json"]
    assert loaded.GRID_BOUND == 3

def test_settings_module_loads_without_deprecation_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("error", DeprecationWarning)
        importlib.reload(config)
    assert config.Settings.model_config["env_prefix"] == "YBL_"
