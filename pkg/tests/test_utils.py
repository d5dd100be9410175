"""
Unit tests for cache, settings and output utilities
"""
import json

import pytest
from fractions import Fraction
from unittest.mock import patch

import numpy as np

from src.utils.cache_utils import LRUCache, cache_stats, cached, clear_cache
from src.utils.env_utils import Settings, load_settings
from src.utils.errors import OutputError
from src.utils.output_handler import ResultWriter, read_binary_pairs


def test_lru_cache_eviction():
    """Test that the least recently used entry is evicted first."""
    cache = LRUCache(capacity=2)
    cache.put("a", 1)
    cache.put("b", 2)
    assert cache.get("a") == 1
    cache.put("c", 3)

    assert cache.get("b", None) is None, "b was least recently used"
    assert cache.get("a") == 1
    assert cache.get("c") == 3
    size, hits, misses = cache.stats()
    assert size == 2
    assert hits == 3
    assert misses == 1


def test_lru_cache_resize():
    """Test shrinking the cache."""
    cache = LRUCache(capacity=3)
    for key in "abc":
        cache.put(key, key)
    cache.resize(1)
    assert cache.stats()[0] == 1
    assert cache.get("c") == "c"


def test_cached_decorator():
    """Test that a cached function runs once per argument tuple."""
    calls = []

    @cached(namespace="test_cached_decorator")
    def square(x):
        calls.append(x)
        return x * x

    clear_cache()
    assert square(Fraction(1, 2)) == Fraction(1, 4)
    assert square(Fraction(1, 2)) == Fraction(1, 4)
    assert square(3) == 9
    assert calls == [Fraction(1, 2), 3]
    assert cache_stats()[1] >= 1


def test_settings_defaults(monkeypatch):
    """Test the settings defaults without environment overrides."""
    for name in Settings.model_fields:
        monkeypatch.delenv("SEPFORM_" + name.upper(), raising=False)

    settings = load_settings()

    assert settings.precision_bits == 128
    assert settings.seed == 20170101
    assert settings.support_lo == Fraction(-1, 16)
    assert settings.support_hi == Fraction(1, 256)


def test_settings_from_environment(monkeypatch):
    """Test that SEPFORM_* variables override the defaults."""
    monkeypatch.setenv("SEPFORM_PRECISION_BITS", "256")
    monkeypatch.setenv("SEPFORM_THREADS", "8")
    monkeypatch.setenv("SEPFORM_SUPPORT_LO", "-1/8")
    monkeypatch.setenv("SEPFORM_OUTPUT_DIR", " ")

    settings = load_settings()

    assert settings.precision_bits == 256
    assert settings.threads == 8
    assert settings.support_lo == Fraction(-1, 8)
    assert settings.output_dir == "output", "blank variables fall back to the default"


def test_settings_validation(monkeypatch):
    """Test that invalid values are rejected."""
    monkeypatch.setenv("SEPFORM_PRECISION_BITS", "8")
    with pytest.raises(ValueError):
        load_settings()


def test_result_writer_csv_and_json(tmp_path):
    """Test CSV and JSON writing under nested directories."""
    writer = ResultWriter(tmp_path)

    csv_path = writer.write_csv(["k", "value"], [[0, "4/33"], [1, "45/286"]], tmp_path / "a" / "t.csv")
    json_path = writer.write_json({"value": "4/33"}, tmp_path / "b" / "r.json")

    assert csv_path.read_text().splitlines() == ["k,value", "0,4/33", "1,45/286"]
    assert json.loads(json_path.read_text()) == {"value": "4/33"}


def test_result_writer_resolve(tmp_path):
    """Test explicit and generated target paths."""
    writer = ResultWriter(tmp_path)
    assert writer.resolve("x.csv", "table", ".csv").name == "x.csv"
    generated = writer.resolve(None, "table", ".csv")
    assert generated.parent == tmp_path
    assert generated.name.startswith("table_") and generated.suffix == ".csv"


def test_binary_pairs_round_trip(tmp_path):
    """Test the little-endian float64 pair dump."""
    pairs = np.array([[0.001, -0.002], [0.0, 1 / 256]])
    path = ResultWriter(tmp_path).write_binary_pairs(pairs, tmp_path / "pairs.bin")

    assert path.stat().st_size == 4 * 8
    assert np.array_equal(read_binary_pairs(path), pairs)


@patch('src.utils.output_handler.ResultWriter._write_json.retry.sleep')
def test_result_writer_wraps_os_errors(mock_sleep, tmp_path):
    """Test that repeated OS errors surface as OutputError after retries."""
    blocker = tmp_path / "file"
    blocker.write_text("")
    writer = ResultWriter(tmp_path)

    with pytest.raises(OutputError):
        writer.write_json({}, blocker / "sub" / "r.json")
    assert mock_sleep.call_count == 2


def test_export_schemas(tmp_path):
    """Test that every result model gets a JSON schema file."""
    from tools.export_schemas import export_schemas

    with patch('builtins.print'):
        written = export_schemas(str(tmp_path))

    assert {p.name for p in written} == {"sep_value.schema.json", "mc_result.schema.json",
                                        "fit_report.schema.json", "recurrence_record.schema.json"}
    schema = json.loads((tmp_path / "mc_result.schema.json").read_text())
    assert "q_hat" in schema["properties"]
