from __future__ import annotations

import json
import logging

from liehom.freelie import FreeLieAlgebra, quotient_J
from liehom.freelie.cache import BracketCache, default_cache_dir


def test_round_trip(tmp_path):
    cache = BracketCache(tmp_path)
    J = quotient_J()
    table = J.bracket_table(8)
    cache.store(J, 8, table)
    assert cache.load(quotient_J(), 8) == table
    assert cache.load(J, 9) is None


def test_free_labels_round_trip(tmp_path):
    cache = BracketCache(tmp_path)
    L = FreeLieAlgebra(("a", "b"))
    built = cache.get_or_build(L, 6)
    fresh = FreeLieAlgebra(("a", "b"))
    assert cache.get_or_build(fresh, 6) == built
    assert [e["algebra"] for e in cache.entries()] == ["free"]


def test_corrupt_entry_is_rebuilt_with_warning(tmp_path, caplog):
    cache = BracketCache(tmp_path)
    J = quotient_J()
    path = cache.store(J, 7, J.bracket_table(7))
    text = path.read_text()
    path.write_text(text[: len(text) // 2])
    assert not cache.entries()[0]["valid"]
    with caplog.at_level(logging.WARNING):
        table = cache.get_or_build(quotient_J(), 7)
    assert "corrupt cache entry" in caplog.text
    assert table == J.bracket_table(7)
    assert cache.entries()[0]["valid"]


def test_tampered_checksum_detected(tmp_path, caplog):
    cache = BracketCache(tmp_path)
    J = quotient_J()
    path = cache.store(J, 6, J.bracket_table(6))
    payload = json.loads(path.read_text())
    payload["body"] = payload["body"].replace("1", "2", 1)
    path.write_text(json.dumps(payload))
    with caplog.at_level(logging.WARNING):
        assert cache.load(J, 6) is None
    assert not path.exists()


def test_clear(tmp_path):
    cache = BracketCache(tmp_path)
    J = quotient_J()
    cache.store(J, 5, J.bracket_table(5))
    cache.store(J, 6, J.bracket_table(6))
    assert cache.clear() == 2
    assert cache.entries() == []


def test_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("LIEHOM_CACHE_DIR", str(tmp_path / "x"))
    assert default_cache_dir() == tmp_path / "x"
