"""On-disk cache of bracket tables.

One JSON file per ``(format version, algebra name, max weight)``; the file name
is the SHA-256 of that key and the payload carries a SHA-256 of its body.
Unreadable or mismatching files are logged, removed and rebuilt.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from fractions import Fraction
from pathlib import Path

from .algebra import GradedAlgebra

FORMAT_VERSION = 1
ENV_VAR = "LIEHOM_CACHE_DIR"

log = logging.getLogger(__name__)

__all__ = ["BracketCache", "default_cache_dir", "FORMAT_VERSION", "ENV_VAR"]


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "liehom"


def _digest(data: str) -> str:
    return hashlib.sha256(data.encode()).hexdigest()


def _frac(s: str) -> Fraction:
    return Fraction(s)


class BracketCache:
    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def key(self, algebra_name: str, max_weight: int) -> str:
        return _digest(f"{FORMAT_VERSION}:{algebra_name}:{max_weight}")

    def path(self, algebra_name: str, max_weight: int) -> Path:
        return self.directory / f"{self.key(algebra_name, max_weight)}.json"

    def _body(self, algebra: GradedAlgebra, table: dict) -> list:
        body = []
        for (x, y), val in table.items():
            body.append([
                algebra.encode_label(x),
                algebra.encode_label(y),
                [[algebra.encode_label(z), str(c)] for z, c in val.items()],
            ])
        return body

    def store(self, algebra: GradedAlgebra, max_weight: int, table: dict) -> Path:
        body = self._body(algebra, table)
        body_text = json.dumps(body, separators=(",", ":"))
        payload = {
            "format_version": FORMAT_VERSION,
            "algebra": algebra.name,
            "max_weight": max_weight,
            "checksum": _digest(body_text),
            "body": body_text,
        }
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path(algebra.name, max_weight)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload))
        tmp.replace(path)
        return path

    def load(self, algebra: GradedAlgebra, max_weight: int) -> dict | None:
        path = self.path(algebra.name, max_weight)
        if not path.exists():
            return None
        try:
            payload = json.loads(path.read_text())
            ok = (
                payload.get("format_version") == FORMAT_VERSION
                and payload.get("algebra") == algebra.name
                and payload.get("max_weight") == max_weight
                and _digest(payload["body"]) == payload["checksum"]
            )
            if not ok:
                raise ValueError("key or checksum mismatch")
            table = {}
            for x, y, val in json.loads(payload["body"]):
                table[(algebra.decode_label(x), algebra.decode_label(y))] = {
                    algebra.decode_label(z): _frac(c) for z, c in val
                }
            return table
        except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
            log.warning("warning: discarding corrupt cache entry %s (%s); recomputing", path.name, exc)
            path.unlink(missing_ok=True)
            return None

    def get_or_build(self, algebra: GradedAlgebra, max_weight: int) -> dict:
        """Bracket table for ``algebra`` up to ``max_weight``, loaded into the algebra's bracket cache."""
        table = self.load(algebra, max_weight)
        if table is None:
            table = algebra.bracket_table(max_weight)
            self.store(algebra, max_weight, table)
        algebra.load_bracket_table(table)
        return table

    def entries(self) -> list[dict]:
        out = []
        if not self.directory.exists():
            return out
        for path in sorted(self.directory.glob("*.json")):
            try:
                payload = json.loads(path.read_text())
                valid = _digest(payload["body"]) == payload["checksum"]
                out.append({
                    "file": path.name,
                    "algebra": payload.get("algebra"),
                    "max_weight": payload.get("max_weight"),
                    "format_version": payload.get("format_version"),
                    "bytes": path.stat().st_size,
                    "valid": valid,
                })
            except (ValueError, KeyError, TypeError, json.JSONDecodeError):
                out.append({"file": path.name, "valid": False, "bytes": path.stat().st_size})
        return out

    def clear(self) -> int:
        n = 0
        if self.directory.exists():
            for path in self.directory.glob("*.json"):
                path.unlink()
                n += 1
        return n
