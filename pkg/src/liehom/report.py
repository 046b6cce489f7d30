"""Verdict records and their JSON / CSV / text renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__

__all__ = ["CertificateReport", "ReportBundle", "jsonable"]


def jsonable(obj: Any) -> Any:
    """Recursively convert Fractions, tuples, sets and frozensets to JSON-friendly values."""
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return [jsonable(v) for v in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


@dataclass
class CertificateReport:
    name: str
    parameters: dict
    passed: bool
    witnesses: Any = None
    timing_ms: float | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "parameters": jsonable(self.parameters),
            "pass": bool(self.passed),
            "witnesses": jsonable(self.witnesses),
            "timing_ms": self.timing_ms,
        }


@dataclass
class ReportBundle:
    config_echo: dict
    verdicts: list[CertificateReport] = field(default_factory=list)
    tool_version: str = __version__
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_dict(self) -> dict:
        out = {
            "tool_version": self.tool_version,
            "config_echo": jsonable(self.config_echo),
            "verdicts": [v.to_dict() for v in self.verdicts],
        }
        out.update(jsonable(self.extra))
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "pass", "parameters", "witnesses", "timing_ms"])
        for v in self.verdicts:
            d = v.to_dict()
            writer.writerow([
                d["name"],
                "pass" if d["pass"] else "FAIL",
                json.dumps(d["parameters"], sort_keys=True),
                json.dumps(d["witnesses"], sort_keys=True),
                "" if d["timing_ms"] is None else d["timing_ms"],
            ])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        for v in self.verdicts:
            flag = "PASS" if v.passed else "FAIL"
            lines.append(f"[{flag}] {v.name} {json.dumps(jsonable(v.parameters), sort_keys=True)}")
        lines.append(f"{sum(v.passed for v in self.verdicts)}/{len(self.verdicts)} verdicts passed")
        return "\n".join(lines) + "\n"
