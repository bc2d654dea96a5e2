"""Versioned JSON reports with exact numbers kept as strings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__

SCHEMA_VERSION = 1


def to_jsonable(x: Any) -> Any:
    """Fractions and rational functions become strings; containers recurse."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return to_jsonable(x.to_dict())
    return str(x)


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


@dataclass
class Report:
    command: str
    inputs: dict
    outputs: dict
    timings: dict = field(default_factory=dict)
    version: str = __version__
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "tool": "c4flag",
            "version": self.version,
            "command": self.command,
            "inputs": to_jsonable(self.inputs),
            "outputs": to_jsonable(self.outputs),
            "timings": to_jsonable(self.timings),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')}")
        return cls(d["command"], d["inputs"], d["outputs"], d.get("timings", {}),
                   d["version"], d["schema_version"])

    @classmethod
    def from_json(cls, s: str) -> "Report":
        return cls.from_dict(json.loads(s))

    def __eq__(self, other):
        return isinstance(other, Report) and self.to_dict() == other.to_dict()


def _flatten(prefix: str, x: Any, rows: list[tuple[str, str]]):
    if isinstance(x, dict):
        for k, v in x.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(x, list) and x and all(isinstance(v, (dict, list)) for v in x):
        for i, v in enumerate(x):
            _flatten(f"{prefix}[{i}]", v, rows)
    elif isinstance(x, list):
        rows.append((prefix, ", ".join(str(v) for v in x)))
    else:
        rows.append((prefix, str(x)))


def render_table(report: Report) -> str:
    d = report.to_dict()
    rows: list[tuple[str, str]] = [("command", d["command"])]
    _flatten("", d["outputs"], rows)
    _flatten("timings", d["timings"], rows)
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)
