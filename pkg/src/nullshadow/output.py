"""Machine-readable run records: one table plus scalars per scenario.

Two formats, both byte-deterministic for a given record:

  * JSON: a single object carrying scenario name, simulator version,
    seed, config echo, summary scalars, and the table; validates
    against ``schemas/output_record.schema.json``.
  * CSV: the table only (RFC-4180 quoting, LF line endings, header
    first).  Config echo lives in the JSON format.

Floats are written with Python repr semantics (shortest decimal that
round-trips), so parsing a file back reproduces every value exactly.
NaN is mapped to null / an empty cell to keep the JSON standard.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

from . import __version__

SCHEMA_RESOURCE = "output_record.schema.json"


@dataclass
class OutputRecord:
    scenario: str
    seed: int | None
    config: dict[str, Any]
    summary: dict[str, Any]
    columns: list[str]
    rows: list[list[Any]]
    version: str = field(default=__version__)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario,
            "version": self.version,
            "seed": self.seed,
            "config": _plain(self.config),
            "summary": _plain(self.summary),
            "columns": list(self.columns),
            "rows": _plain(self.rows),
        }


def render(record: OutputRecord, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record.to_json_dict(), indent=2, allow_nan=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(record.columns)
        for row in record.rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()
    raise ValueError(f"unknown output format {fmt!r}")


def write_record(record: OutputRecord, path: str | None, fmt: str) -> None:
    """Write to a file, or to stdout when no path is given."""
    text = render(record, fmt)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def read_csv_table(path: str) -> tuple[list[str], list[list[Any]]]:
    """Parse a CSV written by :func:`write_record` back into typed cells."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[_parse_cell(v) for v in row] for row in reader]
    return header, rows


def load_schema() -> dict[str, Any]:
    """The JSON schema that every JSON record must satisfy."""
    text = resources.files("nullshadow.schemas").joinpath(SCHEMA_RESOURCE).read_text("utf-8")
    return json.loads(text)


def _plain(value: Any) -> Any:
    """Coerce numpy scalars/arrays and NaN into JSON-safe plain Python."""
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        value = value.item() if not hasattr(value, "__len__") else list(value)
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _cell(value: Any) -> str:
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_cell(text: str) -> Any:
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text
