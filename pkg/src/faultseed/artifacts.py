"""Versioned CSV and JSON files.

CSV files open with a ``# faultseed <kind> v<N>`` line before the column
header; JSON files carry a top-level ``format_version`` key.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

FORMAT_VERSION = 1


class MissingInput(FileNotFoundError):
    """A stage's input artifact does not exist yet."""


def csv_header_line(kind: str) -> str:
    return f"# faultseed {kind} v{FORMAT_VERSION}"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: Path, kind: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(csv_header_line(kind) + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def read_csv(path: Path, kind: str) -> list[dict[str, str]]:
    if not path.is_file():
        raise MissingInput(path)
    with open(path, newline="") as fh:
        first = fh.readline().rstrip("\n")
        if first != csv_header_line(kind):
            raise ValueError(f"{path}: expected header {csv_header_line(kind)!r}, got {first!r}")
        return list(csv.DictReader(fh))


def write_json(path: Path, data: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {"format_version": FORMAT_VERSION, **data}
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_json(path: Path) -> dict:
    if not path.is_file():
        raise MissingInput(path)
    data = json.loads(path.read_text())
    if data.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported format_version {data.get('format_version')!r}")
    return data


def parse_float(text: str) -> float | None:
    return None if text == "" else float(text)
