"""Loading the on-disk corpus: ``<root>/<name>/{fixed,faulty}.mini``,
``tests.json`` and ``bugreport.txt``."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .execution import TestCase

BUNDLED_CORPUS = Path(__file__).resolve().parent.parent / "corpus"


class CorpusError(Exception):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    fixed_source: str
    faulty_source: str
    tests: tuple[TestCase, ...]
    bug_report: str


def load_entry(path: Path) -> CorpusEntry:
    path = Path(path)
    try:
        fixed = (path / "fixed.mini").read_text()
        faulty = (path / "faulty.mini").read_text()
        raw_tests = json.loads((path / "tests.json").read_text())
        report_path = path / "bugreport.txt"
        report = report_path.read_text() if report_path.exists() else ""
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusError(f"{path}: {exc}") from exc
    try:
        tests = tuple(TestCase.from_dict(t) for t in raw_tests)
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusError(f"{path}/tests.json: {exc}") from exc
    ids = [t.id for t in tests]
    if len(set(ids)) != len(ids):
        raise CorpusError(f"{path}/tests.json: duplicate test ids")
    return CorpusEntry(path.name, fixed, faulty, tests, report)


def load_corpus(root: Path | str = BUNDLED_CORPUS) -> list[CorpusEntry]:
    """All entries under ``root``, sorted by name."""
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus directory not found: {root}")
    entries = [load_entry(p) for p in sorted(root.iterdir())
               if p.is_dir() and (p / "fixed.mini").exists()]
    if not entries:
        raise CorpusError(f"no corpus entries under {root}")
    return entries
