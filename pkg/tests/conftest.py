from __future__ import annotations

import time
from pathlib import Path

import pytest

from faultseed.cli import main
from faultseed.engines import train_ngram
from faultseed.minilang import load_corpus

# (criterion, passed, detail) lines filled in by test_acceptance.py
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(ACCEPTANCE_LINES, key=lambda x: x[0]):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def entries(corpus):
    return {e.name: e for e in corpus}


@pytest.fixture(scope="session")
def model(corpus):
    return train_ngram([e.fixed_source for e in corpus])


@pytest.fixture(scope="session")
def pipeline(tmp_path_factory):
    """One full single-worker run over the bundled corpus: (out_dir, seconds)."""
    out = tmp_path_factory.mktemp("pipeline") / "out"
    started = time.perf_counter()
    code = main(["all", "--out", str(out), "--workers", "1", "--seed", "42"])
    elapsed = time.perf_counter() - started
    assert code == 0
    return Path(out), elapsed


@pytest.fixture(scope="session")
def pipeline_parallel(tmp_path_factory):
    """A second full run of the same configuration with four workers."""
    out = tmp_path_factory.mktemp("pipeline4") / "out"
    assert main(["all", "--out", str(out), "--workers", "4", "--seed", "42"]) == 0
    return Path(out)
