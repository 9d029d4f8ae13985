"""Kill matrices for subjects outside MiniLang.

Each mutant is written into a private copy of a working directory, an
optional build command runs there, then one shell command per test.  A
non-zero build exit marks the mutant INVALID; a non-zero test exit or a
timeout marks the test as failing.
"""

from __future__ import annotations

import shutil
import subprocess
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .engines.mutant import Mutant
from .harness import INVALID, KILLED, SURVIVED, KillMatrix, KillVector

TEST_ID_PLACEHOLDER = "{test_id}"


@dataclass(frozen=True)
class ExternalConfig:
    test_cmd_template: str
    build_cmd: Optional[str] = None
    timeout_seconds: float = 60.0

    def __post_init__(self):
        if TEST_ID_PLACEHOLDER not in self.test_cmd_template:
            raise ValueError(f"test_cmd_template must contain {TEST_ID_PLACEHOLDER}")
        if self.timeout_seconds <= 0:
            raise ValueError("timeout_seconds must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> "ExternalConfig":
        return cls(data["test_cmd_template"], data.get("build_cmd"),
                   float(data.get("timeout_seconds", 60.0)))


def _succeeds(command: str, cwd: Path, timeout: float) -> bool:
    try:
        done = subprocess.run(command, shell=True, cwd=cwd, timeout=timeout,
                              stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
    except subprocess.TimeoutExpired:
        return False
    return done.returncode == 0


def run_external_mutant(workdir: Path, target: str, mutant: Mutant,
                        test_ids: Sequence[str], config: ExternalConfig) -> KillVector:
    with tempfile.TemporaryDirectory(prefix="faultseed-") as tmp:
        copy = Path(tmp) / "work"
        shutil.copytree(workdir, copy)
        (copy / target).write_text(mutant.patched_source)
        if config.build_cmd and not _succeeds(config.build_cmd, copy, config.timeout_seconds):
            return KillVector(mutant.id, INVALID)
        failed = frozenset(
            tid for tid in test_ids
            if not _succeeds(config.test_cmd_template.replace(TEST_ID_PLACEHOLDER, tid),
                             copy, config.timeout_seconds))
    return KillVector(mutant.id, KILLED if failed else SURVIVED, failed)


def execute_external(workdir: Path | str, target: str, mutants: Sequence[Mutant],
                     test_ids: Sequence[str], config: ExternalConfig,
                     workers: int = 1, subject: str = "") -> KillMatrix:
    """Kill matrix for mutants of the file ``target`` (relative to ``workdir``).
    The original directory is never modified."""
    if workers < 1:
        raise ValueError("workers must be at least 1")
    workdir = Path(workdir)
    if not (workdir / target).is_file():
        raise FileNotFoundError(workdir / target)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        vectors = list(pool.map(
            lambda m: run_external_mutant(workdir, target, m, test_ids, config), mutants))
    return KillMatrix(subject, tuple(test_ids), {v.mutant_id: v for v in vectors})
