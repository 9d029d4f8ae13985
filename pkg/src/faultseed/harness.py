"""Run mutants against a test suite and record who kills whom."""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .engines.mutant import Mutant
from .lexing import lex
from .minilang import (
    DEFAULT_STEP_LIMIT, CorpusEntry, CorpusError, Executable, MiniSyntaxError,
    Program, TestCase, UnknownFunction, parse,
)

KILLED = "KILLED"
SURVIVED = "SURVIVED"
INVALID = "INVALID"
STATUSES = (KILLED, SURVIVED, INVALID)

FORMAT_VERSION = 1
KILLMATRIX_CSV = "killmatrix.csv"
KILLMATRIX_META = "killmatrix.meta.json"
CSV_HEADER_LINE = f"# faultseed killmatrix v{FORMAT_VERSION}"


class EmptyMatrix(ValueError):
    pass


@dataclass(frozen=True)
class KillVector:
    mutant_id: str
    status: str
    failing_tests: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if (self.status == KILLED) != bool(self.failing_tests):
            raise ValueError(f"{self.mutant_id}: KILLED must coincide with a non-empty failing set")


@dataclass
class KillMatrix:
    subject: str
    test_ids: tuple[str, ...]
    vectors: dict[str, KillVector] = field(default_factory=dict)

    def __post_init__(self):
        known = set(self.test_ids)
        for v in self.vectors.values():
            if not v.failing_tests <= known:
                raise ValueError(f"{v.mutant_id}: failing tests outside the suite")
        self.vectors = dict(sorted(self.vectors.items()))

    def __getitem__(self, mutant_id: str) -> KillVector:
        return self.vectors[mutant_id]

    def __len__(self) -> int:
        return len(self.vectors)

    def ids(self, status: str | None = None) -> list[str]:
        return [m for m, v in self.vectors.items() if status is None or v.status == status]

    def restrict(self, mutant_ids: Iterable[str]) -> "KillMatrix":
        keep = set(mutant_ids)
        return KillMatrix(self.subject, self.test_ids,
                          {m: v for m, v in self.vectors.items() if m in keep})


@dataclass(frozen=True)
class FaultReference:
    fault_id: str
    failing_tests: frozenset[str]
    faulty_tokens: tuple[str, ...]
    fixed_tokens: tuple[str, ...]
    changed_functions: frozenset[str]
    faulty_source: str = field(default="", compare=False, repr=False)
    fixed_source: str = field(default="", compare=False, repr=False)

    def __post_init__(self):
        if not self.failing_tests:
            raise CorpusError(f"{self.fault_id}: the fault triggers no failing test")

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "fault_id": self.fault_id,
            "failing_tests": sorted(self.failing_tests),
            "changed_functions": sorted(self.changed_functions),
            "faulty_tokens": list(self.faulty_tokens),
            "fixed_tokens": list(self.fixed_tokens),
            "faulty_source": self.faulty_source,
            "fixed_source": self.fixed_source,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FaultReference":
        return cls(data["fault_id"], frozenset(data["failing_tests"]),
                   tuple(data["faulty_tokens"]), tuple(data["fixed_tokens"]),
                   frozenset(data["changed_functions"]),
                   data.get("faulty_source", ""), data.get("fixed_source", ""))


# -- execution ----------------------------------------------------------------

def failing_tests(program: Program, tests: Sequence[TestCase],
                  step_limit: int = DEFAULT_STEP_LIMIT) -> frozenset[str]:
    """Ids of tests that do not pass.  Runtime errors, exhausted step budgets
    and calls to a function the program lacks all count as failures."""
    exe = Executable(program)
    failed = set()
    for test in tests:
        try:
            if exe.run(test, step_limit).failed:
                failed.add(test.id)
        except UnknownFunction:
            failed.add(test.id)
    return frozenset(failed)


def _evaluate(job: tuple[str, tuple[TestCase, ...], int]) -> tuple[str, frozenset[str]]:
    source, tests, step_limit = job
    try:
        program = parse(source)
    except MiniSyntaxError:
        return INVALID, frozenset()
    failed = failing_tests(program, tests, step_limit)
    return (KILLED if failed else SURVIVED), failed


def execute_all(program: Program, mutants: Sequence[Mutant], tests: Sequence[TestCase],
                step_limit: int = DEFAULT_STEP_LIMIT, workers: int = 1,
                subject: str = "") -> KillMatrix:
    """Kill matrix of ``mutants`` (of ``program``) under ``tests``.

    Mutants sharing a patched source are executed once.  The result does not
    depend on ``workers``.
    """
    if workers < 1:
        raise ValueError("workers must be at least 1")
    ids = [m.id for m in mutants]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate mutant ids")
    tests = tuple(tests)
    sources = sorted({m.patched_source for m in mutants})
    jobs = [(s, tests, step_limit) for s in sources]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_evaluate(job) for job in jobs]
    by_source = dict(zip(sources, results))
    vectors = {m.id: KillVector(m.id, *by_source[m.patched_source]) for m in mutants}
    return KillMatrix(subject, tuple(t.id for t in tests), vectors)


def function_tokens(program: Program) -> dict[str, tuple[str, ...]]:
    texts = program.tokens.texts
    return {fn.name: tuple(texts[fn.lo:fn.hi]) for fn in program.functions}


def changed_functions(fixed: Program, faulty: Program) -> frozenset[str]:
    """Functions whose token sequence differs between the two versions,
    including functions present in only one of them."""
    a, b = function_tokens(fixed), function_tokens(faulty)
    return frozenset(name for name in a.keys() | b.keys() if a.get(name) != b.get(name))


def execute_reference(entry: CorpusEntry, step_limit: int = DEFAULT_STEP_LIMIT) -> FaultReference:
    """Check a corpus entry and describe its real fault.

    Every test must pass on the fixed version and at least one must fail on
    the faulty version; anything else is a broken fixture.
    """
    try:
        fixed = parse(entry.fixed_source, f"{entry.name}/fixed")
        faulty = parse(entry.faulty_source, f"{entry.name}/faulty")
    except MiniSyntaxError as exc:
        raise CorpusError(f"{entry.name}: {exc}") from exc
    broken = failing_tests(fixed, entry.tests, step_limit)
    if broken:
        raise CorpusError(f"{entry.name}: tests fail on the fixed version: {sorted(broken)}")
    failed = failing_tests(faulty, entry.tests, step_limit)
    if not failed:
        raise CorpusError(f"{entry.name}: no test fails on the faulty version")
    return FaultReference(
        entry.name, failed, tuple(lex(entry.faulty_source).texts),
        tuple(lex(entry.fixed_source).texts), changed_functions(fixed, faulty),
        entry.faulty_source, entry.fixed_source)


def mutation_score(matrix: KillMatrix) -> float:
    killed = len(matrix.ids(KILLED))
    survived = len(matrix.ids(SURVIVED))
    if killed + survived == 0:
        raise EmptyMatrix("no valid mutants in the matrix")
    return killed / (killed + survived)


# -- persistence ----------------------------------------------------------------

def write_killmatrix(matrix: KillMatrix, directory: Path | str) -> None:
    """``killmatrix.csv`` has one PASS/FAIL row per valid mutant and test;
    statuses (INVALID included) live in ``killmatrix.meta.json``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    with open(directory / KILLMATRIX_CSV, "w", newline="") as fh:
        fh.write(CSV_HEADER_LINE + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["mutant_id", "test_id", "outcome"])
        for mid, vector in matrix.vectors.items():
            if vector.status == INVALID:
                continue
            for tid in matrix.test_ids:
                writer.writerow([mid, tid, "FAIL" if tid in vector.failing_tests else "PASS"])
    meta = {
        "format_version": FORMAT_VERSION,
        "subject": matrix.subject,
        "test_ids": list(matrix.test_ids),
        "statuses": {mid: v.status for mid, v in matrix.vectors.items()},
    }
    (directory / KILLMATRIX_META).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def read_killmatrix(directory: Path | str) -> KillMatrix:
    directory = Path(directory)
    meta = json.loads((directory / KILLMATRIX_META).read_text())
    failing: dict[str, set[str]] = {mid: set() for mid in meta["statuses"]}
    with open(directory / KILLMATRIX_CSV, newline="") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER_LINE:
            raise ValueError(f"{directory / KILLMATRIX_CSV}: unexpected header {header!r}")
        for row in csv.DictReader(fh):
            if row["outcome"] == "FAIL":
                failing[row["mutant_id"]].add(row["test_id"])
    vectors = {mid: KillVector(mid, status, frozenset(failing[mid]))
               for mid, status in meta["statuses"].items()}
    return KillMatrix(meta["subject"], tuple(meta["test_ids"]), vectors)
