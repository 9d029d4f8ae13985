"""Test-selection experiments over kill matrices: greedy minimal suites,
cross-tool objective comparison, and the randomized cost-effectiveness
simulation with Vargha-Delaney effect sizes."""

from __future__ import annotations

import bisect
import hashlib
import math
import random
import statistics
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .analysis import NoKilledMutants
from .harness import KILLED, FaultReference, KillMatrix

DEFAULT_CHECKPOINTS = (10, 20, 50, 75, 100)


class EmptySample(ValueError):
    pass


def derive_seed(*parts: object) -> int:
    """64-bit seed from the sha256 of ``parts`` joined by '|'."""
    digest = hashlib.sha256("|".join(str(p) for p in parts).encode()).hexdigest()
    return int(digest[:16], 16)


def killable(matrix: KillMatrix) -> dict[str, frozenset[str]]:
    return {m: v.failing_tests for m, v in matrix.vectors.items() if v.status == KILLED}


def kills(matrix: KillMatrix, suite: Sequence[str] | frozenset[str]) -> set[str]:
    chosen = set(suite)
    return {m for m, failed in killable(matrix).items() if failed & chosen}


# -- minimal suites -------------------------------------------------------------

def greedy_cover(failing: Mapping[str, frozenset[str]]) -> list[str]:
    """Tests in pick order: each pick kills the most still-live mutants,
    ties broken by the smaller test id."""
    live = {m: s for m, s in failing.items() if s}
    if not live:
        raise NoKilledMutants("no killed mutants")
    picked: list[str] = []
    while live:
        gain: dict[str, int] = {}
        for failed in live.values():
            for t in failed:
                gain[t] = gain.get(t, 0) + 1
        best = min(gain, key=lambda t: (-gain[t], t))
        picked.append(best)
        live = {m: s for m, s in live.items() if best not in s}
    return picked


def minimal_killing_suite(matrix: KillMatrix) -> frozenset[str]:
    """Greedy approximation of the smallest suite killing every killable mutant."""
    return frozenset(greedy_cover(killable(matrix)))


@dataclass
class ObjectiveComparison:
    """``scores[(subject, A, B)]``: share of B's killable mutants killed by A's
    minimal suite (None when B kills nothing).  ``detected[(subject, A)]``:
    whether A's suite contains a fault-triggering test."""
    scores: dict[tuple[str, str, str], Optional[float]] = field(default_factory=dict)
    detected: dict[tuple[str, str], bool] = field(default_factory=dict)
    suites: dict[tuple[str, str], frozenset[str]] = field(default_factory=dict)

    def tools(self) -> list[str]:
        return sorted({a for _, a in self.detected})

    def score_summary(self) -> dict[tuple[str, str], tuple[float, float, int]]:
        """``(A, B) -> (mean, median, subjects)`` over subjects where defined."""
        out = {}
        for a in self.tools():
            for b in self.tools():
                vals = [s for (_, x, y), s in self.scores.items() if x == a and y == b and s is not None]
                if vals:
                    out[(a, b)] = (statistics.fmean(vals), statistics.median(vals), len(vals))
        return out

    def detection_rate(self) -> dict[str, float]:
        out = {}
        for a in self.tools():
            flags = [d for (_, x), d in self.detected.items() if x == a]
            out[a] = sum(flags) / len(flags)
        return out


def objective_comparison(matrices: Mapping[str, Mapping[str, KillMatrix]],
                         faults: Mapping[str, FaultReference]) -> ObjectiveComparison:
    """``matrices`` maps subject -> tool -> kill matrix."""
    result = ObjectiveComparison()
    for subject in sorted(matrices):
        per_tool = matrices[subject]
        fault = faults[subject]
        for a in sorted(per_tool):
            try:
                suite = minimal_killing_suite(per_tool[a])
            except NoKilledMutants:
                suite = frozenset()
            result.suites[(subject, a)] = suite
            result.detected[(subject, a)] = bool(suite & fault.failing_tests)
            for b in sorted(per_tool):
                total = len(killable(per_tool[b]))
                result.scores[(subject, a, b)] = (
                    len(kills(per_tool[b], suite)) / total if total else None)
    return result


# -- cost-effectiveness ----------------------------------------------------------

@dataclass(frozen=True)
class SimulationConfig:
    repetitions: int = 100
    rng_seed: int = 42
    checkpoints: tuple[int, ...] = DEFAULT_CHECKPOINTS

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        cps = tuple(self.checkpoints)
        if not cps or list(cps) != sorted(set(cps)) or cps[-1] != 100 or cps[0] <= 0:
            raise ValueError("checkpoints must be ascending percentages ending at 100")


def selection_process(matrix: KillMatrix, rng: random.Random) -> tuple[list[str], list[int]]:
    """Visit killable mutants in random order; for each one the suite does
    not kill yet, add a random test that kills it.

    Returns the suite in pick order and, for every visited mutant, the suite
    size after the visit.
    """
    failing = killable(matrix)
    order = sorted(failing)
    rng.shuffle(order)
    suite: list[str] = []
    chosen: set[str] = set()
    sizes = []
    for mid in order:
        if not failing[mid] & chosen:
            test = rng.choice(sorted(failing[mid]))
            suite.append(test)
            chosen.add(test)
        sizes.append(len(suite))
    return suite, sizes


@dataclass(frozen=True)
class CheckpointSample:
    checkpoint_pct: int
    mutants_processed: int
    tests_selected: int
    killed_fraction: dict[str, Optional[float]]
    fault_detected: dict[str, bool]


@dataclass
class CostCurve:
    """One simulation of a subject with a baseline tool.  ``series[r]`` holds
    repetition r's samples in checkpoint order.  Fault detection of a tool is
    measured with its own selection process cut to the baseline's suite
    size, so every tool gets the same number of tests."""
    subject: str
    baseline: str
    tools: tuple[str, ...]
    checkpoints: tuple[int, ...]
    series: list[list[CheckpointSample]]

    def mean_killed_fraction(self, checkpoint: int, tool: str) -> Optional[float]:
        vals = [s.killed_fraction[tool] for rep in self.series for s in rep
                if s.checkpoint_pct == checkpoint and s.killed_fraction[tool] is not None]
        return statistics.fmean(vals) if vals else None

    def detections(self, checkpoint: int, tool: str) -> list[float]:
        return [float(s.fault_detected[tool]) for rep in self.series for s in rep
                if s.checkpoint_pct == checkpoint]

    def mean_fault_detection(self, checkpoint: int, tool: str) -> float:
        return statistics.fmean(self.detections(checkpoint, tool))


def checkpoint_counts(total: int, checkpoints: Sequence[int]) -> list[int]:
    """Number of processed mutants at each percentage checkpoint."""
    return [max(1, math.ceil(p * total / 100)) for p in checkpoints]


def cost_effectiveness(matrices: Mapping[str, KillMatrix], fault: FaultReference,
                       baseline_tool: str, config: SimulationConfig = SimulationConfig()) -> CostCurve:
    if baseline_tool not in matrices:
        raise KeyError(baseline_tool)
    base_failing = killable(matrices[baseline_tool])
    if not base_failing:
        raise NoKilledMutants(f"{baseline_tool} has no killed mutants")
    tools = tuple(sorted(matrices))
    failing = {t: killable(matrices[t]) for t in tools}
    counts = checkpoint_counts(len(base_failing), config.checkpoints)
    series = []
    for rep in range(config.repetitions):
        runs = {t: selection_process(matrices[t], random.Random(
                    derive_seed(config.rng_seed, fault.fault_id, t, rep))) for t in tools}
        suite, sizes = runs[baseline_tool]
        samples = []
        for pct, processed in zip(config.checkpoints, counts):
            size = sizes[processed - 1]
            chosen = set(suite[:size])
            fractions = {t: (sum(1 for s in failing[t].values() if s & chosen) / len(failing[t])
                             if failing[t] else None) for t in tools}
            detected = {t: bool(set(runs[t][0][:size]) & fault.failing_tests) for t in tools}
            samples.append(CheckpointSample(pct, processed, size, fractions, detected))
        series.append(samples)
    return CostCurve(fault.fault_id, baseline_tool, tools, tuple(config.checkpoints), series)


def a12(sample_x: Sequence[float], sample_y: Sequence[float]) -> float:
    """Vargha-Delaney A: chance that a draw from x beats one from y, ties
    counting half."""
    if not sample_x or not sample_y:
        raise EmptySample("both samples must be non-empty")
    greater = ties = 0
    ys = sorted(sample_y)
    for x in sample_x:
        lo = bisect.bisect_left(ys, x)
        hi = bisect.bisect_right(ys, x)
        greater += lo
        ties += hi - lo
    return (greater + 0.5 * ties) / (len(sample_x) * len(sample_y))


# -- aggregation across subjects -------------------------------------------------

@dataclass(frozen=True)
class SimulationRow:
    baseline: str
    checkpoint_pct: int
    tool: str
    mean_killed_fraction: Optional[float]
    mean_fault_detection: float


@dataclass(frozen=True)
class A12Row:
    baseline: str
    tool: str
    checkpoint_pct: int
    a12: float


def summarize_curves(curves: Sequence[CostCurve]) -> tuple[list[SimulationRow], list[A12Row]]:
    """Means over every (subject, repetition) sample, per baseline, checkpoint
    and tool; A12 of each tool's fault detection against the baseline's."""
    rows, effects = [], []
    baselines = sorted({c.baseline for c in curves})
    for base in baselines:
        mine = [c for c in curves if c.baseline == base]
        tools = sorted({t for c in mine for t in c.tools})
        checkpoints = mine[0].checkpoints
        for pct in checkpoints:
            base_det = [d for c in mine for d in c.detections(pct, base)]
            for tool in tools:
                killed = [s.killed_fraction[tool] for c in mine for rep in c.series for s in rep
                          if s.checkpoint_pct == pct and s.killed_fraction.get(tool) is not None]
                det = [d for c in mine if tool in c.tools for d in c.detections(pct, tool)]
                rows.append(SimulationRow(base, pct, tool,
                                          statistics.fmean(killed) if killed else None,
                                          statistics.fmean(det)))
                effects.append(A12Row(base, tool, pct, a12(det, base_det)))
    return rows, effects
