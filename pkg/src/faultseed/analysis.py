"""How mutants relate to a real fault and to each other: quartiles of
syntactic similarity, fault resemblance, correlation, subsumption, and
same-location sensitivity."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Optional, Sequence

import numpy as np
from scipy import stats

from .harness import KILLED, KillMatrix
from .metrics import SimilarityRecord


class TooFewMutants(ValueError):
    pass


class DegenerateVariance(ValueError):
    pass


class NoKilledMutants(ValueError):
    pass


# -- quartiles ------------------------------------------------------------------

@dataclass(frozen=True)
class QuartilePartition:
    q1: tuple[str, ...]
    q2: tuple[str, ...]
    q3: tuple[str, ...]
    q4: tuple[str, ...]

    @property
    def quartiles(self) -> tuple[tuple[str, ...], ...]:
        return (self.q1, self.q2, self.q3, self.q4)

    def quartile_of(self, mutant_id: str) -> int:
        """1-based quartile holding ``mutant_id``."""
        for i, q in enumerate(self.quartiles, start=1):
            if mutant_id in q:
                return i
        raise KeyError(mutant_id)


def quartiles(records: Sequence[SimilarityRecord]) -> QuartilePartition:
    """Ascending syntactic similarity (ties by mutant id), cut into four
    parts whose sizes differ by at most one; extra records go to the lower
    quartiles."""
    if len(records) < 4:
        raise TooFewMutants(f"need at least 4 records, got {len(records)}")
    ordered = [r.mutant_id for r in sorted(records, key=lambda r: (r.syntactic, r.mutant_id))]
    base, extra = divmod(len(ordered), 4)
    parts, start = [], 0
    for i in range(4):
        size = base + (1 if i < extra else 0)
        parts.append(tuple(ordered[start:start + size]))
        start += size
    return QuartilePartition(*parts)


# -- resemblance ----------------------------------------------------------------

@dataclass(frozen=True)
class FaultResemblance:
    fault_id: str
    mutants: int
    resembling: int
    exact_match: bool
    quartile_resembled: tuple[bool, bool, bool, bool]
    quartile_ratios: tuple[float, float, float, float]

    @property
    def resembled(self) -> bool:
        return self.resembling > 0

    @property
    def ratio(self) -> float:
        return self.resembling / self.mutants if self.mutants else 0.0

    def to_dict(self) -> dict:
        return {
            "fault_id": self.fault_id, "mutants": self.mutants,
            "resembling": self.resembling, "resembled": self.resembled,
            "ratio": self.ratio, "exact_match": self.exact_match,
            "quartile_resembled": list(self.quartile_resembled),
            "quartile_ratios": list(self.quartile_ratios),
        }


def resemblance(records: Sequence[SimilarityRecord],
                partition: Optional[QuartilePartition] = None) -> FaultResemblance:
    """A mutant resembles the fault when its Ochiai similarity is exactly 1.

    Without a partition (fewer than four records) the quartile flags are all
    false and the quartile ratios zero.
    """
    if not records:
        raise TooFewMutants("no records")
    fault_ids = {r.fault_id for r in records}
    if len(fault_ids) != 1:
        raise ValueError("records must belong to a single fault")
    hits = {r.mutant_id for r in records if r.semantic == 1.0}
    flags, ratios = [False] * 4, [0.0] * 4
    if partition is not None:
        for i, q in enumerate(partition.quartiles):
            n = len(hits.intersection(q))
            flags[i] = n > 0
            ratios[i] = n / len(q) if q else 0.0
    return FaultResemblance(fault_ids.pop(), len(records), len(hits),
                            any(r.exact_match for r in records), tuple(flags), tuple(ratios))


@dataclass(frozen=True)
class ResemblanceSummary:
    faults: int
    resembled_pct: float
    exact_match_pct: float
    quartile_pct: tuple[float, float, float, float]
    mean_ratio: float
    quartile_mean_ratio: tuple[float, float, float, float]

    def to_dict(self) -> dict:
        return {
            "faults": self.faults, "resembled_pct": self.resembled_pct,
            "exact_match_pct": self.exact_match_pct,
            "quartile_pct": list(self.quartile_pct), "mean_ratio": self.mean_ratio,
            "quartile_mean_ratio": list(self.quartile_mean_ratio),
        }


def summarize_resemblance(per_fault: Sequence[FaultResemblance]) -> ResemblanceSummary:
    """Percentages of faults resembled (overall, exactly, per quartile) and
    mean per-fault ratios of resembling mutants."""
    n = len(per_fault)
    if n == 0:
        return ResemblanceSummary(0, 0.0, 0.0, (0.0,) * 4, 0.0, (0.0,) * 4)

    def pct(count: int) -> float:
        return 100.0 * count / n

    return ResemblanceSummary(
        n,
        pct(sum(f.resembled for f in per_fault)),
        pct(sum(f.exact_match for f in per_fault)),
        tuple(pct(sum(f.quartile_resembled[i] for f in per_fault)) for i in range(4)),
        float(np.mean([f.ratio for f in per_fault])),
        tuple(float(np.mean([f.quartile_ratios[i] for f in per_fault])) for i in range(4)),
    )


# -- correlation ----------------------------------------------------------------

def kendall_tau_a(xs: Sequence[float], ys: Sequence[float], chunk: int = 1024) -> float:
    """(concordant - discordant) / (n(n-1)/2); tied pairs count as neither."""
    x, y = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    n = len(x)
    if n != len(y):
        raise ValueError("samples differ in length")
    if n < 2:
        raise TooFewMutants("tau needs at least 2 pairs")
    total = 0
    for start in range(0, n, chunk):
        sx = np.sign(x[start:start + chunk, None] - x[None, :]).astype(np.int8)
        sy = np.sign(y[start:start + chunk, None] - y[None, :]).astype(np.int8)
        total += int((sx * sy).sum(dtype=np.int64))
    # every unordered pair was counted twice
    return (total / 2) / (n * (n - 1) / 2)


def tau_p_value(tau: float, n: int) -> float:
    """Two-sided p-value from the normal approximation of tau under
    independence."""
    if n < 2:
        return 1.0
    z = 3 * tau * math.sqrt(n * (n - 1)) / math.sqrt(2 * (2 * n + 5))
    return math.erfc(abs(z) / math.sqrt(2))


def pearson_r(xs: Sequence[float], ys: Sequence[float]) -> float:
    x, y = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    if len(x) != len(y):
        raise ValueError("samples differ in length")
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = float(dx @ dx), float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateVariance("a coordinate is constant")
    return max(-1.0, min(1.0, float(dx @ dy) / math.sqrt(sxx * syy)))


def pearson_p_value(r: float, n: int) -> float:
    """Two-sided p-value of the t statistic with n - 2 degrees of freedom."""
    if n < 3:
        return 1.0
    if abs(r) >= 1.0:
        return 0.0
    t = r * math.sqrt((n - 2) / (1 - r * r))
    return float(2 * stats.t.sf(abs(t), n - 2))


@dataclass(frozen=True)
class Correlation:
    n: int
    kendall_tau_a: float
    pearson_r: Optional[float]
    tau_p: float
    r_p: Optional[float]

    @property
    def p_values(self) -> tuple[float, Optional[float]]:
        return (self.tau_p, self.r_p)

    def to_dict(self) -> dict:
        return {"n": self.n, "kendall_tau_a": self.kendall_tau_a, "pearson_r": self.pearson_r,
                "tau_p": self.tau_p, "r_p": self.r_p}


def correlations(records: Sequence[SimilarityRecord]) -> Correlation:
    """Syntactic vs semantic similarity.  Pearson r is None when either
    coordinate is constant."""
    if len(records) < 3:
        raise TooFewMutants(f"need at least 3 records, got {len(records)}")
    xs = [r.syntactic for r in records]
    ys = [r.semantic for r in records]
    tau = kendall_tau_a(xs, ys)
    try:
        r = pearson_r(xs, ys)
        r_p: Optional[float] = pearson_p_value(r, len(records))
    except DegenerateVariance:
        r, r_p = None, None
    return Correlation(len(records), tau, r, tau_p_value(tau, len(records)), r_p)


# -- subsumption ----------------------------------------------------------------

@dataclass(frozen=True)
class SubsumptionGraph:
    """Killed mutants grouped by failing-test set.  ``edges`` holds ``(i, j)``
    when group i's failing set is a proper subset of group j's, i.e. every
    test killing group i also kills group j."""
    groups: tuple[frozenset[str], ...]
    failing: tuple[frozenset[str], ...]
    edges: frozenset[tuple[int, int]]
    subsuming: tuple[int, ...]

    @property
    def subsuming_groups(self) -> list[frozenset[str]]:
        return [self.groups[i] for i in self.subsuming]

    @property
    def subsuming_mutants(self) -> frozenset[str]:
        return frozenset().union(*self.subsuming_groups) if self.subsuming else frozenset()


def subsumption_from_sets(failing_sets: Mapping[str, frozenset[str]]) -> SubsumptionGraph:
    """Subsumption over ``mutant -> failing set``; empty sets are ignored."""
    by_set: dict[frozenset[str], set[str]] = defaultdict(set)
    for mid, failed in failing_sets.items():
        if failed:
            by_set[frozenset(failed)].add(mid)
    if not by_set:
        raise NoKilledMutants("no killed mutants")
    keys = sorted(by_set, key=lambda s: (len(s), sorted(s)))
    edges = frozenset((i, j) for i, a in enumerate(keys) for j, b in enumerate(keys) if a < b)
    subsumed = {j for _, j in edges}
    return SubsumptionGraph(tuple(frozenset(by_set[k]) for k in keys), tuple(keys), edges,
                            tuple(i for i in range(len(keys)) if i not in subsumed))


def subsumption(matrix: KillMatrix) -> SubsumptionGraph:
    return subsumption_from_sets({m: v.failing_tests for m, v in matrix.vectors.items()
                                  if v.status == KILLED})


def cross_tool_subsumption(matrices: Mapping[str, KillMatrix]) -> dict[tuple[str, str], Optional[float]]:
    """``(A, B) -> contribution of B on top of A``.

    On the subsumption graph of all tools' mutants pooled, the contribution is
    the number of subsuming groups holding a B mutant and no A mutant,
    relative to the number of subsuming groups holding an A mutant.  It can
    exceed 1, and is None when A owns no subsuming group.
    """
    tools = sorted(matrices)
    test_sets = {tuple(sorted(matrices[t].test_ids)) for t in tools}
    if len(test_sets) > 1:
        raise ValueError("matrices must share the same tests")
    pooled = {(t, m): v.failing_tests for t in tools for m, v in matrices[t].vectors.items()
              if v.status == KILLED}
    keyed = {f"{t}\x00{m}": s for (t, m), s in pooled.items()}
    graph = subsumption_from_sets(keyed)
    owners = [{key.split("\x00", 1)[0] for key in g} for g in graph.subsuming_groups]
    table: dict[tuple[str, str], Optional[float]] = {}
    for a in tools:
        with_a = sum(a in o for o in owners)
        for b in tools:
            if a == b:
                continue
            extra = sum(b in o and a not in o for o in owners)
            table[(a, b)] = extra / with_a if with_a else None
    return table


# -- same-location sensitivity -----------------------------------------------------

@dataclass
class LocationDeltas:
    """|Δsyntactic| and |Δsemantic| for every pair of mutants sharing an
    edit location, split by whether the location touches the fault."""
    patch: list[tuple[float, float]] = field(default_factory=list)
    other: list[tuple[float, float]] = field(default_factory=list)


def location_sensitivity(records: Sequence[SimilarityRecord]) -> LocationDeltas:
    sites: dict[tuple[str, str, tuple[int, int]], list[SimilarityRecord]] = defaultdict(list)
    for r in records:
        sites[(r.fault_id, r.function, tuple(r.span))].append(r)
    out = LocationDeltas()
    for key in sorted(sites):
        group = sorted(sites[key], key=lambda r: r.mutant_id)
        bucket = out.patch if any(r.at_patch for r in group) else out.other
        for a, b in combinations(group, 2):
            bucket.append((abs(a.syntactic - b.syntactic), abs(a.semantic - b.semantic)))
    return out
