"""``faultseed``: generate mutants for a corpus of real faults, execute them,
compare them with the faults, and simulate test selection.

Stages and what they read and write under ``--out``::

    generate   corpus                   -> <subject>/mutants.json, generation_summary.csv,
                                           predictor_model.tsv
    execute    mutants.json             -> <subject>/killmatrix.csv, killmatrix.meta.json,
                                           fault.json
    analyze    execute outputs          -> similarity.csv, <subject>/analysis.json,
                                           analysis_summary.csv, correlations.csv
    simulate   execute outputs          -> simulation.csv, a12.csv, objective.csv
    report     analyze + simulate       -> plots/*.csv
    all        every stage in order

Exit codes: 0 success, 2 bad configuration, 3 corpus problem, 4 a stage's
input is missing, 5 anything else.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
import traceback
from collections import defaultdict
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .analysis import (
    NoKilledMutants, TooFewMutants, correlations, cross_tool_subsumption,
    location_sensitivity, quartiles, resemblance, subsumption, summarize_resemblance,
)
from .artifacts import (
    MissingInput, parse_float, read_csv, read_json, write_csv, write_json,
)
from .engines import (
    ALL, DEFAULT_CAP, DEFAULT_CONTEXT_LIMIT, DEFAULT_K, ENGINES, GRAMMAR, PATTERN,
    POLICIES, PREDICTOR, Mutant, generate_grammar_mutants, generate_pattern_mutants,
    generate_predictor_mutants, load_model, localize, save_model, train_ngram,
)
from .harness import (
    INVALID, KILLED, FaultReference, KillMatrix, execute_all, execute_reference,
    mutation_score, read_killmatrix, write_killmatrix,
)
from .metrics import GRANULARITIES, SYNTACTIC_METRICS, SimilarityRecord, similarity_table
from .minilang import (
    BUNDLED_CORPUS, DEFAULT_STEP_LIMIT, CorpusEntry, CorpusError, MiniSyntaxError,
    load_corpus, parse,
)
from .simulate import (
    SimulationConfig, cost_effectiveness, derive_seed, killable, objective_comparison,
    summarize_curves,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CORPUS = 3
EXIT_MISSING = 4
EXIT_INTERNAL = 5

ENGINE_NAMES = {"grammar": GRAMMAR, "pattern": PATTERN, "predictor": PREDICTOR}
STAGES = ("generate", "execute", "analyze", "simulate", "report")

MODEL_FILE = "predictor_model.tsv"
SIMILARITY_COLUMNS = ("mutant_id", "fault_id", "granularity", "metric", "syntactic", "semantic",
                      "engine", "function", "span_start", "span_end", "at_patch", "exact_match")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    corpus_path: str = str(BUNDLED_CORPUS)
    engines: tuple[str, ...] = ("grammar", "pattern", "predictor")
    predictor_policy: str = ALL
    k: int = DEFAULT_K
    cap: int = DEFAULT_CAP
    context_limit: int = DEFAULT_CONTEXT_LIMIT
    ngram_order: int = 3
    step_limit: int = DEFAULT_STEP_LIMIT
    workers: int = 1
    syntactic_metric: str = "BLEU"
    granularity: str = "FILE"
    seed: int = 42
    repetitions: int = 100
    out_dir: str = "out"

    def __post_init__(self):
        engines = tuple(e.strip().lower() for e in self.engines if e.strip())
        if not engines or any(e not in ENGINE_NAMES for e in engines):
            raise ConfigError(f"engines must be a non-empty subset of {sorted(ENGINE_NAMES)}")
        object.__setattr__(self, "engines", tuple(sorted(set(engines), key=list(ENGINE_NAMES).index)))
        for name in ("k", "cap", "context_limit", "ngram_order", "step_limit", "workers", "repetitions"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"{name} must be an integer >= 1, got {value!r}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError(f"seed must be an integer, got {self.seed!r}")
        for name, allowed in (("predictor_policy", POLICIES), ("syntactic_metric", SYNTACTIC_METRICS),
                              ("granularity", GRANULARITIES)):
            value = str(getattr(self, name)).upper()
            if value not in allowed:
                raise ConfigError(f"{name} must be one of {list(allowed)}, got {getattr(self, name)!r}")
            object.__setattr__(self, name, value)

    @property
    def engine_ids(self) -> list[str]:
        return [ENGINE_NAMES[e] for e in self.engines]

    @property
    def out(self) -> Path:
        return Path(self.out_dir)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["engines"] = list(self.engines)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known - {"format_version"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        data = {k: v for k, v in data.items() if k in known}
        if isinstance(data.get("engines"), str):
            data["engines"] = data["engines"].split(",")
        if "engines" in data:
            data["engines"] = tuple(data["engines"])
        return cls(**data)


# -- helpers -----------------------------------------------------------------------

def _subject_dir(cfg: RunConfig, subject: str) -> Path:
    return cfg.out / subject


def _load_corpus(cfg: RunConfig) -> list[CorpusEntry]:
    return load_corpus(cfg.corpus_path)


def _subjects(cfg: RunConfig, required: str) -> list[str]:
    """Subjects with ``required`` present in their output directory, in the
    order the corpus lists them."""
    names = [e.name for e in _load_corpus(cfg)]
    for name in names:
        if not (_subject_dir(cfg, name) / required).is_file():
            raise MissingInput(_subject_dir(cfg, name) / required)
    return names


def _read_mutants(cfg: RunConfig, subject: str) -> list[Mutant]:
    data = read_json(_subject_dir(cfg, subject) / "mutants.json")
    return [Mutant.from_dict(m) for m in data["mutants"]]


def _read_killmatrix(cfg: RunConfig, subject: str) -> KillMatrix:
    directory = _subject_dir(cfg, subject)
    if not (directory / "killmatrix.meta.json").is_file():
        raise MissingInput(directory / "killmatrix.meta.json")
    return read_killmatrix(directory)


def _read_fault(cfg: RunConfig, subject: str) -> FaultReference:
    return FaultReference.from_dict(read_json(_subject_dir(cfg, subject) / "fault.json"))


def _by_engine(mutants: Sequence[Mutant], matrix: KillMatrix) -> dict[str, KillMatrix]:
    engines = sorted({m.engine for m in mutants})
    return {e: matrix.restrict(m.id for m in mutants if m.engine == e) for e in engines}


def _log(message: str) -> None:
    print(message, file=sys.stderr)


# -- stages ------------------------------------------------------------------------

def generate_for_entry(cfg: RunConfig, entry: CorpusEntry, model=None) -> list[Mutant]:
    try:
        program = parse(entry.fixed_source, f"{entry.name}/fixed")
    except MiniSyntaxError as exc:
        raise CorpusError(f"{entry.name}: {exc}") from exc
    mutants: list[Mutant] = []
    if GRAMMAR in cfg.engine_ids:
        mutants += generate_grammar_mutants(program)
    if PATTERN in cfg.engine_ids:
        report = entry.bug_report if entry.bug_report.strip() else entry.name
        mutants += generate_pattern_mutants(program, localize(program, report), cap=cfg.cap)
    if PREDICTOR in cfg.engine_ids:
        mutants += generate_predictor_mutants(program, model, k=cfg.k,
                                              context_limit=cfg.context_limit,
                                              policy=cfg.predictor_policy)
    return mutants


def cmd_generate(cfg: RunConfig) -> None:
    corpus = _load_corpus(cfg)
    cfg.out.mkdir(parents=True, exist_ok=True)
    write_json(cfg.out / "config.json", cfg.to_dict())
    model = None
    if PREDICTOR in cfg.engine_ids:
        model = train_ngram([e.fixed_source for e in corpus], order=cfg.ngram_order)
        save_model(model, cfg.out / MODEL_FILE)
        model = load_model(cfg.out / MODEL_FILE)
    summary = []
    for entry in corpus:
        mutants = generate_for_entry(cfg, entry, model)
        counts = {e: sum(m.engine == e for m in mutants) for e in cfg.engine_ids}
        write_json(_subject_dir(cfg, entry.name) / "mutants.json", {
            "subject": entry.name,
            "engines": cfg.engine_ids,
            "counts": counts,
            "mutants": [m.to_dict(entry.fixed_source) for m in mutants],
        })
        summary += [(entry.name, e, counts[e]) for e in cfg.engine_ids]
        _log(f"generate {entry.name}: " + ", ".join(f"{e} {n}" for e, n in counts.items()))
    totals = defaultdict(int)
    for _, e, n in summary:
        totals[e] += n
    summary += [("TOTAL", e, totals[e]) for e in cfg.engine_ids]
    write_csv(cfg.out / "generation_summary.csv", "generation_summary",
              ("subject", "engine", "mutants"), summary)


def cmd_execute(cfg: RunConfig) -> None:
    corpus = _load_corpus(cfg)
    for entry in corpus:
        mutants = _read_mutants(cfg, entry.name)
        fault = execute_reference(entry, cfg.step_limit)
        program = parse(entry.fixed_source, f"{entry.name}/fixed")
        matrix = execute_all(program, mutants, entry.tests, cfg.step_limit, cfg.workers,
                             subject=entry.name)
        directory = _subject_dir(cfg, entry.name)
        write_killmatrix(matrix, directory)
        write_json(directory / "fault.json", {k: v for k, v in fault.to_dict().items()
                                              if k != "format_version"})
        try:
            score = f"{mutation_score(matrix):.3f}"
        except ValueError:
            score = "n/a"
        _log(f"execute {entry.name}: {len(matrix)} mutants, "
             f"{len(matrix.ids(KILLED))} killed, {len(matrix.ids(INVALID))} invalid, score {score}")


def _record_row(r: SimilarityRecord) -> tuple:
    return (r.mutant_id, r.fault_id, r.granularity, r.metric_name, r.syntactic, r.semantic,
            r.engine, r.function, r.span[0], r.span[1], r.at_patch, r.exact_match)


def _resemblance_for(records: list[SimilarityRecord]):
    if not records:
        return None
    try:
        partition = quartiles(records)
    except TooFewMutants:
        partition = None
    return resemblance(records, partition)


def _location_summary(pairs: list[tuple[float, float]]) -> dict:
    if not pairs:
        return {"pairs": 0, "mean_delta_syntactic": None, "mean_delta_semantic": None}
    return {"pairs": len(pairs),
            "mean_delta_syntactic": statistics.fmean(p[0] for p in pairs),
            "mean_delta_semantic": statistics.fmean(p[1] for p in pairs)}


def analyze_subject(cfg: RunConfig, subject: str):
    mutants = _read_mutants(cfg, subject)
    matrix = _read_killmatrix(cfg, subject)
    fault = _read_fault(cfg, subject)
    table: dict[tuple[str, str], list[SimilarityRecord]] = {}
    for metric in SYNTACTIC_METRICS:
        for granularity in GRANULARITIES:
            table[(metric, granularity)] = similarity_table(matrix, fault, mutants, metric, granularity)
    main = table[(cfg.syntactic_metric, cfg.granularity)]
    engines = sorted({m.engine for m in mutants})
    per_tool = {"ALL": _resemblance_for(main)}
    for e in engines:
        per_tool[e] = _resemblance_for([r for r in main if r.engine == e])
    try:
        corr = correlations(main).to_dict()
    except TooFewMutants:
        corr = None
    matrices = _by_engine(mutants, matrix)
    subsumption_info = {}
    for name, m in [("ALL", matrix)] + sorted(matrices.items()):
        try:
            graph = subsumption(m)
            subsumption_info[name] = {"killed": len(m.ids(KILLED)), "groups": len(graph.groups),
                                      "subsuming_groups": len(graph.subsuming)}
        except NoKilledMutants:
            subsumption_info[name] = {"killed": 0, "groups": 0, "subsuming_groups": 0}
    try:
        cross = [{"base": a, "added": b, "contribution": v}
                 for (a, b), v in sorted(cross_tool_subsumption(matrices).items())]
    except NoKilledMutants:
        cross = []
    deltas = location_sensitivity(table[(cfg.syntactic_metric, "FILE")])
    scores = {}
    for name, m in [("ALL", matrix)] + sorted(matrices.items()):
        try:
            scores[name] = mutation_score(m)
        except ValueError:
            scores[name] = None
    analysis = {
        "fault_id": fault.fault_id,
        "metric": cfg.syntactic_metric,
        "granularity": cfg.granularity,
        "failing_tests": sorted(fault.failing_tests),
        "changed_functions": sorted(fault.changed_functions),
        "mutation_score": scores,
        "resemblance": {k: (v.to_dict() if v else None) for k, v in per_tool.items()},
        "correlations": corr,
        "subsumption": subsumption_info,
        "cross_tool_subsumption": cross,
        "location_sensitivity": {"patch": _location_summary(deltas.patch),
                                 "other": _location_summary(deltas.other)},
    }
    return table, per_tool, analysis


def cmd_analyze(cfg: RunConfig) -> None:
    subjects = _subjects(cfg, "fault.json")
    sim_rows, corr_rows = [], []
    per_tool_all: dict[str, list] = defaultdict(list)
    pooled: list[SimilarityRecord] = []
    for subject in subjects:
        table, per_tool, analysis = analyze_subject(cfg, subject)
        for (metric, granularity), records in table.items():
            sim_rows += [_record_row(r) for r in records]
        for tool, res in per_tool.items():
            if res is not None:
                per_tool_all[tool].append(res)
        write_json(_subject_dir(cfg, subject) / "analysis.json", analysis)
        corr = analysis["correlations"]
        if corr:
            corr_rows.append((subject, cfg.syntactic_metric, cfg.granularity, corr["n"],
                              corr["kendall_tau_a"], corr["tau_p"], corr["pearson_r"], corr["r_p"]))
        pooled += table[(cfg.syntactic_metric, cfg.granularity)]
        _log(f"analyze {subject}: {len(table[(cfg.syntactic_metric, cfg.granularity)])} records")
    if len(pooled) >= 3:
        c = correlations(pooled)
        corr_rows.append(("ALL", cfg.syntactic_metric, cfg.granularity, c.n, c.kendall_tau_a,
                          c.tau_p, c.pearson_r, c.r_p))
    write_csv(cfg.out / "similarity.csv", "similarity", SIMILARITY_COLUMNS, sim_rows)
    summary_rows = []
    for tool in ["ALL"] + sorted(t for t in per_tool_all if t != "ALL"):
        s = summarize_resemblance(per_tool_all[tool])
        summary_rows.append((tool, cfg.syntactic_metric, cfg.granularity, s.faults, s.resembled_pct,
                             s.exact_match_pct, *s.quartile_pct, s.mean_ratio, *s.quartile_mean_ratio))
    write_csv(cfg.out / "analysis_summary.csv", "analysis_summary",
              ("tool", "metric", "granularity", "faults", "total_pct", "exact_match_pct",
               "q1_pct", "q2_pct", "q3_pct", "q4_pct", "mean_ratio",
               "q1_mean_ratio", "q2_mean_ratio", "q3_mean_ratio", "q4_mean_ratio"),
              summary_rows)
    write_csv(cfg.out / "correlations.csv", "correlations",
              ("scope", "metric", "granularity", "n", "kendall_tau_a", "tau_p", "pearson_r", "r_p"),
              corr_rows)


def cmd_simulate(cfg: RunConfig) -> None:
    subjects = _subjects(cfg, "fault.json")
    per_subject, faults = {}, {}
    for subject in subjects:
        mutants = _read_mutants(cfg, subject)
        per_subject[subject] = _by_engine(mutants, _read_killmatrix(cfg, subject))
        faults[subject] = _read_fault(cfg, subject)
    curves = []
    for subject in subjects:
        sim_cfg = SimulationConfig(cfg.repetitions, derive_seed(cfg.seed, "simulate", subject))
        for baseline in sorted(per_subject[subject]):
            if killable(per_subject[subject][baseline]):
                curves.append(cost_effectiveness(per_subject[subject], faults[subject], baseline, sim_cfg))
    rows, effects = summarize_curves(curves) if curves else ([], [])
    write_csv(cfg.out / "simulation.csv", "simulation",
              ("baseline", "checkpoint_pct", "tool", "mean_killed_fraction", "mean_fault_detection"),
              [(r.baseline, r.checkpoint_pct, r.tool, r.mean_killed_fraction, r.mean_fault_detection)
               for r in rows])
    write_csv(cfg.out / "a12.csv", "a12", ("baseline", "tool", "checkpoint_pct", "a12"),
              [(e.baseline, e.tool, e.checkpoint_pct, e.a12) for e in effects])
    comparison = objective_comparison(per_subject, faults)
    grid = comparison.score_summary()
    detection = comparison.detection_rate()
    write_csv(cfg.out / "objective.csv", "objective",
              ("suite_tool", "target_tool", "mean_score", "median_score", "subjects",
               "suite_fault_detection_rate"),
              [(a, b, mean, median, n, detection[a]) for (a, b), (mean, median, n) in sorted(grid.items())])
    _log(f"simulate: {len(curves)} curves over {len(subjects)} subjects")


def cmd_report(cfg: RunConfig) -> None:
    subjects = _subjects(cfg, "analysis.json")
    similarity = read_csv(cfg.out / "similarity.csv", "similarity")
    simulation = read_csv(cfg.out / "simulation.csv", "simulation")
    chosen = [r for r in similarity
              if r["granularity"] == cfg.granularity and r["metric"] == cfg.syntactic_metric]
    plots = cfg.out / "plots"
    write_csv(plots / "scatter.csv", "plot_scatter",
              ("fault_id", "engine", "mutant_id", "granularity", "metric", "syntactic", "semantic"),
              [(r["fault_id"], r["engine"], r["mutant_id"], r["granularity"], r["metric"],
                r["syntactic"], r["semantic"]) for r in chosen])
    box_rows = []
    by_fault: dict[tuple[str, str], list[dict]] = defaultdict(list)
    for r in chosen:
        by_fault[(r["fault_id"], "ALL")].append(r)
        by_fault[(r["fault_id"], r["engine"])].append(r)
    for (fault_id, engine), rows in sorted(by_fault.items()):
        records = [SimilarityRecord(r["mutant_id"], fault_id, float(r["syntactic"]),
                                    float(r["semantic"]), r["metric"]) for r in rows]
        try:
            partition = quartiles(records)
        except TooFewMutants:
            continue
        sem = {r.mutant_id: r for r in records}
        for q, ids in enumerate(partition.quartiles, start=1):
            box_rows += [(fault_id, engine, f"Q{q}", mid, sem[mid].syntactic, sem[mid].semantic)
                         for mid in ids]
    write_csv(plots / "quartiles.csv", "plot_quartiles",
              ("fault_id", "engine", "quartile", "mutant_id", "syntactic", "semantic"), box_rows)
    sub_rows = []
    for subject in subjects:
        analysis = read_json(_subject_dir(cfg, subject) / "analysis.json")
        sub_rows += [(subject, c["base"], c["added"], c["contribution"])
                     for c in analysis["cross_tool_subsumption"]]
    write_csv(plots / "subsumption.csv", "plot_subsumption",
              ("fault_id", "base_tool", "added_tool", "contribution"), sub_rows)
    write_csv(plots / "cost_curves.csv", "plot_cost_curves",
              ("baseline", "checkpoint_pct", "tool", "mean_killed_fraction", "mean_fault_detection"),
              [(r["baseline"], r["checkpoint_pct"], r["tool"], r["mean_killed_fraction"],
                r["mean_fault_detection"]) for r in simulation])
    loc_rows = []
    file_rows = [r for r in similarity if r["granularity"] == "FILE" and r["metric"] == cfg.syntactic_metric]
    records = [SimilarityRecord(r["mutant_id"], r["fault_id"], float(r["syntactic"]), float(r["semantic"]),
                                r["metric"], r["granularity"], r["engine"], r["function"],
                                (int(r["span_start"]), int(r["span_end"])), r["at_patch"] == "true")
               for r in file_rows]
    for fault_id in sorted({r.fault_id for r in records}):
        deltas = location_sensitivity([r for r in records if r.fault_id == fault_id])
        loc_rows += [(fault_id, "patch", a, b) for a, b in deltas.patch]
        loc_rows += [(fault_id, "other", a, b) for a, b in deltas.other]
    write_csv(plots / "location_deltas.csv", "plot_location_deltas",
              ("fault_id", "location", "delta_syntactic", "delta_semantic"), loc_rows)
    summary = read_csv(cfg.out / "analysis_summary.csv", "analysis_summary")
    for row in summary:
        print(f"{row['tool']:<10} faults {row['faults']:>3}  resembled {float(row['total_pct']):6.2f}%  "
              f"exact {float(row['exact_match_pct']):6.2f}%  "
              + " ".join(f"Q{i} {float(row[f'q{i}_pct']):6.2f}%" for i in range(1, 5)))
    print("note: the grammar engine's operator catalog approximates PiTest's default operators")


STAGE_FUNCS = {"generate": cmd_generate, "execute": cmd_execute, "analyze": cmd_analyze,
               "simulate": cmd_simulate, "report": cmd_report}


def cmd_all(cfg: RunConfig) -> None:
    for stage in STAGES:
        started = time.perf_counter()
        STAGE_FUNCS[stage](cfg)
        _log(f"{stage} done in {time.perf_counter() - started:.2f}s")


# -- argument handling ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="faultseed", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig keys; flags override it")
    common.add_argument("--corpus", dest="corpus_path", help="corpus directory")
    common.add_argument("--engines", help="comma-separated subset of grammar,pattern,predictor")
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--out", dest="out_dir", help="output directory")
    common.add_argument("--metric", dest="syntactic_metric", help="BLEU, COSINE or JACCARD")
    common.add_argument("--granularity", help="FILE, FUNCTION or PATCH")
    common.add_argument("--policy", dest="predictor_policy", help="ALL or ONE_PER_FUNCTION")
    common.add_argument("--k", type=int, help="predictions per masked token")
    common.add_argument("--cap", type=int, help="pattern-engine mutant cap")
    common.add_argument("--step-limit", dest="step_limit", type=int)
    common.add_argument("--repetitions", type=int, help="simulation repetitions")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in STAGES + ("all",):
        sub.add_parser(name, parents=[common])
    return parser


OVERRIDES = ("corpus_path", "engines", "seed", "workers", "out_dir", "syntactic_metric",
             "granularity", "predictor_policy", "k", "cap", "step_limit", "repetitions")


def resolve_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    for key in OVERRIDES:
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    try:
        return RunConfig.from_dict(data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG
    try:
        cfg = resolve_config(args)
        if args.command == "all":
            cmd_all(cfg)
        else:
            STAGE_FUNCS[args.command](cfg)
    except ConfigError as exc:
        _log(f"config error: {exc}")
        return EXIT_CONFIG
    except CorpusError as exc:
        _log(f"corpus error: {exc}")
        return EXIT_CORPUS
    except MissingInput as exc:
        _log(f"missing input: {exc} (run the earlier stages first)")
        return EXIT_MISSING
    except Exception:  # noqa: BLE001
        traceback.print_exc()
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
