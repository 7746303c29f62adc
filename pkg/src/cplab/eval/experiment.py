"""
Seeded Monte Carlo runs: sample CP_n representatives, build their graphs and collect per-trial metrics.

Trial t at size n always draws from the stream (seed, n, t), so output does not depend on the number
of worker processes or on which other sizes are in the same run.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path

from tqdm import tqdm

from cplab.eval.utils_eval import RunRecord
from cplab.eval.utils_eval import SummaryStats
from cplab.eval.utils_eval import dump_json
from cplab.eval.utils_eval import summarize
from cplab.eval.utils_eval import write_histogram_csv
from cplab.eval.utils_eval import write_mean_histogram_csv
from cplab.eval.utils_eval import write_records_csv
from cplab.eval.utils_eval import write_summary_csv
from cplab.model.analysis import HARD_PATTERN_CAP
from cplab.model.analysis import PATTERN_CAP
from cplab.model.analysis import PatternGraph
from cplab.model.analysis import count_component_patterns
from cplab.model.analysis import count_pattern
from cplab.model.analysis import scaling_exponent
from cplab.model.pairgraph import EDGE_METHODS
from cplab.model.pairgraph import CatalanPairGraph
from cplab.model.pairgraph import arc_span_counts
from cplab.model.pairgraph import build_graph
from cplab.model.pairgraph import components
from cplab.model.pairgraph import degree_histogram
from cplab.model.pairgraph import isolated_stats
from cplab.model.sampler import FAIR
from cplab.model.sampler import ColoringModel
from cplab.model.sampler import RngStream
from cplab.model.sampler import parse_model
from cplab.model.sampler import sample_representative
from cplab.model.utils import ValidationError
from cplab.model.utils import check_cap
from cplab.model.utils import log
from cplab.model.utils import parse_sizes


# metrics

PLAIN_METRICS = ("edges", "isolated", "isolated_by_m", "components", "degrees")
HISTOGRAM_METRICS = {"isolated_by_m": "m", "degrees": "degree"}

_TOKEN = re.compile(r"\s*([a-z_]+)(?:\[([^\]]*)\])?\s*(?:,|$)")


@dataclass(frozen=True)
class Metric:
    """
    One requested statistic. Text forms: edges, isolated, isolated_by_m, components, degrees,
    spans[a:b], pattern[1-2,2-3], induced_pattern[1-2,2-3], component_pattern[1-2].
    """

    kind: str
    alpha: int = 0
    beta: int = 0
    pattern: PatternGraph | None = None
    induced: bool = False
    cap: int = PATTERN_CAP

    @property
    def columns(self) -> list[str]:
        if self.kind == "edges":
            return ["edges"]
        if self.kind == "isolated":
            return ["isolated"]
        if self.kind == "components":
            return ["largest_component", "second_component", "component_count"]
        if self.kind == "spans":
            return [f"spans_{self.alpha}_{self.beta}"]
        if self.kind == "pattern":
            return [f"{'induced_' if self.induced else ''}pattern_{self.pattern.name}"]
        if self.kind == "component_pattern":
            return [f"component_pattern_{self.pattern.name}"]
        return []

    def evaluate(self, g: CatalanPairGraph, values: dict, histograms: dict):
        if self.kind == "edges":
            values["edges"] = g.edge_count
        elif self.kind == "isolated":
            values["isolated"] = isolated_stats(g)[0]
        elif self.kind == "isolated_by_m":
            histograms["isolated_by_m"] = isolated_stats(g)[1]
        elif self.kind == "components":
            sizes = components(g)
            values["largest_component"] = sizes[0]
            values["second_component"] = sizes[1] if len(sizes) > 1 else 0
            values["component_count"] = len(sizes)
        elif self.kind == "degrees":
            histograms["degrees"] = degree_histogram(g)
        elif self.kind == "spans":
            values[self.columns[0]] = arc_span_counts(g, self.alpha, self.beta)
        elif self.kind == "pattern":
            values[self.columns[0]] = count_pattern(g, self.pattern, induced=self.induced, cap=self.cap)
        elif self.kind == "component_pattern":
            values[self.columns[0]] = count_component_patterns(g, self.pattern, cap=self.cap)


def parse_metrics(items, pattern: str = "", induced: bool = False, pattern_cap: int = PATTERN_CAP) -> list[Metric]:
    """
    items is a comma-separated string or a list of such strings. "all" expands to the graph-level
    metrics; a bare "pattern" uses the given pattern and induced flag.
    """
    if isinstance(items, str):
        items = [items]
    metrics = []
    for item in items:
        item = item.strip()
        pos = 0
        while pos < len(item):
            match = _TOKEN.match(item, pos)
            if not match or match.end() == pos:
                raise ValidationError(f"cannot parse metrics at {item[pos:]!r}")
            pos = match.end()
            metrics.extend(_metric(match.group(1), match.group(2), pattern, induced, pattern_cap))

    unique = []
    for m in metrics:
        if m not in unique:
            unique.append(m)
    if not unique:
        raise ValidationError("no metrics requested")
    return unique


def _metric(name, arg, pattern, induced, pattern_cap) -> list[Metric]:
    if name == "all" and arg is None:
        return [Metric(kind) for kind in PLAIN_METRICS]
    if name in PLAIN_METRICS and arg is None:
        return [Metric(name)]
    if name == "spans" and arg:
        try:
            alpha, beta = (int(v) for v in arg.split(":"))
        except ValueError as e:
            raise ValidationError(f"spans needs [alpha:beta], got [{arg}]") from e
        if alpha > beta:
            raise ValidationError(f"span range needs alpha <= beta, got {alpha} > {beta}")
        return [Metric("spans", alpha=alpha, beta=beta)]
    if name in ("pattern", "induced_pattern", "component_pattern"):
        h = PatternGraph.parse(arg if arg is not None else pattern)
        check_cap("pattern vertex count", h.v, pattern_cap, HARD_PATTERN_CAP)
        if name == "component_pattern":
            return [Metric("component_pattern", pattern=h, cap=pattern_cap)]
        induced = induced if arg is None else name == "induced_pattern"
        return [Metric("pattern", pattern=h, induced=induced, cap=pattern_cap)]
    raise ValidationError(f"unknown metric {name}{'' if arg is None else f'[{arg}]'}")


# settings


@dataclass(frozen=True)
class ExperimentSpec:
    n_values: tuple[int, ...]
    trials: int
    model: ColoringModel = FAIR
    seed: int = 0
    metrics: tuple[Metric, ...] = (Metric("edges"), Metric("isolated"))
    format: str = "csv"
    out: str = ""
    threads: int = 1
    edge_method: str = "quadratic"

    def __post_init__(self):
        if not self.n_values or min(self.n_values) < 1:
            raise ValidationError(f"need a nonempty list of sizes >= 1, got {self.n_values}")
        if self.trials < 1:
            raise ValidationError(f"need trials >= 1, got {self.trials}")
        if self.seed < 0:
            raise ValidationError(f"seed must be nonnegative, got {self.seed}")
        if self.format not in ("csv", "json"):
            raise ValidationError(f"format must be csv or json, got {self.format!r}")
        if self.threads < 1:
            raise ValidationError(f"threads must be >= 1, got {self.threads}")
        if self.edge_method not in EDGE_METHODS:
            raise ValidationError(f"edge method must be one of {EDGE_METHODS}, got {self.edge_method!r}")
        for m in self.metrics:
            if m.kind == "spans" and not (1 <= m.alpha and m.beta <= 2 * min(self.n_values)):
                raise ValidationError(f"spans[{m.alpha}:{m.beta}] must lie in 1..{2 * min(self.n_values)}")

    @classmethod
    def from_config(cls, config: dict) -> ExperimentSpec:
        return cls(
            n_values=tuple(parse_sizes(config["n"])),
            trials=int(config["trials"]),
            model=parse_model(config["model"]),
            seed=int(config["seed"]),
            metrics=tuple(
                parse_metrics(
                    config["metrics"],
                    pattern=config.get("pattern", ""),
                    induced=bool(config.get("induced", False)),
                    pattern_cap=int(config.get("pattern_cap", PATTERN_CAP)),
                )
            ),
            format=config.get("format", "csv"),
            out=config.get("out", ""),
            threads=int(config.get("threads", 1)),
            edge_method=config.get("edge_method", "quadratic"),
        )

    @property
    def columns(self) -> list[str]:
        return [c for m in self.metrics for c in m.columns]

    def check_output(self):
        """CSV records have no histogram columns, so histogram metrics need sidecars beside an out path."""
        dropped = [m.kind for m in self.metrics if m.kind in HISTOGRAM_METRICS]
        if dropped and self.format == "csv" and not self.out:
            raise ValidationError(f"{', '.join(dropped)} need --out for their sidecar files, or --format json")

    def to_dict(self) -> dict:
        return {
            "n": list(self.n_values),
            "trials": self.trials,
            "model": str(self.model),
            "seed": self.seed,
            "metrics": self.columns + [m.kind for m in self.metrics if m.kind in HISTOGRAM_METRICS],
            "edge_method": self.edge_method,
        }


# runs


def run_trial(n: int, trial: int, seed: int, model, metrics, edge_method="quadratic") -> RunRecord:
    rep = sample_representative(n, model, RngStream(seed, (n, trial)))
    g = build_graph(rep, method=edge_method)
    values, histograms = {}, {}
    for m in metrics:
        m.evaluate(g, values, histograms)
    return RunRecord(n=n, trial=trial, seed=seed, values=values, histograms=histograms)


def _run_trial_job(job):
    return run_trial(*job)


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    records: dict[int, list[RunRecord]] = field(default_factory=dict)
    summaries: dict[int, SummaryStats] = field(default_factory=dict)

    @property
    def scaling(self) -> dict[str, float]:
        """Log-log growth exponent of every count column, once two or more sizes are in."""
        out = {}
        ns = sorted(self.summaries)
        if len(ns) < 2:
            return out
        for column in self.spec.columns:
            if not column.startswith(("pattern_", "induced_pattern_", "edges")):
                continue
            means = [self.summaries[n].metrics[column].mean for n in ns]
            if all(m > 0 for m in means):
                out[column] = scaling_exponent(ns, means)
        return out

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "records": [r.to_dict() for n in sorted(self.records) for r in self.records[n]],
            "summaries": [self.summaries[n].to_dict() for n in sorted(self.summaries)],
            "scaling": self.scaling,
        }


def run_experiment(spec: ExperimentSpec, quiet=False, on_records=None) -> ExperimentResult:
    """
    Runs every (n, trial) of spec. on_records(n, records) is called as soon as all trials of one
    size are in, records sorted by trial.
    """
    result = ExperimentResult(spec=spec)
    executor = ProcessPoolExecutor(max_workers=spec.threads) if spec.threads > 1 else None
    try:
        for n in spec.n_values:
            jobs = [(n, t, spec.seed, spec.model, spec.metrics, spec.edge_method) for t in range(spec.trials)]
            if executor is None:
                runs = map(_run_trial_job, jobs)
            else:
                runs = executor.map(_run_trial_job, jobs, chunksize=max(1, spec.trials // (4 * spec.threads)))
            records = list(tqdm(runs, total=spec.trials, desc=f"n={n}", disable=quiet, leave=False))
            records.sort(key=lambda r: r.trial)
            result.records[n] = records
            if spec.trials >= 2:
                summary = summarize(records)
                result.summaries[n] = summary
                log(_summary_line(summary), quiet=quiet)
            if on_records is not None:
                on_records(n, records)
    finally:
        if executor is not None:
            executor.shutdown()
    return result


def _summary_line(s: SummaryStats) -> str:
    parts = [f"n={s.n}", f"trials={s.trials}"]
    parts += [f"{name}={m.mean:.4g}±{m.stderr:.2g}" for name, m in s.metrics.items()]
    parts += [f"{name}={value:.4f}" for name, value in s.ratios.items()]
    return "  ".join(parts)


# output


def write_sidecars(directory: Path, n: int, records):
    present = {key for r in records for key in r.histograms}
    for key, value_name in HISTOGRAM_METRICS.items():
        if key not in present:
            continue
        with open(directory / f"{key}_{n}.csv", "w", newline="") as f:
            write_histogram_csv(f, records, key, value_name)
        with open(directory / f"{key}_mean_{n}.csv", "w", newline="") as f:
            write_mean_histogram_csv(f, records, key, value_name, n=n if key == "isolated_by_m" else None)


def write_result(result: ExperimentResult, stream=None):
    """
    csv: records to spec.out (or stream), summary beside it as <stem>_summary.csv, histogram sidecars
    in the same directory. json: one document with spec, records, summaries and scaling fits.
    """
    spec = result.spec
    spec.check_output()
    records = [r for n in sorted(result.records) for r in result.records[n]]
    summaries = [result.summaries[n] for n in sorted(result.summaries)]

    if not spec.out:
        if spec.format == "json":
            dump_json(stream, result.to_dict())
        else:
            write_records_csv(stream, records, spec.columns)
        return

    path = Path(spec.out)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if spec.format == "json":
            with open(path, "w") as f:
                dump_json(f, result.to_dict())
            return
        with open(path, "w", newline="") as f:
            write_records_csv(f, records, spec.columns)
        with open(path.with_name(f"{path.stem}_summary.csv"), "w", newline="") as f:
            write_summary_csv(f, summaries)
        for n in sorted(result.records):
            write_sidecars(path.parent, n, result.records[n])
    except OSError as e:
        raise OSError(f"cannot write experiment output to {path}: {e.strerror or e}") from e
