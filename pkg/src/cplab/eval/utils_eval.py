from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from dataclasses import field
from functools import lru_cache

import numpy as np

from cplab.model.analysis import degree_loglog_slope
from cplab.model.catalan import gamma_bounds
from cplab.model.catalan import gamma_term
from cplab.model.utils import ValidationError


LARGEST_COMPONENT_REFERENCE = 0.55


# records


@dataclass(frozen=True)
class RunRecord:
    """Raw statistics of one sampled graph; histograms map a value (degree, half-length) to a count."""

    n: int
    trial: int
    seed: int
    values: dict[str, float] = field(default_factory=dict)
    histograms: dict[str, dict[int, int]] = field(default_factory=dict)

    def row(self, columns) -> list:
        return [self.n, self.trial, self.seed] + [self.values[c] for c in columns]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trial": self.trial,
            "seed": self.seed,
            **self.values,
            **{name: {str(k): v for k, v in hist.items()} for name, hist in self.histograms.items()},
        }


# summaries


@dataclass(frozen=True)
class MetricSummary:
    mean: float
    sd: float
    stderr: float
    trials: int


@dataclass(frozen=True)
class SummaryStats:
    n: int
    trials: int
    metrics: dict[str, MetricSummary]
    ratios: dict[str, float]
    references: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "metrics": {name: vars(m) for name, m in self.metrics.items()},
            "ratios": self.ratios,
            "references": self.references,
        }


@lru_cache(maxsize=None)
def gamma_bracket(M: int = 10_000) -> tuple[float, float]:
    return gamma_bounds(M).as_floats()


def summarize(records) -> SummaryStats:
    records = list(records)
    if len(records) < 2:
        raise ValidationError(f"summarize needs at least two records, got {len(records)}")
    sizes = {r.n for r in records}
    if len(sizes) != 1:
        raise ValidationError(f"records mix several n: {sorted(sizes)}")
    n = sizes.pop()

    metrics = {}
    for name in records[0].values:
        column = np.asarray([r.values[name] for r in records], dtype=float)
        sd = float(column.std(ddof=1))
        metrics[name] = MetricSummary(
            mean=float(column.mean()), sd=sd, stderr=sd / math.sqrt(len(column)), trials=len(column)
        )

    ratios = {}
    if "edges" in metrics and n > 1:
        ratios["edges_per_n_log_n"] = metrics["edges"].mean / (n * math.log(n))
    if "isolated" in metrics:
        ratios["isolated_per_n"] = metrics["isolated"].mean / n
    if "largest_component" in metrics:
        ratios["largest_component_per_n"] = metrics["largest_component"].mean / n
        ratios["second_component_per_n"] = metrics["second_component"].mean / n
    if any("degrees" in r.histograms for r in records):
        slope = degree_loglog_slope(mean_histogram(records, "degrees"))
        if not math.isnan(slope):
            ratios["degree_loglog_slope"] = slope

    lower, upper = gamma_bracket()
    references = {
        "edges_per_n_log_n": 1 / math.pi,
        "isolated_per_n_lower": lower,
        "isolated_per_n_upper": upper,
        "largest_component_per_n": LARGEST_COMPONENT_REFERENCE,
    }
    return SummaryStats(n=n, trials=len(records), metrics=metrics, ratios=ratios, references=references)


def mean_histogram(records, key: str) -> dict[int, float]:
    """Per-value mean count over trials; values absent from a trial count as zero there."""
    records = list(records)
    if not records:
        return {}
    totals = {}
    for r in records:
        for value, count in r.histograms.get(key, {}).items():
            totals[value] = totals.get(value, 0) + count
    return {value: totals[value] / len(records) for value in sorted(totals)}


# writers


def write_records_csv(f, records, columns):
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(["n", "trial", "seed", *columns])
    for r in records:
        writer.writerow(r.row(columns))


def write_summary_csv(f, summaries):
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(["n", "metric", "mean", "sd", "stderr", "trials"])
    for s in summaries:
        for name, m in s.metrics.items():
            writer.writerow([s.n, name, m.mean, m.sd, m.stderr, m.trials])
        for name, value in s.ratios.items():
            writer.writerow([s.n, name, value, "", "", s.trials])


def write_histogram_csv(f, records, key, value_name):
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(["trial", value_name, "count"])
    for r in records:
        for value, count in sorted(r.histograms.get(key, {}).items()):
            writer.writerow([r.trial, value, count])


def write_mean_histogram_csv(f, records, key, value_name, n=None):
    """With n given, half-length bins also carry their gamma_m * n reference."""
    writer = csv.writer(f, lineterminator="\n")
    with_reference = n is not None
    writer.writerow([value_name, "count"] + (["reference"] if with_reference else []))
    for value, mean in mean_histogram(records, key).items():
        row = [value, mean]
        if with_reference:
            row.append(float(gamma_term(value)) * n)
        writer.writerow(row)


def dump_json(f, payload):
    json.dump(payload, f, indent=2)
    f.write("\n")
