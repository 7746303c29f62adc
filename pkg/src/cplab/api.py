from __future__ import annotations

from cplab.eval.experiment import ExperimentResult
from cplab.eval.experiment import ExperimentSpec
from cplab.eval.experiment import parse_metrics
from cplab.eval.experiment import run_experiment
from cplab.eval.oracle import ExactExpectation
from cplab.eval.oracle import exact_model_expectations
from cplab.model.analysis import PatternGraph
from cplab.model.analysis import count_pattern
from cplab.model.catalan import GammaPartialSum
from cplab.model.catalan import gamma_bounds
from cplab.model.pairgraph import CatalanPairGraph
from cplab.model.pairgraph import GraphStats
from cplab.model.pairgraph import build_graph
from cplab.model.sampler import ColoredRepresentative
from cplab.model.sampler import RngStream
from cplab.model.sampler import parse_model
from cplab.model.sampler import sample_representative
from cplab.model.utils import default
from cplab.model.utils import load_config
from cplab.model.utils import parse_sizes
from cplab.model.utils import seed_from_env


class CatalanPairLab:
    """
    Config-backed entry point: every call falls back to the loaded TOML (bundled defaults overlaid
    with config_file), and the seed to CPLAB_SEED before that.
    """

    def __init__(self, config_file=None, seed=None, model=None, edge_method=None, quiet=True):
        self.config = load_config(config_file)
        self.seed = default(seed, seed_from_env(self.config["seed"]))
        self.model = parse_model(default(model, self.config["model"]))
        self.edge_method = default(edge_method, self.config["edge_method"])
        self.quiet = quiet

    def sample(self, n, trial=0) -> tuple[ColoredRepresentative, CatalanPairGraph]:
        rep = sample_representative(n, self.model, RngStream(self.seed, (n, trial)))
        return rep, build_graph(rep, method=self.edge_method)

    def stats(self, n, trial=0) -> GraphStats:
        return GraphStats.of(self.sample(n, trial)[1])

    def count(self, g: CatalanPairGraph, pattern="", induced=None) -> int:
        h = PatternGraph.parse(pattern or self.config["pattern"])
        return count_pattern(g, h, induced=default(induced, self.config["induced"]), cap=self.config["pattern_cap"])

    def experiment(self, n=None, trials=None, metrics=None, threads=None, out="", fmt=None) -> ExperimentResult:
        spec = ExperimentSpec(
            n_values=tuple(parse_sizes(default(n, self.config["n"]))),
            trials=int(default(trials, self.config["trials"])),
            model=self.model,
            seed=self.seed,
            metrics=tuple(
                parse_metrics(
                    default(metrics, self.config["metrics"]),
                    pattern=self.config["pattern"],
                    induced=self.config["induced"],
                    pattern_cap=self.config["pattern_cap"],
                )
            ),
            format=default(fmt, self.config["format"]),
            out=out,
            threads=int(default(threads, self.config["threads"])),
            edge_method=self.edge_method,
        )
        return run_experiment(spec, quiet=self.quiet)

    def gamma(self, M=None) -> GammaPartialSum:
        return gamma_bounds(default(M, self.config["gamma"]["M"]))

    def exact(self, n) -> ExactExpectation:
        return exact_model_expectations(n, self.model, cap=self.config["oracle"]["model_cap"], quiet=self.quiet)


if __name__ == "__main__":
    lab = CatalanPairLab(seed=0)

    _, g = lab.sample(200)
    print(GraphStats.of(g))
    print(lab.gamma(1000).as_floats())
