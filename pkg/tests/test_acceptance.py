"""Desk-scale checks of the limiting laws. Minutes each; run with `pytest -m slow`."""

from itertools import combinations
from itertools import product

import numpy as np
import pytest
from scipy import stats

from cplab.eval.experiment import ExperimentSpec
from cplab.eval.experiment import parse_metrics
from cplab.eval.experiment import run_experiment
from cplab.eval.oracle import exact_model_expectations
from cplab.eval.oracle import is_valid_quadruple_small
from cplab.model.analysis import Quadruple
from cplab.model.analysis import is_good_quadruple
from cplab.model.analysis import scaling_exponent
from cplab.model.catalan import catalan
from cplab.model.pairgraph import build_graph
from cplab.model.pairgraph import isolated_stats
from cplab.model.sampler import FAIR
from cplab.model.sampler import Biased
from cplab.model.sampler import FixedRed
from cplab.model.sampler import RngStream
from cplab.model.sampler import sample_representative
from cplab.model.utils import make_rng

from conftest import check_graph_invariants
from conftest import matching_chi_square


pytestmark = pytest.mark.slow


def run(n_values, trials, metrics, seed=7):
    spec = ExperimentSpec(
        n_values=tuple(n_values),
        trials=trials,
        seed=seed,
        metrics=tuple(parse_metrics(metrics)),
        threads=4,
        edge_method="sweep",
    )
    return run_experiment(spec, quiet=True)


@pytest.fixture(scope="module")
def edge_ratios():
    result = run([500, 1000, 2000, 3000], 100, "edges,isolated,components")
    return result.summaries


def test_isolated_fraction(edge_ratios):
    assert 0.292 <= edge_ratios[3000].ratios["isolated_per_n"] <= 0.312


def test_largest_component_fraction(edge_ratios):
    assert 0.50 <= edge_ratios[3000].ratios["largest_component_per_n"] <= 0.60


def test_edge_ratio_grows_slowly(edge_ratios):
    ratios = [edge_ratios[n].ratios["edges_per_n_log_n"] for n in (500, 1000, 2000, 3000)]
    assert 0.20 <= ratios[-1] <= 0.35
    assert all(a < b for a, b in zip(ratios, ratios[1:]))


def test_induced_path_scaling():
    ns = [250, 500, 1000, 2000]
    result = run(ns, 50, "induced_pattern[1-2,2-3]")
    means = [result.summaries[n].metrics["induced_pattern_1-2_2-3"].mean for n in ns]
    assert 1.25 <= scaling_exponent(ns, means) <= 1.75


@pytest.mark.parametrize("n", [2, 3, 4])
def test_small_n_monte_carlo(n):
    exact = exact_model_expectations(n, FAIR)
    trials = 1_000_000
    edges, isolated = np.zeros(trials), np.zeros(trials)
    for trial in range(trials):
        g = build_graph(sample_representative(n, FAIR, RngStream(11, (n, trial))), method="sweep")
        edges[trial], isolated[trial] = g.edge_count, isolated_stats(g)[0]
    for values, target in ((edges, exact.expected_edges), (isolated, exact.expected_isolated)):
        assert abs(values.mean() - float(target)) <= 4 * values.std(ddof=1) / np.sqrt(trials)


@pytest.mark.parametrize("model", [FAIR, Biased("1/3"), FixedRed(60)])
def test_invariants_at_scale(model):
    for trial in range(10_000):
        rep = sample_representative(200, model, RngStream(13, (200, trial)))
        check_graph_invariants(rep, build_graph(rep, method="sweep"))


def pairings(points):
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for i, p in enumerate(rest):
        for tail in pairings(rest[:i] + rest[i + 1 :]):
            yield [(first, p)] + tail


def good_quadruples(n, arcs):
    """Every good quadruple on 2n points with the given total number of arcs, split over both sides."""
    for points in combinations(range(1, 2 * n + 1), 2 * arcs):
        if any(b - a < 2 for a, b in zip(points, points[1:])):
            continue
        for pairs in pairings(points):
            for sides in product((True, False), repeat=arcs):
                top = [arc for arc, on_top in zip(pairs, sides) if on_top]
                bottom = [arc for arc, on_top in zip(pairs, sides) if not on_top]
                q = Quadruple.from_arcs(n, top, bottom)
                if is_good_quadruple(q):
                    yield q


@pytest.mark.parametrize("n, arcs", [(5, 2), (6, 2), (6, 3)])
def test_good_quadruples_are_valid(n, arcs):
    quadruples = list(good_quadruples(n, arcs))
    assert quadruples
    for q in quadruples:
        assert is_valid_quadruple_small(q), q


def test_sampler_uniformity_repeated():
    critical = stats.chi2.ppf(0.999, df=catalan(5) - 1)
    passes = sum(matching_chi_square(5, 5000 * catalan(5), make_rng(100 + i)) < critical for i in range(20))
    assert passes >= 19
