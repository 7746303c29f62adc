import networkx as nx
import numpy as np
import pytest
from scipy import stats

from cplab.model.matching import enumerate_matchings
from cplab.model.pairgraph import build_graph
from cplab.model.pairgraph import components
from cplab.model.pairgraph import degree_histogram
from cplab.model.pairgraph import has_odd_cycle
from cplab.model.pairgraph import isolated_stats
from cplab.model.sampler import FAIR
from cplab.model.sampler import ColoredRepresentative
from cplab.model.sampler import RngStream
from cplab.model.sampler import sample_representative
from cplab.model.sampler import sample_word


# nine arcs on 18 points: five red (top), four blue (bottom)
WORKED_PAIRS = [(1, 7), (2, 4), (3, 5), (6, 12), (8, 9), (10, 16), (11, 14), (13, 18), (15, 17)]
WORKED_COLORS = "RRBRBBRRRRRBBRBRBB"
WORKED_EDGES = {"u1v2", "u2v1", "u4v2", "u4v3", "u4v4", "u5v2", "u5v3"}


def labelled_edges(g):
    labels = g.labels()
    return {labels[u] + labels[v] for u, v in g.edges()}


def to_networkx(g):
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    return nxg


def random_reps(count, max_n, seed=0, model=FAIR):
    for trial in range(count):
        stream = RngStream(seed, (trial,))
        n = 1 + int(stream.generator().integers(0, max_n))
        yield sample_representative(n, model, RngStream(seed, (n, trial)))


def check_graph_invariants(rep, g):
    rep.check()
    assert all(g.sides[u] != g.sides[v] for u, v in g.edges())
    assert not has_odd_cycle(g)
    assert sum(components(g)) == g.n
    hist = degree_histogram(g)
    assert sum(hist.values()) == g.n
    assert sum(d * c for d, c in hist.items()) == 2 * g.edge_count
    isolated, bins = isolated_stats(g)
    assert sum(bins.values()) == isolated == hist.get(0, 0)


def matching_chi_square(k, draws, rng):
    index = {m.to_word(): i for i, m in enumerate(enumerate_matchings(k))}
    counts = np.zeros(len(index))
    for _ in range(draws):
        counts[index[sample_word(k, rng)]] += 1
    return stats.chisquare(counts).statistic


@pytest.fixture
def worked_rep():
    return ColoredRepresentative.from_pairs(WORKED_COLORS, WORKED_PAIRS)


@pytest.fixture
def worked_graph(worked_rep):
    return build_graph(worked_rep)
