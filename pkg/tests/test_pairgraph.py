import networkx as nx
import pytest

from cplab.model.matching import decode_balanced
from cplab.model.pairgraph import TOP
from cplab.model.pairgraph import CatalanPairGraph
from cplab.model.pairgraph import DisjointSet
from cplab.model.pairgraph import GraphStats
from cplab.model.pairgraph import arc_span_counts
from cplab.model.pairgraph import build_graph
from cplab.model.pairgraph import components
from cplab.model.pairgraph import degree_histogram
from cplab.model.pairgraph import isolated_stats
from cplab.model.sampler import ColoredRepresentative
from cplab.model.sampler import FixedRed
from cplab.model.utils import ValidationError

from conftest import WORKED_EDGES
from conftest import check_graph_invariants
from conftest import labelled_edges
from conftest import random_reps
from conftest import to_networkx


def one_color(word):
    return ColoredRepresentative.from_parts("R" * len(word), decode_balanced(word), decode_balanced(""))


# worked example


def test_worked_example_edges(worked_graph):
    g = worked_graph
    assert g.n == 9
    assert g.edge_count == 7
    assert labelled_edges(g) == WORKED_EDGES
    assert g.labels() == ["u1", "u2", "u3", "u4", "u5", "v1", "v2", "v3", "v4"]


def test_worked_example_named_edge(worked_graph):
    u4, v2 = worked_graph.vertex_of_arc(10, 16), worked_graph.vertex_of_arc(6, 12)
    assert worked_graph.labels()[u4] == "u4" and worked_graph.labels()[v2] == "v2"
    assert worked_graph.has_edge(u4, v2) and worked_graph.has_edge(v2, u4)
    with pytest.raises(ValidationError):
        worked_graph.vertex_of_arc(6, 10)


def test_worked_example_statistics(worked_graph):
    assert components(worked_graph) == (6, 2, 1)
    assert isolated_stats(worked_graph) == (1, {1: 1})
    assert degree_histogram(worked_graph) == {0: 1, 1: 4, 2: 2, 3: 2}
    stats = GraphStats.of(worked_graph)
    assert stats.edge_count == 7 and stats.isolated_count == 1 and stats.component_sizes == (6, 2, 1)


def test_worked_example_spans(worked_graph):
    assert arc_span_counts(worked_graph, 1, 2) == 4
    assert arc_span_counts(worked_graph, 1, 18) == 9
    assert arc_span_counts(worked_graph, 7, 17) == 0
    assert arc_span_counts(worked_graph, 6, 6) == 3
    with pytest.raises(ValidationError):
        arc_span_counts(worked_graph, 3, 2)


def test_sweep_matches_on_worked_example(worked_rep, worked_graph):
    assert build_graph(worked_rep, method="sweep") == worked_graph


def test_unknown_edge_method(worked_rep):
    with pytest.raises(ValidationError):
        build_graph(worked_rep, method="magic")


# small graphs


def test_one_side_only_has_no_edges():
    g = build_graph(one_color("((()))"))
    assert g.edge_count == 0
    assert isolated_stats(g) == (3, {1: 1, 2: 1, 3: 1})
    assert g.sides == (TOP, TOP, TOP)


def test_edgeless_and_single_edge():
    edgeless = build_graph(one_color("()()()()"))
    assert components(edgeless) == (1, 1, 1, 1)
    assert degree_histogram(edgeless) == {0: 4}

    crossing = build_graph(ColoredRepresentative.from_parts("RBRB", decode_balanced("()"), decode_balanced("()")))
    assert components(crossing) == (2,)
    assert degree_histogram(crossing) == {1: 2}
    assert isolated_stats(crossing) == (0, {})


def test_single_arc():
    g = build_graph(one_color("()"))
    assert isolated_stats(g) == (1, {1: 1})
    assert components(g) == (1,)


# random graphs


def test_sweep_agrees_with_quadratic():
    for rep in random_reps(1000, 300, seed=1):
        assert build_graph(rep, method="sweep") == build_graph(rep, method="quadratic")


def test_sweep_agrees_under_fixed_red():
    for rep in random_reps(50, 60, seed=2, model=FixedRed(1)):
        assert build_graph(rep, method="sweep") == build_graph(rep)


def test_structural_invariants():
    for rep in random_reps(300, 200, seed=3):
        g = build_graph(rep)
        check_graph_invariants(rep, g)
        for u, nbrs in enumerate(g.adjacency):
            assert u not in nbrs
            for v in nbrs:
                assert u in g.adjacency[v]
                assert g.sides[u] != g.sides[v]
                (a, b), (c, d) = g.arcs[u], g.arcs[v]
                assert a < c < b < d or c < a < d < b
        assert nx.is_bipartite(to_networkx(g))


def test_isolated_iff_inside_is_closed():
    for rep in random_reps(200, 100, seed=4):
        g = build_graph(rep)
        for v, (a, b) in enumerate(g.arcs):
            closed = all(a < rep.combined_partner[p - 1] < b for p in range(a + 1, b))
            assert closed == (g.degree(v) == 0)


def test_components_match_networkx():
    for rep in random_reps(100, 150, seed=5):
        g = build_graph(rep)
        expected = sorted((len(c) for c in nx.connected_components(to_networkx(g))), reverse=True)
        assert list(components(g)) == expected


def test_disjoint_set():
    ds = DisjointSet(6)
    ds.merge(0, 1)
    ds.merge(4, 5)
    ds.merge(1, 5)
    assert ds.find(0) == ds.find(4)
    assert sorted(len(group) for group in ds.groups().values()) == [1, 1, 4]


# serialization


def test_graph_json_round_trip(worked_graph, worked_rep):
    data = worked_graph.to_dict()
    assert data["n"] == 9
    assert [3, 6] in data["edges"]
    assert CatalanPairGraph.from_dict(data) == worked_graph
    assert CatalanPairGraph.from_dict(worked_rep.to_dict()) == worked_graph


def test_graph_json_rejects_bad_edges():
    with pytest.raises(ValidationError):
        CatalanPairGraph.from_dict({"n": 2, "edges": [[0, 2]]})
