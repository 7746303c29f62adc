from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from collections import deque
from dataclasses import dataclass

import numpy as np

from cplab.model.sampler import BLUE
from cplab.model.sampler import RED
from cplab.model.sampler import ColoredRepresentative
from cplab.model.utils import ValidationError


TOP, BOTTOM = "top", "bottom"

EDGE_METHODS = ("quadratic", "sweep")


@dataclass(frozen=True)
class CatalanPairGraph:
    """
    Interlacement graph of a representative. Top (red) vertices come first, then bottom (blue) ones,
    each side numbered by left endpoint, so vertex i is u_{i+1} or v_{i+1-s} in the usual labels.
    """

    n: int
    sides: tuple[str, ...]
    arcs: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adjacency[u]
        i = bisect_right(nbrs, v)
        return i > 0 and nbrs[i - 1] == v

    def labels(self) -> list[str]:
        s = self.sides.count(TOP)
        return [f"u{i + 1}" if side == TOP else f"v{i + 1 - s}" for i, side in enumerate(self.sides)]

    def vertex_of_arc(self, a: int, b: int) -> int:
        for v, arc in enumerate(self.arcs):
            if arc == (a, b):
                return v
        raise ValidationError(f"({a},{b}) is not an arc of this graph")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "sides": list(self.sides),
            "labels": self.labels(),
            "arcs": [list(arc) for arc in self.arcs],
            "edges": [list(edge) for edge in self.edges()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> CatalanPairGraph:
        if "colors" in data:
            return build_graph(ColoredRepresentative.from_dict(data))
        n = int(data["n"])
        adjacency = [set() for _ in range(n)]
        for u, v in data["edges"]:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"bad edge ({u},{v}) for n={n}")
            adjacency[u].add(v)
            adjacency[v].add(u)
        sides = tuple(data.get("sides") or [TOP] * n)
        arcs = tuple(tuple(arc) for arc in data.get("arcs") or [(0, 0)] * n)
        return cls(n=n, sides=sides, arcs=arcs, adjacency=tuple(tuple(sorted(a)) for a in adjacency))


def _vertices(rep: ColoredRepresentative):
    arcs = {TOP: [], BOTTOM: []}
    for a, b in enumerate(rep.combined_partner, start=1):
        if a < b:
            arcs[TOP if rep.colors[a - 1] == RED else BOTTOM].append((a, b))
    sides = [TOP] * len(arcs[TOP]) + [BOTTOM] * len(arcs[BOTTOM])
    return sides, arcs[TOP] + arcs[BOTTOM], len(arcs[TOP])


def _quadratic_edges(arcs, s):
    if s == 0 or s == len(arcs):
        return []
    ends = np.asarray(arcs, dtype=np.int64)
    at, bt = ends[:s, 0][:, None], ends[:s, 1][:, None]
    ab, bb = ends[s:, 0][None, :], ends[s:, 1][None, :]
    alternate = ((at < ab) & (ab < bt) & (bt < bb)) | ((ab < at) & (at < bb) & (bb < bt))
    us, vs = np.nonzero(alternate)
    return list(zip(us.tolist(), (vs + s).tolist()))


def _sweep_edges(rep, arcs):
    vertex = {a: v for v, (a, _) in enumerate(arcs)}
    side_of = {a: rep.colors[a - 1] for a, _ in arcs}
    open_lefts = {RED: [], BLUE: []}
    edges = []
    for point, other_end in enumerate(rep.combined_partner, start=1):
        if other_end > point:
            open_lefts[side_of[point]].append(point)
            continue
        a, color = other_end, side_of[other_end]
        # same-side arcs nest, so the closing arc is on top of its stack
        assert open_lefts[color].pop() == a
        opposite = open_lefts[BLUE if color == RED else RED]
        # open opposite arcs that started after a interlace with (a, point)
        for c in opposite[bisect_right(opposite, a) :]:
            edges.append((vertex[a], vertex[c]))
    return edges


def build_graph(rep: ColoredRepresentative, method: str = "quadratic") -> CatalanPairGraph:
    sides, arcs, s = _vertices(rep)
    if method == "quadratic":
        edges = _quadratic_edges(arcs, s)
    elif method == "sweep":
        edges = _sweep_edges(rep, arcs)
    else:
        raise ValidationError(f"unknown edge method {method!r}, expected one of {EDGE_METHODS}")

    adjacency = [[] for _ in arcs]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    return CatalanPairGraph(
        n=rep.n,
        sides=tuple(sides),
        arcs=tuple(arcs),
        adjacency=tuple(tuple(sorted(nbrs)) for nbrs in adjacency),
    )


# components


class DisjointSet:
    def __init__(self, size):
        self.parents = list(range(size))
        self.ranks = [0] * size

    def find(self, index):
        root = index
        while self.parents[root] != root:
            root = self.parents[root]
        # path compression
        while self.parents[index] != root:
            self.parents[index], index = root, self.parents[index]
        return root

    def merge(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if self.ranks[a] < self.ranks[b]:
            a, b = b, a
        self.parents[b] = a
        if self.ranks[a] == self.ranks[b]:
            self.ranks[a] += 1

    def groups(self) -> dict[int, list[int]]:
        out = {}
        for v in range(len(self.parents)):
            out.setdefault(self.find(v), []).append(v)
        return out


def component_groups(g: CatalanPairGraph) -> list[list[int]]:
    ds = DisjointSet(g.n)
    for u, v in g.edges():
        ds.merge(u, v)
    return sorted(ds.groups().values(), key=lambda c: (-len(c), c[0]))


def components(g: CatalanPairGraph) -> tuple[int, ...]:
    sizes = tuple(len(c) for c in component_groups(g))
    assert sum(sizes) == g.n
    return sizes


# per-graph statistics


def isolated_stats(g: CatalanPairGraph) -> tuple[int, dict[int, int]]:
    bins = Counter()
    for v, (a, b) in enumerate(g.arcs):
        if not g.adjacency[v]:
            bins[(b - a + 1) // 2] += 1
    return sum(bins.values()), dict(sorted(bins.items()))


def arc_span_counts(g: CatalanPairGraph, alpha: int, beta: int) -> int:
    if alpha > beta:
        raise ValidationError(f"span range needs alpha <= beta, got {alpha} > {beta}")
    if alpha < 1 or beta > 2 * g.n:
        raise ValidationError(f"span range must lie in 1..{2 * g.n}, got [{alpha}, {beta}]")
    return sum(1 for a, b in g.arcs if alpha <= b - a <= beta)


def degree_histogram(g: CatalanPairGraph) -> dict[int, int]:
    hist = Counter(len(nbrs) for nbrs in g.adjacency)
    assert sum(d * c for d, c in hist.items()) == 2 * g.edge_count
    return dict(sorted(hist.items()))


def has_odd_cycle(g: CatalanPairGraph) -> bool:
    """Generic BFS two-coloring, independent of the side labels."""
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return True
    return False


@dataclass(frozen=True)
class GraphStats:
    edge_count: int
    isolated_count: int
    isolated_by_halflength: dict[int, int]
    component_sizes: tuple[int, ...]
    degree_histogram: dict[int, int]

    @classmethod
    def of(cls, g: CatalanPairGraph) -> GraphStats:
        isolated, bins = isolated_stats(g)
        return cls(
            edge_count=g.edge_count,
            isolated_count=isolated,
            isolated_by_halflength=bins,
            component_sizes=components(g),
            degree_histogram=degree_histogram(g),
        )
