"""
Subgraph counting on Catalan-pair graphs, two-sided arc constraints (quadruples) and
log-log fits used to read growth rates off experiment means.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

import numpy as np

from cplab.model.catalan import innermost_regions
from cplab.model.pairgraph import CatalanPairGraph
from cplab.model.pairgraph import component_groups
from cplab.model.utils import ValidationError
from cplab.model.utils import check_cap
from cplab.model.utils import parse_point_pairs


PATTERN_CAP = 8
HARD_PATTERN_CAP = 10


# patterns


@dataclass(frozen=True)
class PatternGraph:
    v: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.v < 1:
            raise ValidationError(f"pattern needs at least one vertex, got v={self.v}")
        for a, b in self.edges:
            if a == b or not (0 <= a < self.v and 0 <= b < self.v):
                raise ValidationError(f"pattern edge ({a + 1},{b + 1}) invalid for v={self.v}")

    @classmethod
    def parse(cls, text: str, v: int | None = None) -> PatternGraph:
        """Edge list over vertices 1..v, e.g. "1-2,2-3" is the path on three vertices."""
        pairs = parse_point_pairs(text)
        if not pairs and v is None:
            raise ValidationError("empty pattern, give at least one edge")
        v = v or max(max(p) for p in pairs)
        return cls(v=v, edges=frozenset((min(a, b) - 1, max(a, b) - 1) for a, b in pairs))

    @property
    def name(self) -> str:
        return "_".join(f"{a + 1}-{b + 1}" for a, b in sorted(self.edges))

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nbrs = [set() for _ in range(self.v)]
        for a, b in self.edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def automorphism_count(self) -> int:
        count = 0
        for perm in permutations(range(self.v)):
            if all((min(perm[a], perm[b]), max(perm[a], perm[b])) in self.edges for a, b in self.edges):
                count += 1
        return count

    @cached_property
    def connected(self) -> bool:
        return len(self._reach(0)) == self.v

    @cached_property
    def bipartite(self) -> bool:
        side = {}
        for root in range(self.v):
            if root in side:
                continue
            side[root] = 0
            queue = deque([root])
            while queue:
                a = queue.popleft()
                for b in self.neighbors[a]:
                    if b not in side:
                        side[b] = 1 - side[a]
                        queue.append(b)
                    elif side[b] == side[a]:
                        return False
        return True

    def _reach(self, root):
        seen, queue = {root}, deque([root])
        while queue:
            a = queue.popleft()
            for b in self.neighbors[a] - seen:
                seen.add(b)
                queue.append(b)
        return seen

    def search_order(self) -> list[int]:
        """BFS order per component, each started from its highest-degree vertex."""
        order, placed = [], set()
        while len(order) < self.v:
            root = max((a for a in range(self.v) if a not in placed), key=lambda a: len(self.neighbors[a]))
            queue = deque([root])
            placed.add(root)
            while queue:
                a = queue.popleft()
                order.append(a)
                for b in sorted(self.neighbors[a] - placed):
                    placed.add(b)
                    queue.append(b)
        return order


def _embeddings(adj: list[set[int]], hosts, h: PatternGraph, induced: bool, limit=None) -> int:
    """Injective maps of h into the host vertices preserving adjacency (and non-adjacency if induced)."""
    order = h.search_order()
    position = {a: i for i, a in enumerate(order)}
    earlier = [[b for b in h.neighbors[a] if position[b] < i] for i, a in enumerate(order)]
    non_earlier = [[b for b in order[:i] if b not in h.neighbors[a]] for i, a in enumerate(order)]
    image = {}
    used = set()
    count = 0

    def extend(i):
        nonlocal count
        if i == len(order):
            count += 1
            return limit is not None and count >= limit
        a = order[i]
        candidates = adj[image[earlier[i][0]]] if earlier[i] else hosts
        for c in candidates:
            if c in used:
                continue
            if any(image[b] not in adj[c] for b in earlier[i]):
                continue
            if induced and any(image[b] in adj[c] for b in non_earlier[i]):
                continue
            image[a] = c
            used.add(c)
            done = extend(i + 1)
            used.discard(c)
            del image[a]
            if done:
                return True
        return False

    extend(0)
    return count


def count_pattern(g: CatalanPairGraph, h: PatternGraph, induced: bool = False, cap: int = PATTERN_CAP) -> int:
    """N_H(g), or N*_H(g) when induced: unordered copies, i.e. embeddings over |Aut(h)|."""
    check_cap("pattern vertex count", h.v, cap, HARD_PATTERN_CAP)
    if not h.bipartite:
        return 0
    adj = [set(nbrs) for nbrs in g.adjacency]
    embeddings = _embeddings(adj, range(g.n), h, induced)
    copies, rest = divmod(embeddings, h.automorphism_count)
    assert rest == 0, f"{embeddings} embeddings not divisible by |Aut| = {h.automorphism_count}"
    return copies


def count_component_patterns(g: CatalanPairGraph, h: PatternGraph, cap: int = PATTERN_CAP) -> int:
    """Connected components of g isomorphic to h."""
    check_cap("pattern vertex count", h.v, cap, HARD_PATTERN_CAP)
    if not h.connected:
        raise ValidationError(f"component patterns must be connected, got {h.name}")
    adj = [set(nbrs) for nbrs in g.adjacency]
    count = 0
    for group in component_groups(g):
        if len(group) != h.v:
            continue
        if sum(len(adj[u]) for u in group) != 2 * len(h.edges):
            continue
        if _embeddings(adj, group, h, induced=True, limit=1):
            count += 1
    return count


# quadruples


@dataclass(frozen=True)
class Quadruple:
    """Top arcs (x_i, x_i + k_i) and bottom arcs (y_j, y_j + l_j) on 2n points; k and l are spans."""

    n: int
    x: tuple[int, ...] = ()
    k: tuple[int, ...] = ()
    y: tuple[int, ...] = ()
    l: tuple[int, ...] = ()  # noqa: E741

    def __post_init__(self):
        for name, starts, spans in (("x", self.x, self.k), ("y", self.y, self.l)):
            if len(starts) != len(spans):
                raise ValidationError(f"{name} and its spans differ in size")
            if any(a >= b for a, b in zip(starts, starts[1:])):
                raise ValidationError(f"{name} must be strictly increasing, got {starts}")
            if any(d < 1 for d in spans):
                raise ValidationError(f"spans must be positive, got {spans}")

    @classmethod
    def from_arcs(cls, n: int, top=(), bottom=()) -> Quadruple:
        top, bottom = sorted(tuple(sorted(a)) for a in top), sorted(tuple(sorted(a)) for a in bottom)
        return cls(
            n=n,
            x=tuple(a for a, _ in top),
            k=tuple(b - a for a, b in top),
            y=tuple(a for a, _ in bottom),
            l=tuple(b - a for a, b in bottom),
        )

    @property
    def top_arcs(self) -> list[tuple[int, int]]:
        return [(a, a + d) for a, d in zip(self.x, self.k)]

    @property
    def bottom_arcs(self) -> list[tuple[int, int]]:
        return [(a, a + d) for a, d in zip(self.y, self.l)]

    @property
    def endpoints(self) -> list[int]:
        return [p for arc in self.top_arcs + self.bottom_arcs for p in arc]

    @property
    def in_range(self) -> bool:
        return all(1 <= a < b <= 2 * self.n for a, b in self.top_arcs + self.bottom_arcs)


@dataclass(frozen=True)
class QuadrupleProfile:
    f: tuple[int, ...]
    g: tuple[int, ...]


def quadruple_profile(q: Quadruple) -> QuadrupleProfile:
    """
    f_0 counts points outside every top interval, f_i the points whose innermost top interval is i;
    g likewise for the bottom. Endpoints of either side are never counted.
    """
    if not q.in_range:
        raise ValidationError(f"arcs of {q} leave 1..{2 * q.n}")
    endpoints = q.endpoints
    f = innermost_regions(q.n, q.top_arcs, skip=endpoints)
    g = innermost_regions(q.n, q.bottom_arcs, skip=endpoints)
    if len(set(endpoints)) == len(endpoints):
        assert sum(f) + len(endpoints) == 2 * q.n and sum(g) + len(endpoints) == 2 * q.n
    return QuadrupleProfile(f=tuple(f), g=tuple(g))


def _crossing(arcs) -> bool:
    return any(a < c < b < d for a, b in arcs for c, d in arcs)


def is_good_quadruple(q: Quadruple) -> bool:
    if not q.in_range:
        return False
    points = sorted(q.endpoints)
    if any(b - a < 2 for a, b in zip(points, points[1:])):
        return False
    return not (_crossing(q.top_arcs) or _crossing(q.bottom_arcs))


def interlaces(x: int, k: int, y: int, l: int) -> bool:  # noqa: E741
    return x < y < x + k < y + l or y < x < y + l < x + k


def count_good_pairs(n: int, k: int, l: int) -> int:  # noqa: E741
    """g(k, l): pairs (x, y) whose arcs (x, x+k) and (y, y+l) interlace and form a good quadruple."""
    if not (1 <= k <= 2 * n - 1 and 1 <= l <= 2 * n - 1):
        raise ValidationError(f"spans must lie in 1..{2 * n - 1}, got k={k}, l={l}")
    count = 0
    for x in range(1, 2 * n - k + 1):
        # interlacing needs y in (x - l, x + k)
        for y in range(max(1, x - l + 1), min(x + k, 2 * n - l + 1)):
            if interlaces(x, k, y, l) and is_good_quadruple(Quadruple(n, (x,), (k,), (y,), (l,))):
                count += 1
    return count


# growth fits


def scaling_exponent(ns, means) -> float:
    """Least-squares slope of log(mean) against log(n)."""
    ns, means = np.asarray(ns, dtype=float), np.asarray(means, dtype=float)
    if ns.size < 2 or ns.size != means.size:
        raise ValidationError("need at least two (n, mean) points of equal count")
    if np.any(ns <= 0) or np.any(means <= 0):
        raise ValidationError("log-log fit needs positive n and means")
    slope, _ = np.polyfit(np.log(ns), np.log(means), 1)
    return float(slope)


def degree_loglog_slope(histogram: dict[int, float]) -> float:
    points = [(d, c) for d, c in histogram.items() if d >= 1 and c > 0]
    if len(points) < 2:
        return math.nan
    degrees, counts = zip(*points)
    return scaling_exponent(degrees, counts)
