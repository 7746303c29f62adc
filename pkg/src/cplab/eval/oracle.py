"""
Exhaustive ground truth at small n. Nested loops over every coloring and every pair of matchings,
exact Fractions throughout, no pruning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction
from itertools import product

from tqdm import tqdm

from cplab.model.analysis import PatternGraph
from cplab.model.analysis import Quadruple
from cplab.model.analysis import count_pattern
from cplab.model.catalan import catalan
from cplab.model.catalan import expected_isolated_by_halflength
from cplab.model.matching import contains_arcs
from cplab.model.matching import enumerate_matchings
from cplab.model.pairgraph import build_graph
from cplab.model.pairgraph import isolated_stats
from cplab.model.sampler import BLUE
from cplab.model.sampler import FAIR
from cplab.model.sampler import RED
from cplab.model.sampler import Biased
from cplab.model.sampler import ColoredRepresentative
from cplab.model.sampler import ColoringModel
from cplab.model.sampler import Fair
from cplab.model.sampler import FixedRed
from cplab.model.utils import ValidationError
from cplab.model.utils import check_cap
from cplab.model.utils import fraction_str


MATCHING_CAP = 10
HARD_MATCHING_CAP = 12
MODEL_CAP = 5
HARD_MODEL_CAP = 6
QUADRUPLE_CAP = 6
HARD_QUADRUPLE_CAP = 7
ISOLATED_CAP = 60
HARD_ISOLATED_CAP = 200


# single matching


def exact_pair_probability(n: int, arcs, cap: int = MATCHING_CAP) -> Fraction:
    """Fraction of all C_n matchings containing every queried arc. Crossing queries give 0."""
    check_cap("matching size", n, cap, HARD_MATCHING_CAP)
    arcs = [tuple(arc) for arc in arcs]
    hits = sum(1 for m in enumerate_matchings(n, cap=cap) if contains_arcs(m, arcs))
    return Fraction(hits, catalan(n))


# full model


def coloring_probability(colors: str, model: ColoringModel) -> Fraction:
    """Exact chance that the model draws this coloring; zero when either color count is odd."""
    size = len(colors)
    red = colors.count(RED)
    if red % 2:
        return Fraction(0)
    if isinstance(model, Biased) and model.p == Fraction(1, 2):
        model = FAIR
    if isinstance(model, Fair):
        return Fraction(1, 2 ** (size - 1))
    if isinstance(model, Biased):
        # the last point is forced, only the first size - 1 coins count
        free_red = colors[:-1].count(RED)
        return model.p**free_red * (1 - model.p) ** (size - 1 - free_red)
    if isinstance(model, FixedRed):
        if red != 2 * model.m:
            return Fraction(0)
        return Fraction(1, math.comb(size, red))
    raise ValidationError(f"unknown coloring model {model!r}")


def all_representatives(colors: str):
    red = colors.count(RED)
    blue = len(colors) - red
    for top in enumerate_matchings(red // 2, cap=HARD_MATCHING_CAP):
        for bottom in enumerate_matchings(blue // 2, cap=HARD_MATCHING_CAP):
            yield ColoredRepresentative.from_parts(colors, top, bottom)


@dataclass(frozen=True)
class ExactExpectation:
    n: int
    model: ColoringModel
    expected_edges: Fraction
    expected_isolated: Fraction
    expected_pattern_counts: dict[str, Fraction] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "model": str(self.model),
            "expected_edges": fraction_str(self.expected_edges),
            "expected_isolated": fraction_str(self.expected_isolated),
            "expected_pattern_counts": {k: fraction_str(v) for k, v in self.expected_pattern_counts.items()},
        }


def exact_model_expectations(
    n: int,
    model: ColoringModel,
    patterns: dict[str, tuple[PatternGraph, bool]] | None = None,
    cap: int = MODEL_CAP,
    quiet: bool = True,
) -> ExactExpectation:
    """
    patterns maps an output key to (pattern, induced). Every coloring is weighted by its model
    probability and every (top, bottom) pair by 1 / (C_a C_b).
    """
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    check_cap("model size", n, cap, HARD_MODEL_CAP)
    if isinstance(model, FixedRed) and model.m > n:
        raise ValidationError(f"fixed-red model needs m <= n, got m={model.m}, n={n}")
    patterns = patterns or {}

    edges, isolated = Fraction(0), Fraction(0)
    pattern_sums = {key: Fraction(0) for key in patterns}
    total = Fraction(0)
    for letters in tqdm(list(product((RED, BLUE), repeat=2 * n)), desc=f"colorings n={n}", disable=quiet):
        colors = "".join(letters)
        weight = coloring_probability(colors, model)
        if weight == 0:
            continue
        total += weight
        red = colors.count(RED)
        weight /= catalan(red // 2) * catalan((2 * n - red) // 2)
        for rep in all_representatives(colors):
            g = build_graph(rep)
            edges += weight * g.edge_count
            isolated += weight * isolated_stats(g)[0]
            for key, (h, induced) in patterns.items():
                pattern_sums[key] += weight * count_pattern(g, h, induced=induced)

    assert total == 1, f"coloring probabilities sum to {total}"
    return ExactExpectation(
        n=n,
        model=model,
        expected_edges=edges,
        expected_isolated=isolated,
        expected_pattern_counts=pattern_sums,
    )


def exact_isolated_by_halflength(n: int, cap: int = ISOLATED_CAP) -> dict[int, Fraction]:
    """E[I_{n,m}] for every half-length m under the fair model. Closed sums, not enumeration."""
    check_cap("isolated-count size", n, cap, HARD_ISOLATED_CAP)
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    return {m: expected_isolated_by_halflength(n, m) for m in range(1, n + 1)}


# quadruples


def find_witness(q: Quadruple, cap: int = QUADRUPLE_CAP) -> ColoredRepresentative | None:
    """A representative in which every top arc of q is red and matched, every bottom arc blue and matched."""
    check_cap("quadruple size", q.n, cap, HARD_QUADRUPLE_CAP)
    if not q.in_range:
        return None
    forced = {}
    for arcs, color in ((q.top_arcs, RED), (q.bottom_arcs, BLUE)):
        for p in (p for arc in arcs for p in arc):
            if p in forced:
                return None
            forced[p] = color
    free = [p for p in range(1, 2 * q.n + 1) if p not in forced]

    for letters in product((RED, BLUE), repeat=len(free)):
        chosen = {**forced, **dict(zip(free, letters))}
        colors = "".join(chosen[p] for p in range(1, 2 * q.n + 1))
        if colors.count(RED) % 2:
            continue
        for rep in all_representatives(colors):
            if all(rep.combined_partner[a - 1] == b for a, b in q.top_arcs + q.bottom_arcs):
                return rep
    return None


def is_valid_quadruple_small(q: Quadruple, cap: int = QUADRUPLE_CAP) -> bool:
    return find_witness(q, cap=cap) is not None
