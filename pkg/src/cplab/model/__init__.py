from cplab.model.catalan import ValidPair, catalan, gamma_bounds, gap_profile, match_probability, validate_pair
from cplab.model.matching import Matching, decode_balanced, enumerate_matchings, is_noncrossing

from cplab.model.sampler import Biased, ColoredRepresentative, Fair, FixedRed, RngStream, sample_representative

from cplab.model.pairgraph import CatalanPairGraph, GraphStats, build_graph, components
from cplab.model.analysis import PatternGraph, Quadruple, count_pattern


__all__ = [
    "ValidPair",
    "catalan",
    "gamma_bounds",
    "gap_profile",
    "match_probability",
    "validate_pair",
    "Matching",
    "decode_balanced",
    "enumerate_matchings",
    "is_noncrossing",
    "Biased",
    "ColoredRepresentative",
    "Fair",
    "FixedRed",
    "RngStream",
    "sample_representative",
    "CatalanPairGraph",
    "GraphStats",
    "build_graph",
    "components",
    "PatternGraph",
    "Quadruple",
    "count_pattern",
]
