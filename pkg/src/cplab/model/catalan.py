"""
Exact Catalan arithmetic and arc-containment probabilities for one uniform Catalan-arc matching.

Positions are 1-based. An arc of half-length m joins x and x + 2m - 1; an arc of span k joins i and i + k.
All probabilities are exact Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from cplab.model.utils import InvalidPairError
from cplab.model.utils import PairRejection
from cplab.model.utils import ValidationError


# catalan numbers


@lru_cache(maxsize=None)
def _catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def catalan(n: int, verify: bool = False) -> int:
    if n < 0:
        raise ValidationError(f"catalan needs n >= 0, got {n}")
    value = _catalan(n)
    if verify:
        assert value == catalan_by_convolution(n), f"binomial and convolution disagree at n={n}"
    return value


def catalan_by_convolution(n: int) -> int:
    """C_{k+1} = sum_i C_i C_{k-i}, built up from C_0 = 1 without the binomial formula."""
    table = [1]
    for k in range(n):
        table.append(sum(table[i] * table[k - i] for i in range(k + 1)))
    return table[n]


def log_catalan_asymptotic(n: int) -> float:
    if n < 1:
        raise ValidationError(f"the asymptotic estimate needs n >= 1, got {n}")
    return n * math.log(4) - 0.5 * math.log(math.pi) - 1.5 * math.log(n)


def catalan_asymptotic(n: int) -> float:
    """4^n / (sqrt(pi) n^{3/2}); math.inf once the estimate leaves the float range."""
    try:
        return math.exp(log_catalan_asymptotic(n))
    except OverflowError:
        return math.inf


def catalan_ratio(n: int) -> float:
    # math.log accepts arbitrarily large ints
    return math.exp(math.log(catalan(n)) - log_catalan_asymptotic(n))


# valid pairs


@dataclass(frozen=True)
class ValidPair:
    n: int
    x: tuple[int, ...]
    k: tuple[int, ...]

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((xi, xi + 2 * ki - 1) for xi, ki in zip(self.x, self.k))

    @property
    def s(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class GapProfile:
    m: tuple[int, ...]

    def __iter__(self):
        return iter(self.m)


def validate_pair(n: int, x, k) -> ValidPair:
    """Check the three valid-pair conditions in order; the first violation is raised as InvalidPairError."""
    x, k = tuple(int(v) for v in x), tuple(int(v) for v in k)
    if len(x) != len(k):
        raise ValidationError(f"x and k differ in size: {len(x)} != {len(k)}")
    if any(a >= b for a, b in zip(x, x[1:])):
        raise ValidationError(f"x must be strictly increasing, got {x}")
    if n < 0:
        raise ValidationError(f"n must be nonnegative, got {n}")

    arcs = [(xi, xi + 2 * ki - 1) for xi, ki in zip(x, k)]
    for a, b in arcs:
        if not (1 <= a < b <= 2 * n):
            raise InvalidPairError(PairRejection.RANGE, f"arc ({a},{b}) not inside 1..{2 * n}")

    seen = set()
    for point in (p for arc in arcs for p in arc):
        if point in seen:
            raise InvalidPairError(PairRejection.DUPLICATE_ENDPOINT, f"point {point} used twice")
        seen.add(point)

    for a, b in arcs:
        for c, d in arcs:
            if a < c < b < d:
                raise InvalidPairError(PairRejection.CROSSING, f"arcs ({a},{b}) and ({c},{d}) cross")

    return ValidPair(n=n, x=x, k=k)


def innermost_regions(n: int, arcs, skip=()) -> list[int]:
    """
    Free points per region: index 0 is outside every arc, index i the points whose innermost arc is i.
    Endpoints of arcs and any point in skip are not free.
    """
    sizes = [0] * (len(arcs) + 1)
    endpoints = {p for arc in arcs for p in arc} | set(skip)
    for point in range(1, 2 * n + 1):
        if point in endpoints:
            continue
        owner, best = 0, None
        for i, (a, b) in enumerate(arcs, start=1):
            if a < point < b and (best is None or b - a < best):
                owner, best = i, b - a
        sizes[owner] += 1
    return sizes


def gap_profile(p: ValidPair) -> GapProfile:
    sizes = innermost_regions(p.n, p.arcs)
    assert all(size % 2 == 0 for size in sizes), f"odd free region in {p}"
    m = tuple(size // 2 for size in sizes)
    assert sum(m) == p.n - p.s
    return GapProfile(m)


def match_probability(p: ValidPair) -> Fraction:
    """Chance that a uniform matching of size n contains every arc of p: prod_i C_{m_i} / C_n."""
    numerator = math.prod(catalan(m) for m in gap_profile(p))
    return Fraction(numerator, catalan(p.n))


# isolated-vertex constant


def isolating_fillings(m: int) -> int:
    """Ways to fill the 2m-2 points under an arc of half-length m so that nothing leaves the arc."""
    if m < 1:
        raise ValidationError(f"half-length must be >= 1, got {m}")
    return sum(math.comb(2 * m - 2, 2 * b) * catalan(m - 1 - b) * catalan(b) for b in range(m))


def gamma_term(m: int) -> Fraction:
    return Fraction(4 * isolating_fillings(m), 16**m)


@dataclass(frozen=True)
class GammaPartialSum:
    M: int
    lower: Fraction
    upper: Fraction

    def as_floats(self) -> tuple[float, float]:
        return float(self.lower), float(self.upper)


def gamma_bounds(M: int) -> GammaPartialSum:
    """
    Bracket sum_{m<=M} gamma_m <= gamma <= that sum + 1/(4(M-1)).
    Uses isolating_fillings(m) = C_{m-1} C_m and a common denominator 16^M.
    """
    if M < 2:
        raise ValidationError(f"gamma_bounds needs M >= 2, got {M}")
    numerator = 0
    prev = 1  # C_{m-1}
    for m in range(1, M + 1):
        cur = prev * 2 * (2 * m - 1) // (m + 1)  # C_m
        numerator = numerator * 16 + 4 * prev * cur
        prev = cur
    lower = Fraction(numerator, 16**M)
    return GammaPartialSum(M=M, lower=lower, upper=lower + Fraction(1, 4 * (M - 1)))


# exact isolated-vertex expectation under the fair model


def expected_isolated_by_halflength(n: int, m: int) -> Fraction:
    """
    Exact E[I_{n,m}] for the fair coloring: an arc of half-length m is isolated iff the 2m-2 points
    under it are matched among themselves. Summed over fillings with b bottom arcs inside, the block's
    coloring, its 2n-2m+1 placements and the number 2r of red points outside.
    """
    if n < 1 or not (1 <= m <= n):
        raise ValidationError(f"need 1 <= m <= n, got n={n}, m={m}")
    rest = 2 * n - 2 * m
    if rest == 0:
        block_prob = Fraction(1, 2 ** (2 * n - 1))
        red_out = {0: Fraction(1)}
    else:
        block_prob = Fraction(1, 4**m)
        red_out = {r: Fraction(math.comb(rest, 2 * r), 2 ** (rest - 1)) for r in range(rest // 2 + 1)}

    total = Fraction(0)
    for b in range(m):
        fillings = math.comb(2 * m - 2, 2 * b) * catalan(m - 1 - b) * catalan(b)
        a = m - b  # top arcs in the block, outer arc included
        completion = sum(
            (
                pr
                * Fraction(catalan(r), catalan(r + a))
                * Fraction(catalan(n - m - r), catalan(n - m - r + b))
                for r, pr in red_out.items()
            ),
            Fraction(0),
        )
        total += fillings * completion
    # the isolated arc may sit on either side
    return 2 * (rest + 1) * block_prob * total
