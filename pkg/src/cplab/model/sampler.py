"""
Uniform Catalan-arc matchings and colored representatives under the fair, biased and fixed-red models.

Matchings are drawn with the cycle lemma: a uniform arrangement of k open and k + 1 close marks has
exactly one rotation whose first 2k symbols are balanced, so every balanced word is hit by exactly
2k + 1 arrangements.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction
from typing import Union

import numpy as np

from cplab.model.matching import CLOSE
from cplab.model.matching import OPEN
from cplab.model.matching import Matching
from cplab.model.matching import decode_balanced
from cplab.model.matching import is_noncrossing
from cplab.model.utils import ValidationError
from cplab.model.utils import make_rng
from cplab.model.utils import parse_fraction


RED, BLUE = "R", "B"


# coloring models


@dataclass(frozen=True)
class Fair:
    def __str__(self):
        return "fair"


@dataclass(frozen=True)
class Biased:
    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", parse_fraction(self.p))
        if not 0 <= self.p <= 1:
            raise ValidationError(f"biased model needs 0 <= p <= 1, got {self.p}")

    def __str__(self):
        return f"biased:{self.p}"


@dataclass(frozen=True)
class FixedRed:
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValidationError(f"fixed-red model needs m >= 0, got {self.m}")

    def __str__(self):
        return f"fixed:{self.m}"


ColoringModel = Union[Fair, Biased, FixedRed]

FAIR = Fair()


def parse_model(text: str) -> ColoringModel:
    """fair | biased:<p> | fixed:<m>"""
    name, _, arg = str(text).strip().lower().partition(":")
    if name == "fair" and not arg:
        return FAIR
    if name == "biased" and arg:
        return Biased(parse_fraction(arg))
    if name == "fixed" and arg:
        try:
            return FixedRed(int(arg))
        except ValueError as e:
            raise ValidationError(f"fixed model needs an integer, got {arg!r}") from e
    raise ValidationError(f"unknown coloring model {text!r}, expected fair | biased:<p> | fixed:<m>")


# rng streams


@dataclass(frozen=True)
class RngStream:
    seed: int
    stream_index: tuple[int, ...] = field(default=())

    def generator(self) -> np.random.Generator:
        return make_rng(self.seed, *self.stream_index)


def _generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


# matchings


def sample_word(k: int, rng) -> str:
    if k < 0:
        raise ValidationError(f"matching size must be >= 0, got {k}")
    rng = _generator(rng)
    steps = np.ones(2 * k + 1, dtype=np.int64)
    steps[k:] = -1
    steps = rng.permutation(steps)
    # rotate to just after the first minimum of the walk
    start = int(np.argmin(np.cumsum(steps))) + 1
    rotated = np.concatenate((steps[start:], steps[:start]))[: 2 * k]
    return "".join(np.where(rotated > 0, OPEN, CLOSE))


def sample_matching(k: int, rng) -> Matching:
    return decode_balanced(sample_word(k, rng))


# colorings


def sample_coloring(n: int, model: ColoringModel, rng) -> str:
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    rng = _generator(rng)
    if isinstance(model, Biased) and model.p == Fraction(1, 2):
        model = FAIR

    if isinstance(model, FixedRed):
        if model.m > n:
            raise ValidationError(f"fixed-red model needs m <= n, got m={model.m}, n={n}")
        red = np.zeros(2 * n, dtype=bool)
        red[rng.choice(2 * n, size=2 * model.m, replace=False)] = True
    else:
        if isinstance(model, Fair):
            free = rng.integers(0, 2, size=2 * n - 1).astype(bool)
        elif isinstance(model, Biased):
            free = rng.random(2 * n - 1) < float(model.p)
        else:
            raise ValidationError(f"unknown coloring model {model!r}")
        # last point fixes the parity, whatever the coin
        red = np.append(free, bool(free.sum() % 2))

    return "".join(np.where(red, RED, BLUE))


# representatives


@dataclass(frozen=True)
class ColoredRepresentative:
    n: int
    colors: str
    top: Matching
    bottom: Matching
    combined_partner: tuple[int, ...]

    @classmethod
    def from_parts(cls, colors: str, top: Matching, bottom: Matching) -> ColoredRepresentative:
        red = [i for i, c in enumerate(colors, start=1) if c == RED]
        blue = [i for i, c in enumerate(colors, start=1) if c == BLUE]
        if len(red) + len(blue) != len(colors):
            raise ValidationError(f"colors must use only {RED}/{BLUE}: {colors!r}")
        if 2 * top.size != len(red) or 2 * bottom.size != len(blue):
            raise ValidationError("matching sizes do not fit the color classes")
        partner = [0] * len(colors)
        for positions, matching in ((red, top), (blue, bottom)):
            for i, j in enumerate(matching.partner, start=1):
                partner[positions[i - 1] - 1] = positions[j - 1]
        return cls(n=len(colors) // 2, colors=colors, top=top, bottom=bottom, combined_partner=tuple(partner))

    @classmethod
    def from_pairs(cls, colors: str, pairs) -> ColoredRepresentative:
        """Build from the combined list of matched point pairs, e.g. the worked example's nine pairs."""
        index = {}
        for color in (RED, BLUE):
            positions = [i for i, c in enumerate(colors, start=1) if c == color]
            index.update({p: r for r, p in enumerate(positions, start=1)})
        sides = {RED: [], BLUE: []}
        for a, b in pairs:
            if colors[a - 1] != colors[b - 1]:
                raise ValidationError(f"pair ({a},{b}) joins two colors")
            sides[colors[a - 1]].append((index[a], index[b]))
        top, bottom = Matching.from_pairs(sides[RED]), Matching.from_pairs(sides[BLUE])
        if not (is_noncrossing(top.pairs()) and is_noncrossing(bottom.pairs())):
            raise ValidationError("arcs on one side cross")
        return cls.from_parts(colors, top, bottom)

    def check(self):
        assert self.colors.count(RED) % 2 == 0 and self.colors.count(BLUE) % 2 == 0
        assert is_noncrossing(self.top.pairs()) and is_noncrossing(self.bottom.pairs())
        for i, j in enumerate(self.combined_partner, start=1):
            assert j != i and self.combined_partner[j - 1] == i
            assert self.colors[i - 1] == self.colors[j - 1]

    def to_dict(self) -> dict:
        return {"n": self.n, "colors": self.colors, "top": self.top.to_word(), "bottom": self.bottom.to_word()}

    @classmethod
    def from_dict(cls, data: dict) -> ColoredRepresentative:
        rep = cls.from_parts(data["colors"], decode_balanced(data["top"]), decode_balanced(data["bottom"]))
        if rep.n != data.get("n", rep.n):
            raise ValidationError(f"n={data['n']} does not match {len(data['colors'])} colors")
        return rep


def sample_representative(n: int, model: ColoringModel, rng) -> ColoredRepresentative:
    rng = _generator(rng)
    colors = sample_coloring(n, model, rng)
    red = colors.count(RED)
    top = sample_matching(red // 2, rng)
    bottom = sample_matching((2 * n - red) // 2, rng)
    return ColoredRepresentative.from_parts(colors, top, bottom)
