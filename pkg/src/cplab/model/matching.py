"""Non-crossing perfect matchings on 2k points, stored as 1-based partner sequences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable
from typing import Iterator

from cplab.model.utils import NotAMatchingError
from cplab.model.utils import UnbalancedWordError
from cplab.model.utils import ValidationError
from cplab.model.utils import check_cap


OPEN, CLOSE = "(", ")"

ENUMERATION_CAP = 10
HARD_ENUMERATION_CAP = 14


@dataclass(frozen=True)
class Matching:
    partner: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.partner) // 2

    def partner_of(self, point: int) -> int:
        return self.partner[point - 1]

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.partner, start=1) if i < j]

    def to_word(self) -> str:
        return "".join(OPEN if j > i else CLOSE for i, j in enumerate(self.partner, start=1))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> Matching:
        return cls(tuple(_partner_sequence(pairs)))

    def __str__(self):
        return self.to_word()


def _partner_sequence(pairs) -> list[int]:
    pairs = [tuple(p) for p in pairs]
    size = 2 * len(pairs)
    partner = [0] * size
    for a, b in pairs:
        if a == b:
            raise NotAMatchingError(f"point {a} matched to itself")
        for p in (a, b):
            if not 1 <= p <= size:
                raise NotAMatchingError(f"point {p} outside 1..{size}")
            if partner[p - 1]:
                raise NotAMatchingError(f"point {p} appears twice")
        partner[a - 1], partner[b - 1] = b, a
    return partner


def is_balanced(word: str) -> bool:
    depth = 0
    for symbol in word:
        if symbol == OPEN:
            depth += 1
        elif symbol == CLOSE:
            depth -= 1
            if depth < 0:
                return False
        else:
            return False
    return depth == 0


def decode_balanced(word: str) -> Matching:
    """Stack pairing: each close mark pairs with the most recent unmatched open mark."""
    partner = [0] * len(word)
    stack = []
    for i, symbol in enumerate(word, start=1):
        if symbol == OPEN:
            stack.append(i)
        elif symbol == CLOSE:
            if not stack:
                raise UnbalancedWordError(f"close mark at {i} has nothing to close in {word!r}")
            j = stack.pop()
            partner[i - 1], partner[j - 1] = j, i
        else:
            raise UnbalancedWordError(f"unexpected symbol {symbol!r} at {i}")
    if stack:
        raise UnbalancedWordError(f"{len(stack)} open marks left in {word!r}")
    return Matching(tuple(partner))


def is_noncrossing(pairs: Iterable[tuple[int, int]]) -> bool:
    """True iff no two pairs interlace. Rejects anything that is not a perfect matching of 1..2k."""
    partner = _partner_sequence(pairs)
    # non-crossing iff the induced open/close word decodes back to the same partners
    stack = []
    for i, j in enumerate(partner, start=1):
        if j > i:
            stack.append(i)
        elif stack.pop() != j:
            return False
    return True


def _words(k: int) -> Iterator[str]:
    # lexicographic with "(" < ")"
    def extend(prefix, opens, closes):
        if opens == closes == k:
            yield "".join(prefix)
            return
        if opens < k:
            prefix.append(OPEN)
            yield from extend(prefix, opens + 1, closes)
            prefix.pop()
        if closes < opens:
            prefix.append(CLOSE)
            yield from extend(prefix, opens, closes + 1)
            prefix.pop()

    yield from extend([], 0, 0)


def enumerate_matchings(k: int, cap: int = ENUMERATION_CAP) -> Iterator[Matching]:
    """All C_k matchings of size k, ordered lexicographically by balanced word."""
    if k < 0:
        raise ValidationError(f"matching size must be >= 0, got {k}")
    check_cap("matching size", k, cap, HARD_ENUMERATION_CAP)
    for word in _words(k):
        yield decode_balanced(word)


def contains_arcs(m: Matching, arcs: Iterable[tuple[int, int]]) -> bool:
    top = 2 * m.size
    for a, b in arcs:
        if not (1 <= a <= top and 1 <= b <= top):
            raise ValidationError(f"arc ({a},{b}) outside 1..{top}")
        if m.partner[a - 1] != b:
            return False
    return True
