import pytest
from hypothesis import given
from hypothesis import strategies as st

from cplab.model.catalan import catalan
from cplab.model.matching import Matching
from cplab.model.matching import contains_arcs
from cplab.model.matching import decode_balanced
from cplab.model.matching import enumerate_matchings
from cplab.model.matching import is_balanced
from cplab.model.matching import is_noncrossing
from cplab.model.utils import CapExceededError
from cplab.model.utils import NotAMatchingError
from cplab.model.utils import UnbalancedWordError
from cplab.model.utils import ValidationError


WORDS = {k: [m.to_word() for m in enumerate_matchings(k)] for k in range(9)}

balanced_words = st.integers(0, 8).flatmap(lambda k: st.sampled_from(WORDS[k]))


@pytest.mark.parametrize(
    "word, pairs",
    [
        ("((()))", [(1, 6), (2, 5), (3, 4)]),
        ("()()()", [(1, 2), (3, 4), (5, 6)]),
        ("(())()", [(1, 4), (2, 3), (5, 6)]),
        ("", []),
    ],
)
def test_decode_balanced(word, pairs):
    assert decode_balanced(word).pairs() == pairs


@pytest.mark.parametrize("word", ["(()", ")(", "())(", "(x)"])
def test_decode_rejects_unbalanced(word):
    assert not is_balanced(word)
    with pytest.raises(UnbalancedWordError):
        decode_balanced(word)


def test_is_noncrossing():
    assert is_noncrossing([(1, 4), (2, 3)])
    assert not is_noncrossing([(1, 3), (2, 4)])
    assert is_noncrossing([(1, 2), (3, 5), (4, 6)]) is False


def test_red_side_of_worked_example_is_noncrossing(worked_rep):
    assert is_noncrossing(worked_rep.top.pairs())
    assert worked_rep.top.size == 5


@pytest.mark.parametrize("pairs", [[(1, 2), (2, 3)], [(1, 3)], [(1, 1), (2, 3)]])
def test_is_noncrossing_rejects_non_matchings(pairs):
    with pytest.raises(NotAMatchingError):
        is_noncrossing(pairs)


def test_enumeration_counts():
    for k in range(10):
        matchings = list(enumerate_matchings(k))
        assert len(matchings) == catalan(k)
        assert len(set(matchings)) == len(matchings)
        assert all(is_noncrossing(m.pairs()) for m in matchings)


def test_enumeration_order_is_lexicographic():
    assert WORDS[3] == ["((()))", "(()())", "(())()", "()(())", "()()()"]
    for words in WORDS.values():
        assert words == sorted(words)


def test_enumeration_cap():
    with pytest.raises(CapExceededError):
        list(enumerate_matchings(11))
    with pytest.raises(CapExceededError):
        list(enumerate_matchings(5, cap=20))


def test_contains_arcs():
    m = decode_balanced("((()))")
    assert contains_arcs(m, [(2, 5)])
    assert not contains_arcs(m, [(1, 2)])
    assert contains_arcs(m, [])
    with pytest.raises(ValidationError):
        contains_arcs(m, [(0, 3)])


def test_ten_of_all_size_eight_matchings_hold_both_arcs():
    hits = sum(1 for m in enumerate_matchings(8) if contains_arcs(m, [(2, 11), (4, 7)]))
    assert hits == 10


def test_from_pairs():
    m = Matching.from_pairs([(2, 3), (1, 4)])
    assert m.partner == (4, 3, 2, 1)
    assert str(m) == "(())"


@given(balanced_words)
def test_word_round_trip(word):
    m = decode_balanced(word)
    assert m.to_word() == word
    assert is_noncrossing(m.pairs())
    for i, j in enumerate(m.partner, start=1):
        assert m.partner_of(j) == i and j != i
        # open marks are exactly the points whose partner lies to the right
        assert (j > i) == (word[i - 1] == "(")


@given(st.integers(1, 6).flatmap(lambda k: st.permutations(range(1, 2 * k + 1))))
def test_noncrossing_agrees_with_pairwise_check(points):
    pairs = [tuple(sorted(points[i : i + 2])) for i in range(0, len(points), 2)]
    crossing = any(a < c < b < d for a, b in pairs for c, d in pairs)
    assert is_noncrossing(pairs) == (not crossing)
