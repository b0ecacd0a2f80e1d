from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tangenttab.combinatorics import IndexSequence, binom, forward_difference, seq_stats


def test_binom_known_values():
    examples = {
        (4, 2): 6,
        (4, 5): 0,
        (-1, 0): 0,
        (0, 0): 1,
        (1, 0): 1,
        (10, 3): 120,
        (5, -1): 0,
        (-3, -2): 0,
    }
    for (n, k), expected in examples.items():
        assert binom(n, k) == expected


@given(st.integers(min_value=-5, max_value=50), st.integers(min_value=-5, max_value=55))
def test_binom_pascal_identity(n, k):
    # The vanishing convention truncates the triangle at n = 0; everywhere
    # else Pascal holds exactly, including out-of-range k.
    if (n, k) == (0, 0):
        assert binom(n - 1, k - 1) + binom(n - 1, k) == 0 != binom(0, 0)
    else:
        assert binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k)


def test_binom_pascal_exhaustive_sweep():
    for n in range(0, 51):
        for k in range(-5, 56):
            if (n, k) == (0, 0):
                continue
            assert binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k)


def test_forward_difference_of_square():
    assert forward_difference(lambda t: Fraction(t * t), 2) == 5


def test_forward_difference_of_constant():
    for t in range(-5, 6):
        assert forward_difference(lambda _: Fraction(7), t) == 0


def test_forward_difference_of_binomial_columns():
    # Delta C(., c) = C(., c-1) pointwise.
    for c in range(0, 11):
        for t in range(0, 31):
            lhs = forward_difference(lambda u, c=c: Fraction(binom(u, c)), t)
            assert lhs == binom(t, c - 1)


def test_seq_stats_known_values():
    assert seq_stats(IndexSequence((2, 1))) == (3, 4, 2)
    assert seq_stats(IndexSequence(())) == (0, 0, 1)
    assert seq_stats(IndexSequence((0, 0, 3))) == (3, 9, 6)


def test_seq_stats_accepts_plain_iterables():
    assert seq_stats([2, 1]) == (3, 4, 2)


@given(
    st.lists(st.integers(min_value=0, max_value=6), max_size=6),
    st.lists(st.integers(min_value=0, max_value=6), max_size=6),
)
def test_seq_stats_additive_in_norm_and_weight(a, b):
    alpha, beta = IndexSequence(tuple(a)), IndexSequence(tuple(b))
    total = alpha + beta
    assert total.norm == alpha.norm + beta.norm
    assert total.weight == alpha.weight + beta.weight


@given(
    st.lists(st.integers(min_value=0, max_value=5), max_size=5),
    st.integers(min_value=1, max_value=6),
)
def test_factorial_under_unit_increment(a, k):
    alpha = IndexSequence(tuple(a))
    bumped = alpha.add_unit(k)
    assert bumped.factorial == alpha.factorial * (alpha.entry(k) + 1)


def test_sequences_compare_by_value():
    assert IndexSequence((2, 1)) == IndexSequence((2, 1, 0, 0))
    assert hash(IndexSequence((2, 1))) == hash(IndexSequence((2, 1, 0)))
    assert IndexSequence(()) == IndexSequence((0, 0))
    assert not IndexSequence((0,))
    assert IndexSequence((0, 1))


def test_sequence_rejects_negative_entries():
    with pytest.raises(ValueError):
        IndexSequence((1, -1))


def test_unit_sequence():
    e3 = IndexSequence.unit(3)
    assert e3.entries == (0, 0, 1)
    assert e3.norm == 1 and e3.weight == 3
    with pytest.raises(ValueError):
        IndexSequence.unit(0)


def test_add_and_remove_unit():
    alpha = IndexSequence((1, 2))
    assert alpha.add_unit(4).entries == (1, 2, 0, 1)
    assert alpha.remove_unit(2).entries == (1, 1)
    assert alpha.remove_unit(2).remove_unit(2).entries == (1,)
    with pytest.raises(ValueError):
        alpha.remove_unit(3)


def test_support_iteration():
    assert list(IndexSequence((2, 0, 1)).support()) == [(1, 2), (3, 1)]
