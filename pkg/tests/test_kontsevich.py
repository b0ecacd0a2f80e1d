import pytest

from tangenttab.combinatorics import binom
from tangenttab.errors import RangeError
from tangenttab.kontsevich import KontsevichTable, kontsevich_number


# Low degrees are forced by hand evaluation of the degree-split recursion:
# d=2 has the single split (1,1); d=3 gets 12 entirely from the (2,1) split.
KNOWN = {1: 1, 2: 1, 3: 12, 4: 620}


def test_known_low_degrees():
    table = KontsevichTable()
    for d, expected in KNOWN.items():
        assert kontsevich_number(d, table) == expected


def test_rejects_nonpositive_degree():
    with pytest.raises(RangeError):
        kontsevich_number(0)


def test_positive_integers_up_to_twelve():
    table = KontsevichTable()
    values = [kontsevich_number(d, table) for d in range(1, 13)]
    assert all(isinstance(v, int) and v > 0 for v in values)
    assert values[:5] == [1, 1, 12, 620, 87304]


def test_summation_order_independence():
    # Accumulating the splits in reverse order must give identical values
    # (exact integer arithmetic has no reassociation hazards).
    table = KontsevichTable()
    for d in range(2, 11):
        forward = kontsevich_number(d, table)
        reverse = 0
        for k in reversed(range(1, d)):
            l = d - k
            kern = l * binom(3 * d - 4, 3 * k - 2) - k * binom(3 * d - 4, 3 * k - 1)
            reverse += table[k] * table[l] * k * k * l * kern
        assert reverse == forward


def test_table_seed_and_append_only():
    table = KontsevichTable()
    assert table[1] == 1
    kontsevich_number(3, table)
    assert table.known(2) and table.known(3)
    table.store(3, 12)  # same value is fine (duplicate recomputation)
    with pytest.raises(ValueError):
        table.store(3, 13)


def test_shared_default_table_memoizes():
    assert kontsevich_number(6) == kontsevich_number(6)


def test_agreement_with_coefficient_layer():
    from tangenttab.kcoeff import KTable, NormalizationTable, k_coefficient

    f = NormalizationTable.shipped()
    ktab = KTable()
    ntab = KontsevichTable()
    for d in range(1, 9):
        assert k_coefficient(d, 0, f, ktab) == kontsevich_number(d, ntab)
