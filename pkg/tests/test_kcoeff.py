import random
from fractions import Fraction

import pytest

from tangenttab.errors import (
    CalibrationMismatch,
    RangeError,
    UnknownNormalization,
    ZeroNormalization,
)
from tangenttab.kcoeff import (
    BASE_CASE,
    KTable,
    NormalizationTable,
    alpha_factor,
    dump_normalization,
    k_coefficient,
    load_ktable_file,
    load_normalization_file,
    recursion_rhs,
    solve_normalization,
)


def test_alpha_factor_values():
    assert alpha_factor(1, 0, 1, 0) == 3
    assert alpha_factor(1, 0, 2, 1) == Fraction(5, 2)
    assert alpha_factor(1, 0, 1, 2) == 0  # vanishing-denominator convention


def test_base_cases():
    f, tab = NormalizationTable.shipped(), KTable()
    assert k_coefficient(1, 0, f, tab) == 1
    assert k_coefficient(1, 1, f, tab) == 1
    assert k_coefficient(2, 3, f, tab) == Fraction(3, 4)
    for key in ((1, 0), (1, 1), (2, 3)):
        assert tab.provenance(*key) == BASE_CASE


def test_degree_two_values_with_shipped_defaults():
    f, tab = NormalizationTable.shipped(), KTable()
    # Hand evaluation of the recursion RHS gives 4 = f_2^(1) * 1 and 1.
    assert recursion_rhs(2, 1, f, tab) == 4
    assert recursion_rhs(2, 2, f, tab) == 1
    assert k_coefficient(2, 1, f, tab) == 1
    assert k_coefficient(2, 2, f, tab) == 1
    assert k_coefficient(2, 0, f, tab) == 1


def test_degree_three_zero_column_collapses_to_point_counts():
    f, tab = NormalizationTable.shipped(), KTable()
    assert k_coefficient(3, 0, f, tab) == 12


def test_missing_normalization_raises():
    f, tab = NormalizationTable.shipped(), KTable()
    with pytest.raises(UnknownNormalization):
        k_coefficient(3, 1, f, tab)


def test_out_of_range_raises():
    f, tab = NormalizationTable.shipped(), KTable()
    with pytest.raises(RangeError):
        k_coefficient(1, 2, f, tab)  # 2*lambda > 3*d
    with pytest.raises(RangeError):
        k_coefficient(0, 0, f, tab)
    with pytest.raises(RangeError):
        k_coefficient(2, -1, f, tab)


def test_zero_normalization_divisor_raises():
    f = NormalizationTable.shipped()
    f.set(2, 1, 0)  # undefined-encoding zero as the divisor
    with pytest.raises(ZeroNormalization):
        k_coefficient(2, 1, f, KTable())


def test_solve_normalization_values():
    f = NormalizationTable.shipped()
    assert solve_normalization(2, 1, 1, f) == 4
    assert solve_normalization(2, 2, 1, f) == 1
    assert f.provenance(2, 1) == "solved"
    with pytest.raises(ZeroDivisionError):
        solve_normalization(2, 1, 0, f)
    with pytest.raises(RangeError):
        solve_normalization(2, 3, 1, f)  # base case is not recursion-constrained


def test_solve_round_trip():
    f, tab = NormalizationTable.shipped(), KTable()
    for d, b in ((2, 0), (2, 1), (2, 2)):
        k = k_coefficient(d, b, f, tab)
        assert solve_normalization(d, b, k, NormalizationTable.shipped()) == f.lookup(d, b)
    # Same round trip through invented-but-consistent degree-3 data.
    f3 = NormalizationTable.shipped()
    f3.set(3, 1, 66)
    tab3 = KTable()
    k31 = k_coefficient(3, 1, f3, tab3)
    assert k31 == 1
    assert solve_normalization(3, 1, k31, NormalizationTable.shipped()) == 66


def test_gauge_invariance():
    rng = random.Random(4321)
    f = NormalizationTable.shipped()
    tab = KTable()
    reference = {
        (d, lam): k_coefficient(d, lam, f, tab)
        for d in (1, 2)
        for lam in range(0, 3 * d // 2 + 1)
    }
    reference.update({(d, 0): k_coefficient(d, 0, f, tab) for d in range(3, 7)})
    for _ in range(5):
        x = Fraction(0)
        while x == 0:
            x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        rescaled = f.rescaled(x)
        for (d, lam), expected in reference.items():
            assert k_coefficient(d, lam, rescaled, KTable()) == expected


def test_rescaled_table_covers_implicit_zero_column():
    f = NormalizationTable.shipped().rescaled(Fraction(3, 2))
    assert f.lookup(5, 0) == Fraction(3, 2) ** 5


def test_integrality_enforced_on_insertion():
    tab = KTable()
    with pytest.raises(CalibrationMismatch):
        tab.set(2, 1, Fraction(1, 3), "user-override")
    with pytest.raises(CalibrationMismatch):
        tab.set(2, 3, Fraction(1, 5), "user-override")  # not a quarter-integer
    tab.set(2, 3, Fraction(3, 4), "user-override")  # matches the base case


def test_ktable_append_only_and_base_conflicts():
    tab = KTable()
    tab.set(3, 1, 7, "user-override")
    with pytest.raises(CalibrationMismatch):
        tab.set(3, 1, 8, "user-override")
    with pytest.raises(CalibrationMismatch):
        tab.set(1, 0, 2, "user-override")


def test_user_ktable_override_bypasses_normalization():
    tab = KTable()
    tab.set(3, 1, 5, "user-override")
    assert k_coefficient(3, 1, NormalizationTable.shipped(), tab) == 5


def test_normalization_file_round_trip(tmp_path):
    f = NormalizationTable.shipped()
    f.set(3, 1, Fraction(66))
    path = tmp_path / "f.txt"
    path.write_text(dump_normalization(f), encoding="utf-8")
    loaded = load_normalization_file(path, base=NormalizationTable())
    assert loaded.lookup(3, 1) == 66
    assert loaded.lookup(2, 1) == 4


def test_normalization_file_merges_over_shipped(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("# comment\n3 1 66/1\n", encoding="utf-8")
    loaded = load_normalization_file(path)
    assert loaded.lookup(3, 1) == 66
    assert loaded.lookup(2, 2) == 1  # shipped entry retained


def test_table_file_rejects_malformed_lines(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("3 1\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_normalization_file(path)


def test_ktable_file_loading(tmp_path):
    path = tmp_path / "k.txt"
    path.write_text("3 1 9/1  # literature value, invented here\n", encoding="utf-8")
    tab = load_ktable_file(path)
    assert tab.get(3, 1) == 9
    assert tab.provenance(3, 1) == "user-override"


def test_shipped_table_contents():
    stored = {(d, b): v for d, b, v, _ in NormalizationTable.shipped().stored_items()}
    assert stored == {
        (1, 0): 1,
        (1, 1): 1,
        (2, 0): 1,
        (2, 1): 4,
        (2, 2): 1,
    }
