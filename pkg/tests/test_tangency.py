from fractions import Fraction

import pytest

from tangenttab.errors import RangeError, UnknownNormalization
from tangenttab.kcoeff import KTable, NormalizationTable
from tangenttab.kontsevich import kontsevich_number
from tangenttab.tangency import (
    TangencyProblem,
    count,
    gw_invariant,
    p_value,
    q_coefficients,
    q_value,
    valid_problems,
    verify_ch_identity,
    verify_delta,
    verify_integrality,
    verify_key_relation,
    verify_q_properties,
)


@pytest.fixture
def tables():
    return NormalizationTable.shipped(), KTable()


def test_validity_predicate():
    assert TangencyProblem(1, 0, 0, 1).is_valid
    assert not TangencyProblem(1, 3, 0, 0).is_valid  # a + 2b + c > 3d - 1
    assert not TangencyProblem(1, 0, 0, 2).is_valid  # a + 2b + 2c > 3d
    assert not TangencyProblem(1, 0, 1, -1).is_valid
    assert not TangencyProblem(0, 0, 0, 0).is_valid
    assert TangencyProblem(2, 0, 2, 1).free_points == 0
    assert TangencyProblem(2, 0, 0, 1).free_points == 4


def test_count_known_values(tables):
    f, tab = tables
    cases = {
        (1, 0, 0, 1): 6,   # tangent lines from a general point
        (1, 1, 0, 1): 4,   # tangent lines from a point on the curve
        (2, 0, 2, 1): 3,
        (2, 0, 0, 1): 12,  # pencil of conics through 4 points
        (3, 8, 0, 0): 12,
        (1, 3, 0, 0): 0,   # invalid tuple counts zero
        (2, 0, 1, 2): 6,
        (2, 0, 0, 3): 12,
    }
    for (d, a, b, c), expected in cases.items():
        assert count(TangencyProblem(d, a, b, c), f, tab) == expected


def test_count_propagates_unknown_normalization(tables):
    f, tab = tables
    with pytest.raises(UnknownNormalization):
        count(TangencyProblem(3, 0, 1, 0), f, tab)


def test_count_independent_of_point_split_at_no_tangency(tables):
    f, tab = tables
    for d in range(1, 9):
        n_d = kontsevich_number(d)
        assert count(TangencyProblem(d, 3 * d - 1, 0, 0), f, tab) == n_d
        assert count(TangencyProblem(d, 0, 0, 0), f, tab) == n_d


def test_counts_are_nonnegative_integers(tables):
    f, tab = tables
    for d in (1, 2):
        for p in valid_problems(d):
            value = count(p, f, tab)
            assert isinstance(value, int) and value >= 0


def test_p_value_window(tables):
    f, tab = tables
    assert p_value(2, 0, 1, 4, f, tab) == 12
    assert p_value(2, 0, 1, -1, f, tab) == 0
    assert p_value(1, 0, 0, 2, f, tab) == 1
    # vanishing outside max(0, c-1) <= t <= 3d-1-2b-c
    for t in range(-3, 0):
        assert p_value(2, 1, 1, t, f, tab) == 0
    for t in range(4, 8):
        assert p_value(2, 1, 1, t, f, tab) == 0


def test_q_coefficients_values(tables):
    f, tab = tables
    assert q_coefficients(2, 2, 1, f, tab) == (Fraction(3, 2), Fraction(3))
    assert q_coefficients(1, 0, 1, f, tab) == (2, 4)
    assert q_coefficients(3, 0, 0, f, tab) == (12, 24)


def test_q_matches_p_on_window(tables):
    f, tab = tables
    for d in (1, 2):
        for b in range(0, 3 * d // 2 + 1):
            for c in range(0, (3 * d - 2 * b) // 2 + 1):
                for t in range(max(0, c - 1), 3 * d - 1 - 2 * b - c + 1):
                    assert q_value(d, b, c, t, f, tab) == p_value(d, b, c, t, f, tab)


def test_gw_invariant_values(tables):
    f, tab = tables
    assert gw_invariant(1, 2, 0, f, tab) == 1
    assert gw_invariant(1, 0, 1, f, tab) == 6
    assert gw_invariant(2, 0, 1, f, tab) == 288


def test_gw_invariant_hypotheses(tables):
    f, tab = tables
    with pytest.raises(RangeError):
        gw_invariant(1, 4, 0, f, tab)
    with pytest.raises(RangeError):
        gw_invariant(1, 0, 2, f, tab)
    with pytest.raises(RangeError):
        gw_invariant(0, 0, 0, f, tab)


def test_ch_identity_suite_small(tables):
    f, tab = tables
    report = verify_ch_identity(2, f, tab)
    assert report.ok
    assert not report.skipped
    # hand-checked instance: 6 = 4 + 2*1 at (d,a,b,c) = (1,0,0,1)
    assert (1, 0, 0, 1) in report.checked


def test_key_relation_suite_small(tables):
    f, tab = tables
    report = verify_key_relation(2, f, tab)
    assert report.ok and not report.skipped
    # the (d,a,b) = (2,2,2) instance: both sides equal 4
    assert (2, 2, 2) in report.checked
    assert count(TangencyProblem(2, 2, 1, 1), f, tab) == 4
    assert count(TangencyProblem(2, 1, 2, 0), f, tab) == 1


def test_delta_suite_small(tables):
    f, tab = tables
    report = verify_delta(2, f, tab)
    assert report.ok and not report.skipped


def test_q_suite_small(tables):
    f, tab = tables
    report = verify_q_properties(2, f, tab)
    assert report.ok and not report.skipped


def test_integrality_suite_small(tables):
    f, tab = tables
    report = verify_integrality(2, f, tab)
    assert report.ok and not report.skipped


def test_suites_skip_unavailable_data(tables):
    f, tab = tables
    report = verify_ch_identity(3, f, tab)
    assert report.ok
    assert report.skipped  # d = 3 tuples with b + c >= 1 have no K data
    assert all(subject[0] == 3 for subject in report.skipped)


def test_suites_extend_with_user_data(tables):
    f, tab = tables
    f.set(3, 1, 66)  # consistent invented value, K_3^(1) = 1
    report = verify_key_relation(3, f, tab)
    assert report.ok
    assert (3, 7, 1) in report.checked


def test_verify_delta_c_zero_column_is_flat(tables):
    f, tab = tables
    for d in (1, 2):
        for b in range(0, 3 * d // 2 + 1):
            for t in range(0, 3 * d - 2 - 2 * b + 1):
                assert p_value(d, b, 0, t + 1, f, tab) == p_value(d, b, 0, t, f, tab)
