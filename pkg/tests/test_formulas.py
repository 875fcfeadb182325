import pytest

from cubeslide import (S_closed_form, S_corner_formula, S_value,
                       diameter_conjecture_value, s_small, sdk_table)


def test_s_small():
    assert s_small(3, 2) == 3
    assert s_small(5, 3) == 7
    for k in range(1, 7):
        assert s_small(k, k) == (1 << k) - 1


def test_S_known_values():
    assert S_value(3, 2) == 4
    assert S_value(4, 3) == 11
    assert S_value(4, 2) == 5
    assert S_value(5, 4) == 26
    assert S_value(5, 2) == S_value(4, 1) + S_value(4, 2) == 6
    assert S_value(5, 3) == S_value(4, 2) + S_value(4, 3) == 16


def test_S_bases():
    for i in range(1, 13):
        assert S_value(i, i) == (1 << i) - 1
        assert S_value(i, 1) == 1


def test_recursion_equals_closed_form():
    for k in range(2, 12):
        for n in range(1, 11):
            if k + n > 12:
                continue
            assert S_value(n + k, k) == S_closed_form(n + k, k), (n, k)


def test_corner_formula_matches_recursion():
    for k in range(1, 11):
        assert S_value(k + 1, k) == S_corner_formula(k) == (1 << (k + 1)) - k - 2


def test_diameter_conjecture_values():
    assert diameter_conjecture_value(3, 2) == 18
    assert diameter_conjecture_value(4, 8) == 32
    assert diameter_conjecture_value(2, 3) == 2
    with pytest.raises(ValueError):
        diameter_conjecture_value(3, 1)


def test_sdk_table_shape():
    rows = sdk_table(6)
    assert len(rows) == 6 * 7 // 2
    assert (3, 2, 4) in rows and (4, 2, 5) in rows


def test_bad_args():
    with pytest.raises(ValueError):
        s_small(2, 3)
    with pytest.raises(ValueError):
        S_value(0, 0)
    with pytest.raises(ValueError):
        S_closed_form(2, 2)   # n = 0 outside the closed form's range
