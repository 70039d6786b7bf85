import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlkp.boundary import solve_case
from nlkp.kpcore import ModelParams
from nlkp.scan import (
    DEFAULT_E_GRID,
    DEFAULT_T_GRID,
    SpectrumTable,
    compare_table,
    energy_length_spectrum,
    invert_rows,
    multivalue_detect,
    rows_from_inverse,
    t_length_spectrum,
)

P = ModelParams(1.0, 0.01, 0.02, 0.415)


def test_default_grids():
    assert DEFAULT_T_GRID == (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
    assert DEFAULT_E_GRID[0] == 0.5 and DEFAULT_E_GRID[-1] == 1.5 and len(DEFAULT_E_GRID) == 11


rows_st = st.lists(
    st.tuples(st.integers(0, 20), st.lists(st.integers(1, 60), unique=True, max_size=6)),
    unique_by=lambda r: r[0],
    max_size=8,
).map(lambda rs: [(v / 10, sorted(Ls)) for v, Ls in rs])


@given(rows_st)
def test_inverse_round_trip(rows):
    inv = invert_rows(rows)
    assert rows_from_inverse(inv, [v for v, _ in rows]) == rows
    assert [L for L, _ in inv] == sorted(L for L, _ in inv)


def test_multivalue_detect():
    table = SpectrumTable("t", [(0.6, [5, 11]), (0.8, [3]), (0.9, [3]), (1.0, [11])])
    assert multivalue_detect(table) == [(3, [0.8, 0.9]), (11, [0.6, 1.0])]


def test_t_sweep_rows_match_single_solves():
    table = t_length_spectrum(P, 0.2822, 1.0, [0.3, 0.7, 1.0])
    for t, Ls in table.rows:
        R1 = 0.2822 * np.sqrt(1 - t)
        assert Ls == solve_case(P, 0.2822, R1, 1.0).lengths


def test_t_zero_row_is_not_skipped():
    table = t_length_spectrum(P, 0.2822, 1.0, [0.0])
    assert table.rows[0][0] == 0.0 and not table.failures


def test_e_sweep_uses_grid_energy():
    table = energy_length_spectrum(P, 0.2822, 0.001, 1.0, [0.7, 1.0])
    p07 = ModelParams(0.7, 0.01, 0.02, 0.415)
    assert table.rows[0][1] == solve_case(p07, 0.2822, 0.001, 1.0).lengths


def test_threaded_sweep_is_deterministic():
    a = energy_length_spectrum(P, 0.2822, 0.001, 1.0, workers=1)
    b = energy_length_spectrum(P, 0.2822, 0.001, 1.0, workers=4)
    assert a.rows == b.rows


def test_bad_grid_values():
    with pytest.raises(ValueError):
        t_length_spectrum(P, 0.2822, 1.0, [1.2])
    with pytest.raises(ValueError):
        energy_length_spectrum(P, 0.2822, 0.001, 1.0, [0.0])


def test_compare_table_counts():
    table = SpectrumTable("t", [(0.1, [3, 4]), (0.2, [])])
    cmp_ = compare_table(table, [(0.1, [4, 5]), (0.2, [7])])
    assert cmp_.matched == [(0.1, 4)]
    assert [(v, L) for v, L, _ in cmp_.missing] == [(0.1, 5), (0.2, 7)]
    assert [(v, L) for v, L, _ in cmp_.extra] == [(0.1, 3)]
    assert cmp_.agreement == pytest.approx(1 / 4)
    assert cmp_.recall == pytest.approx(1 / 3)
