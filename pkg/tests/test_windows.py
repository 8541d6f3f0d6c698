"""Row-window partitioning and condensation."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rowwin.matrices import SparseCsr
from rowwin.windows import RowWindow, features, partition, tile_count, total_rows

from conftest import random_csr


def test_window_count_is_ceiling():
    csr = random_csr(33, 20, 0.2, seed=0)
    ws = partition(csr)
    assert len(ws) == 3
    assert [w.row_count for w in ws] == [16, 16, 1]
    assert [w.row_start for w in ws] == [0, 16, 32]


def test_condensation_maps_distinct_columns_to_front():
    csr = SparseCsr.from_coo(
        2, 16, np.array([0, 0, 1]), np.array([9, 5, 9]), np.array([1.0, 2.0, 3.0])
    )
    (w,) = partition(csr)
    assert w.nonzero_cols.tolist() == [5, 9]
    # entry order is CSR order: row0 cols (5, 9), row1 col 9
    assert w.cond_cols.tolist() == [0, 1, 1]
    assert w.values.tolist() == [2.0, 1.0, 3.0]
    assert w.ncols == 2


@given(st.integers(0, 10_000), st.integers(1, 40), st.integers(1, 40))
@settings(max_examples=60, deadline=None)
def test_decondense_recovers_all_entries(seed, num_rows, num_cols):
    csr = random_csr(num_rows, num_cols, 0.2, seed=seed)
    ws = partition(csr)
    assert total_rows(ws) == num_rows
    rows, cols, vals = [], [], []
    for w in ws:
        w.validate()
        r, c, v = w.decondense()
        rows.extend(r.tolist())
        cols.extend(c.tolist())
        vals.extend(v.tolist())
    rebuilt = SparseCsr.from_coo(num_rows, num_cols, np.array(rows), np.array(cols), np.array(vals))
    assert np.array_equal(rebuilt.row_ptr, csr.row_ptr)
    assert np.array_equal(rebuilt.col_idx, csr.col_idx)
    assert np.array_equal(rebuilt.values, csr.values)


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_feature_ranges(seed):
    csr = random_csr(48, 32, 0.15, seed=seed)
    for w in partition(csr):
        f = features(w)
        if w.nnz == 0:
            assert f.ncols == 0 and f.density == 0.0 and f.computing_intensity == 0.0
            continue
        assert 0.0 < f.density <= 1.0
        # every recorded column holds at least one entry
        assert f.computing_intensity >= 1.0
        assert f.ncols == len(set(w.nonzero_cols.tolist()))


def test_feature_values_hand_computed():
    # 16 rows, 24 entries over 6 distinct columns: density 24/96, ci 4
    rng = np.random.default_rng(7)
    rows = rng.integers(0, 16, size=24)
    cols = np.repeat(np.arange(6), 4)[:24]
    # ensure (row, col) pairs unique
    pairs = sorted(set(zip(rows.tolist(), cols.tolist())))
    while len(pairs) < 24:
        pairs.append((len(pairs) % 16, (len(pairs) * 7) % 6))
        pairs = sorted(set(pairs))
    pairs = pairs[:24]
    r = np.array([p[0] for p in pairs])
    c = np.array([p[1] for p in pairs])
    csr = SparseCsr.from_coo(16, 6, r, c, np.ones(24))
    (w,) = partition(csr)
    f = features(w)
    assert f.ncols == 6
    assert f.density == 24 / (16 * 6)
    assert f.computing_intensity == 4.0


def test_tile_count_ceiling():
    def mk(ncols):
        # all entries on the last row; layout is irrelevant to the tile count
        return RowWindow(
            window_id=0,
            row_start=0,
            row_count=16,
            nonzero_cols=np.arange(ncols, dtype=np.int64),
            local_ptr=np.concatenate([np.zeros(16, dtype=np.int64), [ncols]]),
            cond_cols=np.arange(ncols, dtype=np.int64),
            values=np.ones(ncols),
        )

    assert tile_count(mk(8)) == 1
    assert tile_count(mk(9)) == 2
    assert tile_count(mk(130)) == 17
    assert tile_count(mk(1)) == 1
    for n in (1, 7, 8, 9, 64, 65, 130):
        assert tile_count(mk(n)) == math.ceil(n / 8)


def test_empty_matrix_partitions_to_nothing():
    csr = SparseCsr.from_coo(0, 5, np.array([]), np.array([]), np.array([]))
    assert partition(csr) == []


def test_partition_rejects_bad_height():
    with pytest.raises(ValueError):
        partition(random_csr(4, 4, 0.5, seed=0), window_height=0)


def test_partition_is_deterministic():
    csr = random_csr(40, 40, 0.1, seed=5)
    a, b = partition(csr), partition(csr)
    for wa, wb in zip(a, b):
        assert np.array_equal(wa.nonzero_cols, wb.nonzero_cols)
        assert np.array_equal(wa.cond_cols, wb.cond_cols)
        assert np.array_equal(wa.values, wb.values)


def test_custom_window_height():
    csr = random_csr(20, 10, 0.3, seed=6)
    ws = partition(csr, window_height=7)
    assert [w.row_count for w in ws] == [7, 7, 6]
