"""Necklace enumeration, incremental profiles, ADS search, existence grid."""

import csv
import io
import random
from itertools import combinations
from math import comb

import pytest

from diffset.adsearch import (
    GridCell,
    NecklaceCursor,
    enumerate_fixed_density,
    existence_grid,
    forced_params,
    grid_to_csv,
    grid_to_text,
    naive_ads_scan,
    necklace_count,
    rotation_canonical,
    search_ads,
    verify_witness,
)
from diffset.diffcore import classify, difference_profile
from diffset.groups import GroupSpec
from diffset.report import STATUS_DS_ONLY, STATUS_EXISTS, STATUS_NONE, STATUS_TIMEOUT


def brute_necklace_count(v, k):
    """Oracle: group all k-subsets by rotation class, count classes."""
    classes = set()
    for subset in combinations(range(v), k):
        classes.add(rotation_canonical(subset, v))
    return len(classes)


def test_counts_match_burnside_and_brute():
    for v in range(1, 13):
        for k in range(0, v + 1):
            burnside = necklace_count(v, k)
            assert enumerate_fixed_density(v, k) == burnside
            assert brute_necklace_count(v, k) == burnside


def test_count_examples():
    assert enumerate_fixed_density(4, 2) == 2
    assert necklace_count(4, 2) == 2
    for v in (5, 9, 14):
        assert enumerate_fixed_density(v, 1) == 1


def test_no_rotation_class_visited_twice():
    for v in range(4, 21, 4):
        for k in (2, 3, v // 2):
            seen = set()
            def visit(ones, _seen=seen, _v=v):
                canon = rotation_canonical(ones, _v)
                assert canon not in _seen
                _seen.add(canon)
            n = enumerate_fixed_density(v, k, visit)
            assert n == len(seen) == necklace_count(v, k)


def test_cursor_incremental_profile_matches_recount():
    rng = random.Random(42)
    for v, k in ((12, 4), (15, 6), (18, 5)):
        cur = NecklaceCursor(v, k)
        G = GroupSpec([v])
        sampled = []

        def visit(c):
            if rng.random() < 0.25:
                fresh = difference_profile(sorted(c.ones), G)
                assert c.counts == fresh.counts
                assert c.profile_max() == max(fresh.counts[1:])
                sampled.append(1)

        cur.walk(visit)
        assert cur.visited == necklace_count(v, k)
        assert sampled  # the sampling actually fired


def test_forced_params_examples():
    assert forced_params(39, 17) == (7, 32, 6)
    assert forced_params(61, 30) == (14, 30, 30)
    assert forced_params(48, 17) == (5, 10, 10)
    assert forced_params(50, 18) == (6, 37, 12)
    assert forced_params(53, 17) == (5, 40, 12)
    assert forced_params(56, 17) == (4, 3, 3)


def test_search_matches_naive_oracle():
    for v in range(6, 15):
        for k in range(2, v // 2 + 1):
            got = search_ads(v, k)
            want = naive_ads_scan(v, k)
            assert got.status == want.status, (v, k)
            if got.witness is not None:
                cls = classify(got.witness, GroupSpec([v]))
                lam, t, _ = forced_params(v, k)
                if got.status == STATUS_EXISTS:
                    assert cls.is_ads() and (cls.lam, cls.t) == (lam, t)
                else:
                    assert cls.is_ds() and cls.lam == lam


def test_search_planar_cell_reports_ds_only():
    rep = search_ads(7, 3)
    assert rep.status == STATUS_DS_ONLY
    cls = classify(rep.witness, GroupSpec([7]))
    assert cls.is_ds() and cls.lam == 1


def test_search_witness_counting_identity():
    rep = search_ads(10, 4)
    assert rep.status == STATUS_EXISTS
    cls = classify(rep.witness, GroupSpec([10]))
    assert cls.t == (cls.lam + 1) * 9 - 12


def test_search_count_mode_vs_brute():
    # count accepted rotation classes independently
    for v, k in ((10, 4), (11, 5), (13, 4)):
        lam, t, _ = forced_params(v, k)
        classes = set()
        for subset in combinations(range(v), k):
            counts = [0] * v
            for a, b in combinations(subset, 2):
                d = (a - b) % v
                counts[d] += 1
                counts[v - d] += 1
            if set(counts[1:]) <= {lam, lam + 1}:
                classes.add(rotation_canonical(subset, v))
        rep = search_ads(v, k, "count")
        assert rep.count == len(classes), (v, k)


def test_search_timeout_status():
    rep = search_ads(40, 15, node_limit=200)
    assert rep.status == STATUS_TIMEOUT


def test_search_validates_range():
    with pytest.raises(ValueError):
        search_ads(10, 9)
    with pytest.raises(ValueError):
        search_ads(10, 1)


def test_grid_symmetry_and_witnesses():
    cells = existence_grid(12)
    by_vk = {(c.v, c.k): c for c in cells}
    for c in cells:
        mate = by_vk.get((c.v, c.v - c.k))
        if mate:
            assert mate.status == c.status
        assert verify_witness(c)
        lam, t, th = forced_params(c.v, c.k)
        assert (c.lam, c.t, c.t_hat) == (lam, t, th)


def test_grid_csv_and_text():
    cells = existence_grid(8)
    text = grid_to_csv(cells)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["v", "k", "lambda", "t", "t_hat", "status", "witness"]
    assert len(rows) == len(cells) + 1
    rendered = grid_to_text(cells)
    assert "v\\k" in rendered


def test_grid_timeout_cells_do_not_abort():
    cells = existence_grid(14, v_min=13, node_limit=50)
    assert cells
    assert any(c.status == STATUS_TIMEOUT for c in cells)


def test_rotation_canonical():
    assert rotation_canonical([2, 3], 4) == (0, 1)
    assert rotation_canonical([1, 3], 4) == (0, 2)
    assert rotation_canonical([], 5) == ()


@pytest.mark.extended
def test_56_17_ads_exists_extended():
    rep = search_ads(56, 17, time_limit=3600)
    assert rep.status == STATUS_EXISTS
    cls = classify(rep.witness, GroupSpec([56]))
    assert (cls.v, cls.k, cls.lam, cls.t) == (56, 17, 4, 3)
