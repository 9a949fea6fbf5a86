"""MGR search, canonicity, spectra, and the Ryser/relative-DS bridge."""

from itertools import combinations
from math import gcd

import pytest

from diffset.diffcore import classify
from diffset.groups import GroupSpec, units
from diffset.mgr import (
    Ruler,
    canonical_affine_form,
    golomb_length,
    is_canonical_affine,
    is_mgr,
    mgr_to_relative_ds,
    optimal_golomb_length,
    ryser_conditions,
    ryser_project,
    search_mgr,
    spectrum,
)
from diffset.report import STATUS_EXISTS, STATUS_NONE, STATUS_TIMEOUT


def brute_mgrs_with_zero(v, k):
    """Oracle: all k-subsets of Z_v containing 0 with all ordered diffs distinct."""
    out = []
    for rest in combinations(range(1, v), k - 1):
        marks = (0,) + rest
        diffs = [(a - b) % v for a in marks for b in marks if a != b]
        if len(set(diffs)) == len(diffs):
            out.append(list(marks))
    return out


def test_is_mgr_examples():
    assert is_mgr([0, 1, 3], 7)
    assert not is_mgr([0, 1, 3, 7], 14)  # difference 7 = 14/2 repeats
    assert is_mgr([0, 1, 3], 8)
    from diffset.diffcore import verify_relative_ds
    assert verify_relative_ds([0, 1, 3], GroupSpec([8]), [0, 4], expect=(4, 2, 3, 1))


def test_is_mgr_matches_classification():
    # a (v,k)-MGR is exactly a two-valued profile with lambda = 0, or a
    # perfect packing (planar-style all-ones is impossible below v-1 diffs)
    for v in (9, 12, 13):
        for marks in combinations(range(v), 3):
            cls = classify(list(marks), GroupSpec([v]))
            want = cls.kind in ("DS", "ADS") and (cls.lam or 0) == 0 and cls.k >= 2
            assert is_mgr(marks, v) == want


def test_canonical_affine_examples():
    assert is_canonical_affine([0, 1, 3], 7)
    assert not is_canonical_affine([0, 2, 6], 7)  # 2*{0,1,3}
    assert is_canonical_affine([0], 9)
    assert not is_canonical_affine([1, 2, 4], 7)  # 0 missing: translate wins


def test_canonical_affine_against_orbit_oracle():
    # exhaustive orbit minimum for every 3-subset of Z_13 containing 0
    v = 13
    for marks in combinations(range(v), 3):
        if marks[0] != 0:
            continue
        orbit_min = canonical_affine_form(marks, v)
        assert is_canonical_affine(marks, v) == (tuple(marks) == orbit_min)


def test_canonicity_soundness_small():
    # ALL-mode canonical output == affine-orbit lex minima of raw enumeration
    for v in range(7, 31, 3):
        for k in (3, 4, 5):
            if v - 1 < k * (k - 1):
                continue
            raw = search_mgr(v, k, "all", canonical=False)
            brute = brute_mgrs_with_zero(v, k)
            assert sorted(map(tuple, raw.witnesses or [])) == sorted(map(tuple, brute))
            canon = search_mgr(v, k, "all", canonical=True)
            minima = {canonical_affine_form(m, v) for m in brute}
            assert sorted(map(tuple, canon.witnesses or [])) == sorted(minima)
            # and pruning does not change the canonical output
            canon2 = search_mgr(v, k, "all", canonical=True, prune=False)
            assert canon.witnesses == canon2.witnesses


def test_search_14_4_chain():
    rep = search_mgr(14, 4, "exists")
    assert rep.status == STATUS_EXISTS
    D, params = mgr_to_relative_ds(rep.witness)
    assert params == (7, 2, 4, 1)
    projected, cls = ryser_project(D, 7)
    assert cls.is_ds() and (cls.v, cls.k, cls.lam) == (7, 4, 2)


def test_search_22_5_none():
    # the (11,5,2) biplane does not lift: no (22,5)-MGR
    rep = search_mgr(22, 5, "exists")
    assert rep.status == STATUS_NONE


def test_search_133_12_exists():
    rep = search_mgr(133, 12, "exists", time_limit=60)
    assert rep.status == STATUS_EXISTS
    assert is_mgr(rep.witness, 133)


def test_pigeonhole_short_circuit():
    rep = search_mgr(12, 4, "exists")
    assert rep.status == STATUS_NONE and rep.nodes == 0


def test_golomb_length_table_vs_search():
    for k in range(1, 8):
        assert optimal_golomb_length(k) == golomb_length(k)
    with pytest.raises(ValueError):
        golomb_length(16)


def test_golomb_bound_consistency_with_paper_tails():
    # the published spectra tails must respect the doubling bound
    for k, tail in ((12, 161), (13, 193), (14, 225), (15, 267)):
        assert tail <= 2 * golomb_length(k) + 1


def test_spectrum_small():
    sp = spectrum(3)
    assert sp.bound == 7 and sp.members == []
    assert sp.contains(7) and sp.contains(100)
    sp = spectrum(4)
    assert sp.bound == 13 and sp.members == []
    sp = spectrum(5)
    assert sp.bound == 23 and sp.members == [21]
    assert is_mgr(sp.witnesses[21], 21)
    assert sp.compact() == ([21], 23)  # (22,5) has no MGR
    sp6 = spectrum(6)
    assert sp6.members == [31] and sp6.bound == 35


def test_spectrum_prune_oracle_k7():
    pruned = spectrum(7, prune=True)
    plain = spectrum(7, prune=False)
    assert pruned.members == plain.members == [48, 49, 50]
    assert pruned.complete and plain.complete


def test_search_count_canonical_unique_planar():
    # the (7,3,1) and (13,4,1) planar difference sets are unique up to
    # affine equivalence
    assert search_mgr(7, 3, "count").count == 1
    assert search_mgr(13, 4, "count").count == 1
    rep = search_mgr(7, 3, "all")
    assert rep.witnesses == [[0, 1, 3]]


def test_search_modes_and_determinism():
    a = search_mgr(31, 6, "count")
    b = search_mgr(31, 6, "count")
    assert a.count == b.count and a.nodes == b.nodes
    c = search_mgr(31, 6, "count", jobs=2)
    assert c.count == a.count
    d = search_mgr(31, 6, "exists", jobs=2)
    assert d.status == STATUS_EXISTS and is_mgr(d.witness, 31)
    assert d.witness == search_mgr(31, 6, "exists").witness


def test_search_timeout():
    rep = search_mgr(80, 9, "count", node_limit=500)
    assert rep.status == STATUS_TIMEOUT
    assert rep.nodes >= 500


def test_ruler_type():
    r = Ruler(13, (0, 1, 3, 9))
    assert r.is_valid()
    assert r.classify().is_ds()
    with pytest.raises(ValueError):
        Ruler(13, (1, 3, 9))
    with pytest.raises(ValueError):
        Ruler(13, (0, 14))


def test_mgr_to_relative_ds_examples():
    D, params = mgr_to_relative_ds([0, 1, 3])
    assert params == (4, 2, 3, 1)
    with pytest.raises(ValueError):
        mgr_to_relative_ds([0, 1, 2])  # not an MGR mod 8
    with pytest.raises(ValueError):
        mgr_to_relative_ds([0, 1, 4], k=4)  # marks/k mismatch


def test_ryser_conditions():
    assert ryser_conditions(7, 4, 1).passed
    assert not ryser_conditions(11, 5, 2).passed
    assert ryser_conditions(9, 9, 2).passed  # pass does not imply existence
    assert ryser_conditions(8, 6, 1).passed  # m even: k-2l = 4
    assert not ryser_conditions(8, 7, 2).passed
    with pytest.raises(ValueError):
        ryser_conditions(7, 4, 1, n=3)


def test_ryser_project_examples():
    projected, cls = ryser_project([0, 1, 3], 4)
    assert projected == [0, 1, 3]
    assert cls.is_ds() and (cls.v, cls.k, cls.lam) == (4, 3, 2)
    with pytest.raises(ValueError):
        ryser_project([0, 1, 2], 4)  # not a relative DS


def test_unpruned_exists_equals_pruned_small():
    for v in range(13, 32):
        a = search_mgr(v, 4, "exists", prune=True)
        b = search_mgr(v, 4, "exists", prune=False)
        assert a.status == b.status


@pytest.mark.extended
def test_search_167_13_none_extended():
    rep = search_mgr(167, 13, "exists", time_limit=3600)
    assert rep.status == STATUS_NONE


@pytest.mark.extended
def test_spectrum_12_matches_paper():
    sp = spectrum(12, time_limit=3600)
    assert sp.complete
    assert sp.compact() == ([133, 156, 158, 159], 161)
