"""Add/remove-element constructions and the database scanner."""

import pytest

from diffset.diffcore import classify, sumset
from diffset.extend import (
    addable_elements,
    extension_report,
    removable_elements,
    scan_database,
)
from diffset.families import SPORADIC_RECORDS, paley, power_residues, sporadic
from diffset.groups import GroupSpec


def general_addable(D, G):
    """Literal Theorem condition (g-D) disjoint from (D-g): oracle for odd v."""
    els = G.coerce_set(D)
    dset = set(els)
    out = []
    for g in G.elements():
        if g in dset:
            continue
        if not ({G.sub(g, d) for d in els} & {G.sub(d, g) for d in els}):
            out.append(g)
    return out


def general_removable(D, G):
    els = G.coerce_set(D)
    out = []
    for d in els:
        inter = {G.sub(d, x) for x in els} & {G.sub(x, d) for x in els}
        if inter == {G.identity()}:
            out.append(d)
    return out


def test_table1_z44_addable():
    rec = sporadic("16-6-2-Z4xZ4")
    add = addable_elements(rec.elements, rec.group)
    assert (1, 1) in add
    cls = classify(list(rec.elements) + [(1, 1)], rec.group)
    assert cls.is_ads() and (cls.v, cls.k, cls.lam, cls.t) == (16, 7, 2, 3)


def test_paley7_add_zero_gives_ds():
    G = GroupSpec([7])
    D = sorted(paley(7))
    add = addable_elements(D, G)
    assert (0,) in add
    cls = classify(D + [0], G)
    assert cls.is_ds() and (cls.v, cls.k, cls.lam) == (7, 4, 2)


def test_non_ds_input_rejected():
    G = GroupSpec([13])
    D = sorted(power_residues(13, 4))  # {1,3,9}: an ADS but not a DS
    assert not classify(D, G).is_ds()
    with pytest.raises(ValueError):
        addable_elements(D, G)
    with pytest.raises(ValueError):
        removable_elements(D, G)


def test_quartic_37_all_removable():
    G = GroupSpec([37])
    D = sorted(power_residues(37, 4))
    rem = removable_elements(D, G)
    assert rem == [G.coerce(d) for d in D]
    for d in D:
        cls = classify([x for x in D if x != d], G)
        assert cls.is_ads() and (cls.v, cls.k, cls.lam, cls.t) == (37, 8, 1, 16)


def test_z2z8_counterexample():
    rec = sporadic("16-6-2-Z2xZ8")
    G, D = rec.group, rec.elements
    S = sumset(D, G)
    assert [g for g in G.elements() if g not in S] == [(0, 0), (0, 4), (1, 4)]
    rem = removable_elements(D, G)
    assert (0, 0) not in rem
    assert (0, 2) not in rem
    # the even-order shortcut would wrongly allow them: 2d avoids S(D)
    assert G.double((0, 0)) not in S and G.double((0, 2)) not in S


def test_octic_73_zero_addable():
    # type O difference set: adding 0 yields the type O0 (73,10,1,54)-ADS
    G = GroupSpec([73])
    D = sorted(power_residues(73, 8))
    add = addable_elements(D, G)
    assert (0,) in add
    cls = classify(D + [0], G)
    assert cls.is_ads() and (cls.v, cls.k, cls.lam, cls.t) == (73, 10, 1, 54)


def test_octic_26041_zero_removal_recovers_type_o_ads():
    # {0} + octic residues mod 26041 is Hall's O0 difference set; removing 0
    # leaves the type O ADS.  The removal condition 2*0 not in S(D) reduces
    # to no two elements of D summing to 0.
    p = 26041
    G = GroupSpec([p])
    C0 = power_residues(p, 8)
    D = sorted(C0 | {0})
    cls = classify(D, G)
    assert cls.is_ds() and (cls.v, cls.k, cls.lam) == (p, 3256, 407)
    assert not ({(-x) % p for x in C0} & C0)  # -1 is an octic nonresidue
    cls = classify(sorted(C0), G)
    assert cls.is_ads() and (cls.v, cls.k, cls.lam, cls.t) == (p, 3255, 406, 6510)


def test_odd_v_sumset_route_matches_general_condition():
    cases = [
        (GroupSpec([7]), sorted(paley(7))),
        (GroupSpec([11]), sorted(paley(11))),
        (GroupSpec([19]), sorted(paley(19))),
        (GroupSpec([37]), sorted(power_residues(37, 4))),
        (GroupSpec([73]), sorted(power_residues(73, 8))),
    ]
    for G, D in cases:
        assert addable_elements(D, G) == general_addable(D, G)
        assert removable_elements(D, G) == general_removable(D, G)


def test_zero_not_in_residue_sumsets():
    # negatives of quartic residues are nonresidues for p = 5 (mod 8),
    # and of octic residues for p = 9 (mod 16)
    for p, e in ((13, 4), (29, 4), (37, 4), (41, 8), (73, 8)):
        G = GroupSpec([p])
        D = sorted(power_residues(p, e))
        assert (0,) not in sumset(D, G)


def test_scan_database():
    records = [(r.group, list(r.elements)) for r in SPORADIC_RECORDS if r.added]
    reports = scan_database(records)
    assert len(reports) == 7
    for rec, rep in zip([r for r in SPORADIC_RECORDS if r.added], reports):
        assert rep.error is None
        assert rec.added in {g for g, _ in rep.addable}

    paley_db = [(GroupSpec([v]), sorted(paley(v))) for v in (7, 11, 19, 23)]
    reports = scan_database(paley_db)
    for rep in reports:
        assert (0,) in {g for g, _ in rep.addable}

    assert scan_database([]) == []


def test_scan_database_collects_failures():
    G = GroupSpec([13])
    reports = scan_database([(G, [0, 1, 2])])
    assert len(reports) == 1 and reports[0].error


def test_scan_database_parallel_order():
    records = [(r.group, list(r.elements)) for r in SPORADIC_RECORDS if r.added]
    seq = scan_database(records, jobs=1)
    par = scan_database(records, jobs=2)
    assert [r.to_json() for r in seq] == [r.to_json() for r in par]


def test_extension_report_json():
    rec = sporadic("16-6-2-Z4xZ4")
    rep = extension_report(rec.elements, rec.group)
    js = rep.to_json()
    assert js["base"]["kind"] == "DS"
    assert [1, 1] in [entry["element"] for entry in js["addable"]]
