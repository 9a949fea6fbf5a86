"""Residue families, Singer construction, and embedded sporadic records."""

import pytest

from diffset.diffcore import classify
from diffset.families import (
    SPORADIC_RECORDS,
    FamilySpec,
    generate,
    generate_classified,
    paley,
    power_residues,
    power_residues_via_root,
    singer_planar,
    sporadic,
    sporadic_ids,
)
from diffset.groups import GroupSpec
from diffset.mgr import canonical_affine_form


def test_power_residues_squares_mod_7():
    assert power_residues(7, 2) == {x * x % 7 for x in range(1, 7)} == {1, 2, 4}


def test_power_residues_quartic_37():
    want = {pow(x, 4, 37) for x in range(1, 37)}
    got = power_residues(37, 4)
    assert got == want == {1, 7, 9, 10, 12, 16, 26, 33, 34}
    assert str(classify(sorted(got), GroupSpec([37]))) == "(37,9,2)-DS"


def test_power_residues_octic_73():
    got = power_residues(73, 8)
    assert len(got) == 9
    cls = classify(sorted(got), GroupSpec([73]))
    assert cls.is_ds() and (cls.v, cls.k, cls.lam) == (73, 9, 1)


def test_power_residues_closure_and_generator_route():
    for p, e in ((37, 4), (73, 8), (29, 4), (41, 8)):
        C0 = power_residues(p, e)
        assert power_residues_via_root(p, e) == C0
        assert len(C0) == (p - 1) // e
        some = sorted(C0)[:3]
        for r in some:
            assert {x * r % p for x in C0} == C0


def test_power_residues_errors():
    with pytest.raises(ValueError):
        power_residues(10, 2)
    with pytest.raises(ValueError):
        power_residues(11, 4)  # 4 does not divide 10


def test_paley():
    assert paley(7) == {1, 2, 4}
    assert paley(11) == {x * x % 11 for x in range(1, 11)} == {1, 3, 4, 5, 9}
    for v in (7, 11, 19, 23):
        cls = classify(sorted(paley(v)), GroupSpec([v]))
        assert cls.is_ds()
        assert (cls.k, cls.lam) == ((v - 1) // 2, (v - 3) // 4)
    with pytest.raises(ValueError):
        paley(13)  # 13 = 1 mod 4
    with pytest.raises(ValueError):
        paley(15)


def test_singer_parameters():
    for q, expect in ((2, (7, 3, 1)), (3, (13, 4, 1)), (5, (31, 6, 1)), (7, (57, 8, 1))):
        D = sorted(singer_planar(q))
        cls = classify(D, GroupSpec([expect[0]]))
        assert cls.is_ds() and (cls.v, cls.k, cls.lam) == expect


def test_singer_2_affinely_equivalent_to_paley_7():
    D = sorted(singer_planar(2))
    assert canonical_affine_form(D, 7) == canonical_affine_form([1, 2, 4], 7)


def test_singer_rejects_nonprime():
    with pytest.raises(ValueError):
        singer_planar(4)


def test_sporadic_records_classify():
    for rec in SPORADIC_RECORDS:
        cls = classify(rec.elements, rec.group)
        assert cls.is_ds(), rec.id
        assert cls.k == len(rec.elements)


def test_sporadic_lookup():
    rec = sporadic("16-6-2-Z4xZ4")
    assert rec.added == (1, 1)
    assert set(rec.elements) == {(0, 0), (1, 0), (2, 0), (0, 1), (3, 2), (0, 3)}
    rec = sporadic("16-6-2-Z2xZ8")
    assert rec.added is None
    rec = sporadic("64-28-12-Z8xZ8")
    assert rec.added == (3, 1) and len(rec.elements) == 28
    assert len(sporadic_ids()) == 8
    with pytest.raises(ValueError):
        sporadic("no-such-record")


def test_generate_family_specs():
    G, D, cls = generate_classified(FamilySpec("PALEY", p=11))
    assert cls.is_ds() and cls.k == 5
    G, D, cls = generate_classified(FamilySpec("PALEY", p=7, with_zero=True))
    assert cls.is_ds() and (cls.v, cls.k, cls.lam) == (7, 4, 2)
    G, D, cls = generate_classified(FamilySpec("QUARTIC_B0", p=37))
    assert (0,) in D and cls.k == 10
    G, D, cls = generate_classified(FamilySpec("OCTIC_O0", p=73))
    assert cls.is_ads() and (cls.v, cls.k, cls.lam, cls.t) == (73, 10, 1, 54)
    G, D = generate(FamilySpec("SINGER", q=3))
    assert len(D) == 4
    G, D = generate(FamilySpec("SPORADIC", sporadic_id="16-6-2-Z4xZ4"))
    assert len(D) == 6
    with pytest.raises(ValueError):
        FamilySpec("NOT_A_FAMILY")
    with pytest.raises(ValueError):
        generate(FamilySpec("PALEY"))
