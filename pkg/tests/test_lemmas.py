"""Lemma verifier suites at a small bridge cap (fast); cap 4 runs in the
acceptance module."""

import pytest

from ktsurf.lemmas import (LEMMA_IDS, LemmaError, children_of, verify_lemma)
from ktsurf.curves import round_curve, PuncturedSphere
from ktsurf.pants import validate_pants


def test_all_lemmas_pass_at_cap_three():
    for lemma in LEMMA_IDS:
        reports = verify_lemma(lemma, bridge_cap=3)
        assert reports, lemma
        bad = [r for r in reports if not r.ok]
        assert not bad, f"{lemma}: {[r.summary() for r in bad[:2]]}"


def test_unknown_lemma_id():
    with pytest.raises(LemmaError):
        verify_lemma("edp99")


def test_children_of_nested_family():
    sph = PuncturedSphere(6)
    p = validate_pants(sph, [round_curve(sph, 0, 1), round_curve(sph, 0, 2),
                             round_curve(sph, 0, 3)])
    outer = p.curves[-1]  # encloses {0,1,2,3}
    curves, punctures = children_of(p, round_curve(sph, 0, 3))
    assert [sorted(c.base) for c in curves] == [[0, 2]]
    assert punctures == [3]
    curves, punctures = children_of(p, round_curve(sph, 0, 1))
    assert curves == [] and punctures == [0, 1]


def test_mainlemma2_on_torus():
    reports = verify_lemma("mainlemma2", bridge_cap=3)
    assert any(r.instance == "T" for r in reports)
    assert all(r.ok for r in reports)
