"""Invariant machinery: certificates, composition, torus witnesses."""

import pytest

from ktsurf.curves import enclosed_punctures
from ktsurf.invariants import (InvariantError, find_torus_cut_reducers,
                               format_certificate, is_u_spine, kt_bounds,
                               kt_lower, kt_upper, parse_certificate,
                               verify_certificate)
from ktsurf.tangles import is_cut_reducing
from ktsurf.trisection import (Spine, spine_of_expression, standard)


def test_standard_non_torus_values():
    for name in ("U", "P+", "P-", "K20", "K11", "K02"):
        cert = kt_bounds(standard(name))
        assert cert.l_upper == cert.lstar_upper == 0, name
        assert cert.exact
        assert verify_certificate(cert).ok


def test_torus_value_and_structure():
    cert = kt_bounds(standard("T"))
    assert cert.l_upper == cert.lstar_upper == 3
    assert cert.lower == 3 and cert.justification == "torus-count"
    assert cert.exact
    # Three cross paths of length one.
    assert sorted(r.value for r in cert.pants.cross.values()) == [1, 1, 1]
    assert verify_certificate(cert).ok


def test_u_spine_recognition_and_short_circuit():
    assert is_u_spine(standard("U"))
    assert not is_u_spine(standard("P+"))
    assert not is_u_spine(standard("T"))
    cert = kt_upper(standard("U"))
    assert cert.l_upper == 0 and cert.lstar_upper == 0
    assert "definition" in cert.pants.note


def test_kt_lower_tags():
    assert kt_lower(spine_of_expression("T + T + P+")) == (6, "torus-count")
    assert kt_lower(spine_of_expression("U + K11")) == (0, "trivial-zero")
    opaque = Spine(*standard("T").tangles)
    assert kt_lower(opaque) == (0, "trivial-zero")


def test_distant_sum_exactness():
    for expr, want in [("T + P+", 3), ("T + T", 6), ("K20 + K02", 0)]:
        cert = kt_bounds(spine_of_expression(expr))
        assert cert.exact and cert.l_upper == want, expr
        assert verify_certificate(cert).ok, expr


def test_opaque_spine_is_bounds_only_unless_zero():
    opaque = Spine(*standard("T").tangles)
    cert = kt_bounds(opaque)
    assert cert.lower == 0
    assert cert.l_upper == 3
    assert not cert.exact


def test_connected_sum_upper_only():
    # Tori joined by a connected sum carry no certified lower bound.
    s = spine_of_expression("T # T")
    assert kt_lower(s) == (0, "trivial-zero")


def test_find_torus_cut_reducers():
    s = standard("T")
    gammas = find_torus_cut_reducers(s)
    assert set(gammas) == {(1, 0), (2, 0), (3, 0)}
    for (i, _), g in gammas.items():
        assert is_cut_reducing(g, s.unlink(i))
        assert len(enclosed_punctures(g)) == 3

    two = find_torus_cut_reducers(spine_of_expression("T + T"))
    assert len(two) == 6
    blocks = {l for (_, l) in two}
    assert blocks == {0, 1}
    for (i, l), g in two.items():
        block = set(range(6 * l, 6 * l + 6))
        assert len(enclosed_punctures(g) & block) == 3

    assert find_torus_cut_reducers(standard("P+")) == {}
    with pytest.raises(InvariantError, match="metadata-missing"):
        find_torus_cut_reducers(Spine(*standard("T").tangles))


def test_certificate_round_trip():
    for expr in ("P+", "T", "T + P+"):
        cert = kt_bounds(spine_of_expression(expr))
        text = format_certificate(cert)
        parsed = parse_certificate(text)
        assert parsed.lower == cert.lower
        assert parsed.justification == cert.justification
        assert parsed.l_upper == cert.l_upper
        assert parsed.lstar_upper == cert.lstar_upper
        assert parsed.spine == cert.spine
        for kind in ("pants", "dual"):
            a = getattr(parsed, kind)
            b = getattr(cert, kind)
            assert set(a.pairs) == set(b.pairs)
            for i in a.pairs:
                assert a.pairs[i].p_plus == b.pairs[i].p_plus
                assert a.pairs[i].p_minus == b.pairs[i].p_minus
                assert a.pairs[i].realized.path == b.pairs[i].realized.path
            for label in a.cross:
                assert a.cross[label].value == b.cross[label].value
                assert a.cross[label].path == b.cross[label].path
        assert format_certificate(parsed) == text
        # A parsed certificate re-verifies from scratch.
        assert verify_certificate(parsed).ok


def test_verification_catches_corruption():
    cert = kt_bounds(standard("T"))
    cert.pants.total = 2  # forge a better bound
    rep = verify_certificate(cert)
    assert not rep.ok


def test_dual_not_above_pants():
    for expr in ("P+", "K20", "T", "T + P+"):
        cert = kt_bounds(spine_of_expression(expr))
        assert cert.lstar_upper <= cert.l_upper
