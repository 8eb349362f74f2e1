"""Pants complex layer and the Farey oracle for the 4-punctured sphere."""

import itertools
import math
import random

import pytest

from ktsurf.curves import (PuncturedSphere, apply_half_twist,
                           geometric_intersection, round_curve)
from ktsurf.farey import (curve_of_slope, farey_distance, farey_distance_bfs,
                          farey_distance_slopes, is_farey_edge,
                          normalize_slope, slope_of_curve)
from ktsurf.pants import (DistanceResult, PantsError, PantsDecomposition,
                          distance_upper, format_pants, is_dual_edge,
                          is_pants_edge, neighbor_candidates, parse_pants,
                          validate_pants)

S4 = PuncturedSphere(4)
S6 = PuncturedSphere(6)


def small_slopes(max_den):
    out = [(1, 0)]
    for q in range(1, max_den + 1):
        for p in range(-max_den, max_den + 1):
            if math.gcd(abs(p), q) == 1:
                out.append((p, q))
    return out


def test_slope_round_trip():
    for p, q in small_slopes(7):
        c = curve_of_slope(S4, p, q)
        assert slope_of_curve(c) == normalize_slope(p, q)


def test_reference_slopes():
    assert slope_of_curve(round_curve(S4, 0, 1)) == (0, 1)
    assert slope_of_curve(round_curve(S4, 1, 2)) == (1, 0)
    assert slope_of_curve(round_curve(S4, 2, 3)) == (0, 1)
    assert slope_of_curve(apply_half_twist(round_curve(S4, 0, 1), 1, +1)) == (1, 1)


def test_intersection_matches_determinant():
    slopes = small_slopes(4)
    rng = random.Random(2)
    for _ in range(40):
        a = rng.choice(slopes)
        b = rng.choice(slopes)
        ca, cb = curve_of_slope(S4, *a), curve_of_slope(S4, *b)
        det = abs(a[0] * b[1] - a[1] * b[0])
        assert geometric_intersection(ca, cb) == 2 * det


def test_farey_distance_against_bfs():
    slopes = small_slopes(5)
    rng = random.Random(6)
    pairs = [(rng.choice(slopes), rng.choice(slopes)) for _ in range(60)]
    pairs += [((0, 1), (1, 0)), ((1, 2), (2, 5)), ((1, 0), (5, 13))]
    for a, b in pairs:
        assert farey_distance_slopes(a, b) == farey_distance_bfs(a, b, den_bound=48)


def test_farey_distance_examples():
    c0 = round_curve(S4, 0, 1)
    c1 = round_curve(S4, 1, 2)
    assert farey_distance(c0, c0) == 0
    assert farey_distance(c0, c1) == 1
    assert farey_distance(c0, curve_of_slope(S4, 2, 5)) == \
        farey_distance_bfs((0, 1), (2, 5))


def test_validate_pants_examples():
    good = validate_pants(S6, [round_curve(S6, 0, 1), round_curve(S6, 0, 2),
                               round_curve(S6, 0, 3)])
    assert len(good) == 3
    with pytest.raises(PantsError, match="intersect"):
        validate_pants(S6, [round_curve(S6, 0, 1), round_curve(S6, 1, 2),
                            round_curve(S6, 0, 3)])
    with pytest.raises(PantsError, match="duplicate"):
        validate_pants(S4, [round_curve(S4, 0, 1), round_curve(S4, 2, 3)])
    with pytest.raises(PantsError, match="needs"):
        validate_pants(S6, [round_curve(S6, 0, 1)])


def test_edges():
    p = validate_pants(S4, [round_curve(S4, 0, 1)])
    q = validate_pants(S4, [round_curve(S4, 1, 2)])
    assert is_pants_edge(p, q)
    assert is_dual_edge(p, q)
    assert not is_pants_edge(p, p)
    assert not is_dual_edge(p, p)
    far = validate_pants(S4, [curve_of_slope(S4, 2, 1)])
    assert geometric_intersection(p.curves[0], far.curves[0]) == 4
    assert is_dual_edge(p, far) and not is_pants_edge(p, far)


def test_edges_differing_twice():
    p = validate_pants(S6, [round_curve(S6, 0, 1), round_curve(S6, 0, 2),
                            round_curve(S6, 0, 3)])
    q = validate_pants(S6, [round_curve(S6, 1, 2), round_curve(S6, 1, 3),
                            round_curve(S6, 0, 3)])
    assert not is_pants_edge(p, q) and not is_dual_edge(p, q)


def test_neighbor_candidates():
    p = validate_pants(S4, [round_curve(S4, 0, 1)])
    nbrs0 = neighbor_candidates(p, 0, twist_budget=0)
    assert validate_pants(S4, [round_curve(S4, 1, 2)]) in nbrs0
    nbrs1 = neighbor_candidates(p, 0, twist_budget=1)
    nbrs2 = neighbor_candidates(p, 0, twist_budget=2)
    assert set(nbrs0) <= set(nbrs1) <= set(nbrs2)
    for q in nbrs1:
        assert is_pants_edge(p, q)


def test_distance_zero_and_one():
    p = validate_pants(S4, [round_curve(S4, 0, 1)])
    q = validate_pants(S4, [round_curve(S4, 1, 2)])
    assert distance_upper(p, p).value == 0
    r = distance_upper(p, q)
    assert r.value == 1 and r.exact and r.verify_path()


def test_distance_matches_farey():
    rng = random.Random(17)
    slopes = small_slopes(5)
    for _ in range(12):
        a, b = rng.choice(slopes), rng.choice(slopes)
        p = validate_pants(S4, [curve_of_slope(S4, *a)])
        q = validate_pants(S4, [curve_of_slope(S4, *b)])
        want = farey_distance_slopes(a, b)
        got = distance_upper(p, q, twist_budget=6, node_budget=200000)
        assert got.value == want
        assert got.verify_path()
        sym = distance_upper(q, p, twist_budget=6, node_budget=200000)
        assert sym.value == want


def test_dual_distance_not_longer():
    rng = random.Random(19)
    slopes = small_slopes(4)
    for _ in range(8):
        a, b = rng.choice(slopes), rng.choice(slopes)
        p = validate_pants(S4, [curve_of_slope(S4, *a)])
        q = validate_pants(S4, [curve_of_slope(S4, *b)])
        dp = distance_upper(p, q, kind="pants", twist_budget=5)
        dd = distance_upper(p, q, kind="dual", twist_budget=5)
        if dp.value is not None and dd.value is not None:
            assert dd.value <= dp.value


def test_pants_text_round_trip():
    p = validate_pants(S6, [round_curve(S6, 0, 1), round_curve(S6, 0, 2),
                            round_curve(S6, 0, 3)])
    text = format_pants(p)
    assert parse_pants(S6, text) == p
    assert format_pants(parse_pants(S6, text)) == text


def test_pants_edge_implies_dual_edge():
    rng = random.Random(29)
    slopes = small_slopes(3)
    for _ in range(15):
        a, b = rng.choice(slopes), rng.choice(slopes)
        p = validate_pants(S4, [curve_of_slope(S4, *a)])
        q = validate_pants(S4, [curve_of_slope(S4, *b)])
        if is_pants_edge(p, q):
            assert is_dual_edge(p, q)


def test_triangle_inequality():
    rng = random.Random(37)
    slopes = small_slopes(4)
    for _ in range(12):
        a, b, c = (rng.choice(slopes) for _ in range(3))
        dab = farey_distance_slopes(a, b)
        dbc = farey_distance_slopes(b, c)
        dac = farey_distance_slopes(a, c)
        assert dac <= dab + dbc
