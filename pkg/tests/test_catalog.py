from fractions import Fraction
from itertools import combinations
from math import comb, factorial

import pytest

from simplex_lab.catalog import (
    N4_VOLUMES,
    SQRT_MINUS_3_5,
    TETRA_DISJUNCTS,
    FiveCycle,
    PartialPairing,
    build_catalog,
    check_volume_table,
    classify_catalog_faces,
    classify_equiareal_tetrahedron,
    cycle_point,
    enumerate_five_cycles,
    enumerate_partial_pairings,
    pairing_point,
    parse_point,
    partial_pairing_count,
    verify_fiber,
    volume_table,
)
from simplex_lab.errors import ContradictionError, PreconditionError, UnsupportedDimension
from simplex_lab.metrics import area_map, restrict_edges, triples


def brute_force_pairings(n):
    """Count sets of disjoint edges of K_{n+1} by checking every edge subset."""
    edges = list(combinations(range(n + 1), 2))
    count = 0
    for k in range(len(edges) + 1):
        for subset in combinations(edges, k):
            verts = [v for e in subset for v in e]
            if len(verts) == len(set(verts)):
                count += 1
    return count


def test_r5_closed_form_by_hand():
    # k = 0..3 terms of 6! / (2^k k! (6-2k)!)
    terms = [factorial(6) // (2**k * factorial(k) * factorial(6 - 2 * k)) for k in range(4)]
    assert terms == [1, 15, 45, 15]
    assert partial_pairing_count(5) == 76


@pytest.mark.parametrize("n", range(1, 6))
def test_pairing_enumeration_matches_brute_force(n):
    found = enumerate_partial_pairings(n)
    assert len(found) == len(set(found)) == brute_force_pairings(n) == partial_pairing_count(n)


def test_small_pairing_counts():
    assert {p.pairs for p in enumerate_partial_pairings(1)} == {frozenset(), frozenset({(0, 1)})}
    assert len(enumerate_partial_pairings(4)) == 26


def test_partial_pairing_rejects_overlap():
    with pytest.raises(ValueError):
        PartialPairing(4, frozenset({(0, 1), (1, 2)}))


def test_five_cycles():
    cycles = enumerate_five_cycles()
    assert len(cycles) == len({c.edges for c in cycles}) == 12
    # complements of 5-cycles in K5 are 5-cycles, and complementing permutes the set
    assert {c.complement().edges for c in cycles} == {c.edges for c in cycles}
    with pytest.raises(ValueError):
        FiveCycle(frozenset({(0, 1), (1, 2), (0, 2), (3, 4), (0, 3)}))


@pytest.mark.parametrize("n, expected", [(4, 64), (5, 152), (6, 464), (7, 1528), (8, 5240)])
def test_catalog_size(n, expected):
    points = build_catalog(n)
    want = 64 if n == 4 else 2 * partial_pairing_count(n)
    assert len(points) == want == expected
    assert len({p.coordinates for p in points}) == len(points)


def test_catalog_cycle_count():
    assert sum(p.kind == "cycle" for p in build_catalog(4)) == 12


def test_catalog_unsupported():
    with pytest.raises(UnsupportedDimension):
        build_catalog(3)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_verify_fiber(n):
    rep = verify_fiber(n)
    assert rep["fiber_ok"] and rep["distinct"] and not rep["failures"]
    assert rep["count"] == rep["expected_count"]


def test_regular_point_and_cycle_point_map_to_y0():
    x0 = pairing_point(PartialPairing(4, frozenset()), 1)
    assert area_map(x0.coordinates) == [Fraction(3, 16)] * 10
    for c in enumerate_five_cycles():
        assert area_map(cycle_point(c).coordinates) == [Fraction(3, 16)] * 10
    assert SQRT_MINUS_3_5 * SQRT_MINUS_3_5 == Fraction(-3, 5)


def test_n6_three_pairs_negative():
    p = pairing_point(PartialPairing(6, frozenset({(0, 1), (2, 3), (4, 5)})), -1)
    assert area_map(p.coordinates) == [Fraction(3, 16)] * 35


def test_volume_table_values():
    table = volume_table(4)
    assert table["pairing::+1"] == table["pairing::-1"] == Fraction(5, 9216)
    assert table["pairing:0-1:+1"] == Fraction(-1, 3072)
    assert table["pairing:0-1,2-3:-1"] == Fraction(-3, 1024)
    assert all(v == Fraction(5, 1024) for k, v in table.items() if k.startswith("cycle"))
    assert N4_VOLUMES == {
        "pairs0": Fraction(5, 9216),
        "pairs1": Fraction(-1, 3072),
        "pairs2": Fraction(-3, 1024),
        "cycle": Fraction(5, 1024),
    }
    assert check_volume_table() == []
    with pytest.raises(UnsupportedDimension):
        volume_table(5)


def test_parse_point_roundtrip():
    for p in build_catalog(4):
        assert parse_point(p.label, 4).coordinates == p.coordinates
    assert parse_point("cycle:0-1,1-2,2-3,3-4,0-4", 4).kind == "cycle"
    with pytest.raises(ValueError):
        parse_point("pairing:0-1:2", 4)


# --- tetrahedra ----------------------------------------------------------------


def test_regular_tetrahedron_is_opposite():
    assert classify_equiareal_tetrahedron([Fraction(1)] * 6)[0] == "opposite"


def test_two_pairs_restriction_is_opposite():
    p = pairing_point(PartialPairing(4, frozenset({(0, 1), (2, 3)})), 1)
    assert "opposite" in classify_equiareal_tetrahedron(restrict_edges(p.coordinates, (0, 1, 2, 3)))


def test_one_pair_restriction_is_cyclic():
    p = pairing_point(PartialPairing(4, frozenset({(0, 1)})), 1)
    held = classify_equiareal_tetrahedron(restrict_edges(p.coordinates, (0, 1, 2, 3)))
    assert held == ["cyclic(1,2,3)"]


def test_cycle_restrictions_classify():
    for c in enumerate_five_cycles():
        for sub in combinations(range(5), 4):
            held = classify_equiareal_tetrahedron(restrict_edges(cycle_point(c).coordinates, sub))
            assert held and set(held) <= set(TETRA_DISJUNCTS)


def test_not_equiareal_precondition():
    with pytest.raises(PreconditionError):
        classify_equiareal_tetrahedron([Fraction(1)] * 5 + [Fraction(2)])


def test_all_catalog_faces():
    rep = classify_catalog_faces(4)
    assert rep["ok"] and rep["checked"] == 64 * 5


def test_contradiction_is_raised_for_fake_input(monkeypatch):
    # patch the area map so a non-conforming tetrahedron passes the precondition
    import simplex_lab.catalog as cat

    monkeypatch.setattr(cat, "area_map", lambda s: [Fraction(3, 16)] * 4)
    with pytest.raises(ContradictionError):
        cat.classify_equiareal_tetrahedron([Fraction(k) for k in range(1, 7)])
