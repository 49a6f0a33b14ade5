from fractions import Fraction

import numpy as np
import pytest

from simplex_lab.catalog import PartialPairing, build_catalog, enumerate_five_cycles, cycle_point, pairing_point
from simplex_lab.errors import PreconditionError
from simplex_lab.linalg import rank_exact
from simplex_lab.linearization import full_column_rank, image_sweep, images_equal, jacobian, jacobian_to_json
from simplex_lab.metrics import area_map, pair_index, triple_index


def test_regular_entries():
    J = jacobian([Fraction(1)] * 10)
    idx, tri = pair_index(4), triple_index(4)
    row = J[tri[(0, 1, 2)]]
    assert row[idx[(0, 1)]] == Fraction(1, 8)
    assert row[idx[(3, 4)]] == 0
    assert sum(1 for x in row if x != 0) == 3


def test_zero_edge_entries():
    s = [Fraction(1)] * 10
    s[pair_index(4)[(0, 1)]] = Fraction(0)
    J = jacobian(s)
    row = J[triple_index(4)[(0, 1, 2)]]
    # d/ds01 = (s12 + s02 - s01)/8 = 2/8 ; d/ds12 = (s01 + s02 - s12)/8 = 0
    assert row[pair_index(4)[(0, 1)]] == Fraction(1, 4)
    assert row[pair_index(4)[(1, 2)]] == 0


def test_finite_differences():
    rng = np.random.default_rng(3)
    s = rng.uniform(0.5, 2.0, 15)
    J = np.array(jacobian(list(s)), dtype=float)
    h = 1e-5
    for col in range(15):
        e = np.zeros(15)
        e[col] = h
        fd = (np.array(area_map(list(s + e))) - np.array(area_map(list(s - e)))) / (2 * h)
        assert np.max(np.abs(fd - J[:, col])) < 1e-6


def test_rank_at_regular_and_cycle():
    x0 = pairing_point(PartialPairing(4, frozenset()), 1)
    assert rank_exact(jacobian(x0.coordinates)) == 10
    assert rank_exact(jacobian(cycle_point(enumerate_five_cycles()[0]).coordinates)) == 10


@pytest.mark.parametrize("n", [4, 5, 6])
def test_full_rank_over_catalog(n):
    assert all(full_column_rank(jacobian(p.coordinates)) for p in build_catalog(n))


def test_images_same_pairing_opposite_sign():
    om = frozenset({(0, 1)})
    a = pairing_point(PartialPairing(5, om), 1)
    b = pairing_point(PartialPairing(5, om), -1)
    assert images_equal(jacobian(a.coordinates), jacobian(b.coordinates))


def test_images_different_pairings():
    a = pairing_point(PartialPairing(5, frozenset({(0, 1)})), 1)
    b = pairing_point(PartialPairing(5, frozenset({(0, 2)})), 1)
    assert not images_equal(jacobian(a.coordinates), jacobian(b.coordinates))


def test_images_equal_precondition():
    good = jacobian([Fraction(1)] * 15)
    bad = [row[:] for row in good]
    for row in bad:
        row[1] = row[0]
    with pytest.raises(PreconditionError):
        images_equal(good, bad)


def test_image_sweep_small_subset():
    pts = build_catalog(5)[:20] + build_catalog(5)[76:96]
    rep = image_sweep(pts)
    assert rep["mismatches"] == []
    assert rep["pairs_checked"] == 40 * 39 // 2


def test_jacobian_json():
    out = jacobian_to_json(jacobian([Fraction(1)] * 10), 4)
    assert out["rows"][0] == "012" and out["cols"][0] == "01"
    assert out["entries"][0][0] == "1/8"
