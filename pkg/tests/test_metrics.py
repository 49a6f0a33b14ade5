import random
from fractions import Fraction
from itertools import permutations
from math import comb, factorial

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from simplex_lab.linalg import bareiss_det, rank_exact
from simplex_lab.metrics import (
    area_map,
    cm_volume_squared,
    dimension_from_edges,
    edge_position,
    gram_volume_squared,
    heron_area_squared,
    pairs,
    relabel_areas,
    relabel_edges,
    restrict_edges,
    triples,
)
from simplex_lab.rings import LaurentPoly, QuadExt

from .conftest import small_rationals


def leibniz_det(m):
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Fraction(-1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            term *= m[i][j]
        total += term
    return total


def edge_vectors(n):
    return st.lists(small_rationals, min_size=comb(n + 1, 2), max_size=comb(n + 1, 2))


# --- indexing ---------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 8))
def test_pair_index_roundtrip(n):
    ps = pairs(n)
    assert len(ps) == comb(n + 1, 2)
    assert [edge_position(n, i, j) for i, j in ps] == list(range(len(ps)))
    assert [edge_position(n, j, i) for i, j in ps] == list(range(len(ps)))
    assert list(ps) == sorted(ps)
    assert dimension_from_edges(len(ps)) == n
    assert len(triples(n)) == comb(n + 1, 3)


def test_bad_edge_count():
    with pytest.raises(ValueError):
        dimension_from_edges(7)


# --- determinant engine --------------------------------------------------------


@given(st.integers(1, 5).flatmap(lambda k: st.lists(st.lists(small_rationals, min_size=k, max_size=k), min_size=k, max_size=k)))
@settings(max_examples=80)
def test_bareiss_matches_leibniz(m):
    assert bareiss_det(m) == leibniz_det(m)


@given(
    st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 5).flatmap(
            lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
)
@settings(max_examples=80)
def test_rank_matches_sympy(m):
    assert rank_exact(m) == sympy.Matrix(m).rank()


def test_rank_identity():
    eye = [[Fraction(int(i == j)) for j in range(10)] for i in range(10)]
    assert rank_exact(eye) == 10


def test_quadext_rank_matches_sympy():
    r = sympy.sqrt(-15)
    rng = random.Random(3)
    for _ in range(20):
        ab = [[(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(4)] for _ in range(3)]
        ab[2] = [(x0 + y0, x1 + y1) for (x0, x1), (y0, y1) in zip(ab[0], ab[1])] if rng.random() < 0.5 else ab[2]
        ours = rank_exact([[QuadExt(a, b) for a, b in row] for row in ab])
        ref = sympy.Matrix([[a + b * r for a, b in row] for row in ab]).rank(simplify=True)
        assert ours == ref


# --- volume ----------------------------------------------------------------------


def test_segment_volume():
    assert cm_volume_squared([Fraction(4)]) == 4
    assert gram_volume_squared([Fraction(4)]) == 4


def test_regular_4_simplex_volume(ones4):
    assert cm_volume_squared(ones4) == Fraction(5, 9216)
    assert Fraction(5, 9216) == Fraction(5, 2**10 * 3**2)
    assert gram_volume_squared(ones4) == Fraction(5, 9216)


def test_equilateral_triangle():
    assert gram_volume_squared([Fraction(1)] * 3) == Fraction(3, 16)
    assert cm_volume_squared([Fraction(1)] * 3) == Fraction(3, 16)
    assert area_map([Fraction(1)] * 3) == [Fraction(3, 16)]


@pytest.mark.parametrize("n", range(1, 7))
def test_cm_equals_gram_random(n):
    rng = random.Random(100 + n)
    for _ in range(60):
        s = [Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(comb(n + 1, 2))]
        assert cm_volume_squared(s) == gram_volume_squared(s)


@pytest.mark.parametrize("n", range(1, 6))
def test_volume_from_coordinates(n):
    # integer point coordinates give an exact squared volume (det / n!)^2
    rng = random.Random(n)
    pts = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n + 1)]
    s = [Fraction(sum((pts[i][k] - pts[j][k]) ** 2 for k in range(n))) for i, j in pairs(n)]
    edge = [[pts[i][k] - pts[0][k] for k in range(n)] for i in range(1, n + 1)]
    vol = leibniz_det(edge) / factorial(n)
    assert cm_volume_squared(s) == vol * vol


def test_float_path_agrees(ones4):
    w = cm_volume_squared([1.0] * 10)
    assert abs(w - 5 / 9216) < 1e-15
    wc = cm_volume_squared([1.0 + 0j] * 10)
    assert abs(wc - 5 / 9216) < 1e-15


def test_laurent_volume_matches_evaluation():
    t = LaurentPoly.t()
    s = [t, t + 1, LaurentPoly.constant(2), t**-1, 3 * t, t * t - 1]
    W = cm_volume_squared(s)
    for t0 in (Fraction(2), Fraction(-3, 5), Fraction(7, 2)):
        assert W.evaluate(t0) == cm_volume_squared([e.evaluate(t0) for e in s])


def test_quadext_volume_matches_complex():
    r = QuadExt(0, Fraction(1, 5))
    s = [r, -r, r, r, -r, r, -r, -r, r, r]
    exact = cm_volume_squared(s)
    approx = cm_volume_squared([complex(x) for x in s])
    assert abs(complex(exact) - approx) < 1e-12


# --- Heron map -------------------------------------------------------------------


@pytest.mark.parametrize(
    "sides, expected",
    [((1, 1, 1), Fraction(3, 16)), ((0, 5, 5), 0), ((3, 1, 1), Fraction(3, 16))],
)
def test_heron(sides, expected):
    assert heron_area_squared(*map(Fraction, sides)) == expected


def test_area_map_regular(ones4):
    assert area_map(ones4) == [Fraction(3, 16)] * 10


@given(st.integers(2, 5).flatmap(edge_vectors))
@settings(max_examples=40)
def test_area_map_sign_symmetry(s):
    assert area_map([-x for x in s]) == area_map(s)


@given(st.integers(2, 5).flatmap(edge_vectors))
@settings(max_examples=40)
def test_volume_negation_parity(s):
    # W is homogeneous of degree n in the squared edges
    n = dimension_from_edges(len(s))
    assert cm_volume_squared([-x for x in s]) == (-1) ** n * cm_volume_squared(s)


@given(st.integers(2, 5).flatmap(edge_vectors), small_rationals)
@settings(max_examples=40)
def test_scaling(s, lam):
    n = dimension_from_edges(len(s))
    scaled = [lam * x for x in s]
    assert area_map(scaled) == [lam * lam * S for S in area_map(s)]
    assert cm_volume_squared(scaled) == lam**n * cm_volume_squared(s)


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(edge_vectors(n), st.permutations(list(range(n + 1))))))
@settings(max_examples=40)
def test_permutation_equivariance(data):
    s, perm = data
    assert area_map(relabel_edges(s, perm)) == relabel_areas(area_map(s), perm)
    assert cm_volume_squared(relabel_edges(s, perm)) == cm_volume_squared(s)


def test_restrict_edges():
    s = [Fraction(k) for k in range(10)]  # n = 4
    sub = restrict_edges(s, (1, 2, 4))
    assert sub == [s[edge_position(4, 1, 2)], s[edge_position(4, 1, 4)], s[edge_position(4, 2, 4)]]


def test_area_map_needs_triangles():
    with pytest.raises(ValueError):
        area_map([Fraction(1)])
