"""Squared volume and squared 2-face areas of an n-simplex from squared edge lengths.

Edge data is a flat sequence of ``C(n+1, 2)`` squared lengths ``s_ij`` in
lexicographic pair order ``(0,1), (0,2), ..., (n-1,n)``; area data is a flat
sequence of ``C(n+1, 3)`` values ``S_ijk`` in lexicographic triple order.
This module is the single indexing authority for both.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, isqrt
from typing import Any, Callable, Sequence

from .linalg import det

Pair = tuple[int, int]
Triple = tuple[int, int, int]


@lru_cache(maxsize=None)
def pairs(n: int) -> tuple[Pair, ...]:
    return tuple(combinations(range(n + 1), 2))


@lru_cache(maxsize=None)
def triples(n: int) -> tuple[Triple, ...]:
    return tuple(combinations(range(n + 1), 3))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[Pair, int]:
    return {p: k for k, p in enumerate(pairs(n))}


@lru_cache(maxsize=None)
def triple_index(n: int) -> dict[Triple, int]:
    return {t: k for k, t in enumerate(triples(n))}


def edge_position(n: int, i: int, j: int) -> int:
    if i == j:
        raise ValueError("an edge needs two distinct vertices")
    return pair_index(n)[(min(i, j), max(i, j))]


def dimension_from_edges(count: int) -> int:
    """Invert ``count = C(n+1, 2)``."""
    n = (isqrt(8 * count + 1) - 1) // 2
    if n < 1 or comb(n + 1, 2) != count:
        raise ValueError(f"{count} is not C(n+1, 2) for any n >= 1")
    return n


def dimension_from_areas(count: int) -> int:
    n = 2
    while comb(n + 1, 3) < count:
        n += 1
    if comb(n + 1, 3) != count:
        raise ValueError(f"{count} is not C(n+1, 3) for any n >= 2")
    return n


def edge_matrix(s: Sequence[Any], zero: Any = 0) -> list[list[Any]]:
    """Symmetric (n+1)x(n+1) matrix of squared lengths with zero diagonal."""
    n = dimension_from_edges(len(s))
    m = [[zero] * (n + 1) for _ in range(n + 1)]
    for (i, j), v in zip(pairs(n), s):
        m[i][j] = m[j][i] = v
    return m


def _zero_like(s: Sequence[Any]) -> Any:
    return s[0] - s[0]


def _scale(x: Any, num: int, den: int) -> Any:
    if isinstance(x, (int, Fraction)):
        return Fraction(num, den) * x
    return x * num / den


def cm_volume_squared(s: Sequence[Any]) -> Any:
    """Squared volume via the bordered Cayley-Menger determinant.

    ``W = (-1)^(n+1) / (2^n (n!)^2) * det(B)`` where ``B`` is the edge matrix
    bordered by a row and column of ones with a zero corner.
    """
    n = dimension_from_edges(len(s))
    zero = _zero_like(s)
    one = zero + 1
    inner = edge_matrix(s, zero)
    bordered = [[zero] + [one] * (n + 1)]
    bordered += [[one] + row for row in inner]
    d = det(bordered)
    sign = -1 if n % 2 == 0 else 1
    return _scale(d, sign, 2**n * factorial(n) ** 2)


def gram_volume_squared(s: Sequence[Any]) -> Any:
    """Squared volume via the Gram matrix of the edge vectors from vertex 0.

    ``G_ij = (s_0i + s_0j - s_ij) / 2`` for ``1 <= i, j <= n`` and
    ``W = det(G) / (n!)^2``. Used as an independent check on
    :func:`cm_volume_squared`.
    """
    n = dimension_from_edges(len(s))
    zero = _zero_like(s)
    m = edge_matrix(s, zero)
    gram = [[_scale(m[0][i] + m[0][j] - m[i][j], 1, 2) for j in range(1, n + 1)] for i in range(1, n + 1)]
    return _scale(det(gram), 1, factorial(n) ** 2)


def heron_area_squared(s_ij: Any, s_jk: Any, s_ki: Any) -> Any:
    """Squared triangle area from its three squared side lengths."""
    num = 2 * s_ij * s_jk + 2 * s_jk * s_ki + 2 * s_ki * s_ij - s_ij * s_ij - s_jk * s_jk - s_ki * s_ki
    return _scale(num, 1, 16)


def area_map(s: Sequence[Any]) -> list[Any]:
    """Heron map: squared edge lengths -> squared areas of all 2-faces."""
    n = dimension_from_edges(len(s))
    if n < 2:
        raise ValueError("area_map needs n >= 2")
    idx = pair_index(n)
    out = []
    for i, j, k in triples(n):
        out.append(heron_area_squared(s[idx[(i, j)]], s[idx[(j, k)]], s[idx[(i, k)]]))
    return out


def relabel_edges(s: Sequence[Any], perm: Sequence[int]) -> list[Any]:
    """Edge vector of the simplex whose vertex ``perm[v]`` is the old vertex ``v``."""
    n = dimension_from_edges(len(s))
    idx = pair_index(n)
    out: list[Any] = [None] * len(s)
    for (i, j), v in zip(pairs(n), s):
        out[idx[tuple(sorted((perm[i], perm[j])))]] = v
    return out


def relabel_areas(S: Sequence[Any], perm: Sequence[int]) -> list[Any]:
    n = dimension_from_areas(len(S))
    idx = triple_index(n)
    out: list[Any] = [None] * len(S)
    for t, v in zip(triples(n), S):
        out[idx[tuple(sorted(perm[x] for x in t))]] = v
    return out


def restrict_edges(s: Sequence[Any], vertices: Sequence[int]) -> list[Any]:
    """Edge vector of the face spanned by ``vertices`` (relabelled 0..k in the given order)."""
    n = dimension_from_edges(len(s))
    k = len(vertices) - 1
    return [s[edge_position(n, vertices[a], vertices[b])] for a, b in pairs(k)]


def map_entries(f: Callable[[Any], Any], values: Sequence[Any]) -> list[Any]:
    return [f(v) for v in values]
