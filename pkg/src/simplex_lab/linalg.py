"""Determinants and ranks over the scalar rings.

Exact rings go through fraction-free (Bareiss) elimination, so every
intermediate entry is a minor of the input and each division is exact.
That matters for Laurent polynomials, where division is only partially
defined. Floating matrices go to LAPACK's partially pivoted LU.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Any, Sequence

import numpy as np

from .rings import LaurentPoly, RingError, is_exact

Matrix = Sequence[Sequence[Any]]


def _exact_div(a: Any, b: Any) -> Any:
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise RingError(f"inexact integer division {a}/{b}")
        return q
    return a / b


def _normalize(x: Any) -> Any:
    return x if not isinstance(x, bool) else int(x)


def bareiss_det(m: Matrix) -> Any:
    """Determinant of a square matrix over an exact ring (ints, Fraction, QuadExt, LaurentPoly)."""
    a = [[_normalize(x) for x in row] for row in m]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("bareiss_det needs a square matrix")
    zero = a[0][0] - a[0][0]
    sign = 1
    prev: Any = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return zero
        piv = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = _exact_div(ri[j] * piv - f * rk[j], prev)
            ri[k] = zero
        prev = piv
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def float_det(m: Matrix) -> complex | float:
    arr = np.asarray([[complex(x) for x in row] for row in m], dtype=complex)
    det = complex(np.linalg.det(arr))
    if det.imag == 0.0 and all(complex(x).imag == 0.0 for row in m for x in row):
        return det.real
    return det


def det(m: Matrix) -> Any:
    """Determinant dispatched by ring: exact entries use Bareiss, floats use LU."""
    if all(is_exact(x) for row in m for x in row):
        return bareiss_det(m)
    return float_det(m)


def _integer_rows(m: Matrix) -> list[list[int]] | None:
    """Scale each rational row to integers (rank preserving); None if not all rational."""
    out = []
    for row in m:
        if not all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in row):
            return None
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _bareiss_rank(a: list[list[Any]]) -> int:
    rows = len(a)
    if rows == 0:
        return 0
    cols = len(a[0])
    zero = a[0][0] - a[0][0] if cols else 0
    rank = 0
    prev: Any = 1
    for c in range(cols):
        if rank == rows:
            break
        p = rank
        while p < rows and a[p][c] == 0:
            p += 1
        if p == rows:
            continue
        if p != rank:
            a[rank], a[p] = a[p], a[rank]
        piv = a[rank][c]
        rr = a[rank]
        for i in range(rank + 1, rows):
            ri = a[i]
            f = ri[c]
            if f == 0:
                for j in range(c + 1, cols):
                    ri[j] = _exact_div(ri[j] * piv, prev)
            else:
                for j in range(c + 1, cols):
                    ri[j] = _exact_div(ri[j] * piv - f * rr[j], prev)
                ri[c] = zero
        prev = piv
        rank += 1
    return rank


def rank_exact(m: Matrix) -> int:
    """Exact rank by fraction-free elimination.

    Rational matrices are cleared to integers row by row first, which keeps
    the elimination in machine-friendly Python ints.
    """
    ints = _integer_rows(m)
    if ints is not None:
        return _bareiss_rank(ints)
    if not all(is_exact(x) for row in m for x in row):
        raise TypeError("rank_exact needs exact entries")
    if any(isinstance(x, LaurentPoly) for row in m for x in row):
        raise TypeError("rank over the Laurent ring is not supported")
    return _bareiss_rank([[_normalize(x) for x in row] for row in m])


def transpose(m: Matrix) -> list[list[Any]]:
    return [list(col) for col in zip(*m)]


def hstack(m1: Matrix, m2: Matrix) -> list[list[Any]]:
    if len(m1) != len(m2):
        raise ValueError("row counts differ")
    return [list(r1) + list(r2) for r1, r2 in zip(m1, m2)]
