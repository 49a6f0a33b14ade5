"""Exact differential of the Heron map, its rank, and image comparisons."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from .errors import PreconditionError
from .linalg import hstack, rank_exact
from .metrics import dimension_from_edges, pair_index, pairs, triples

EIGHTH = Fraction(1, 8)


def jacobian(s: Sequence[Any]) -> list[list[Any]]:
    """Matrix of partial derivatives dS_ijk / ds_lm.

    Rows follow the triple order, columns the pair order. Each row has at
    most three nonzero entries, at the pairs inside its triple:
    ``dS_ijk/ds_ij = (s_jk + s_ki - s_ij) / 8``.
    """
    n = dimension_from_edges(len(s))
    if n < 2:
        raise ValueError("jacobian needs n >= 2")
    idx = pair_index(n)
    zero = s[0] - s[0]
    rows = []
    for i, j, k in triples(n):
        row = [zero] * len(s)
        a, b, c = idx[(i, j)], idx[(j, k)], idx[(i, k)]
        sa, sb, sc = s[a], s[b], s[c]
        row[a] = _eighth(sb + sc - sa)
        row[b] = _eighth(sa + sc - sb)
        row[c] = _eighth(sa + sb - sc)
        rows.append(row)
    return rows


def _eighth(x: Any) -> Any:
    if isinstance(x, (int, Fraction)):
        return EIGHTH * x
    return x / 8


def full_column_rank(m: Sequence[Sequence[Any]]) -> bool:
    return rank_exact(m) == len(m[0])


def images_equal(m1: Sequence[Sequence[Any]], m2: Sequence[Sequence[Any]]) -> bool:
    """Whether two full-column-rank matrices have the same column space.

    Decided by ``rank([m1 | m2]) == rank(m1) == number of columns``.
    """
    if len(m1) != len(m2) or len(m1[0]) != len(m2[0]):
        raise PreconditionError("matrices must have the same shape")
    cols = len(m1[0])
    for name, m in (("first", m1), ("second", m2)):
        r = rank_exact(m)
        if r != cols:
            raise PreconditionError(f"{name} matrix is rank deficient ({r} < {cols})")
    return rank_exact(hstack(m1, m2)) == cols


def image_sweep(points: Sequence[Any]) -> dict[str, Any]:
    """Compare the images of the differentials at every pair of catalog points.

    ``points`` are catalog points (anything with ``label`` and
    ``coordinates``). Ranks of the individual matrices are computed once.
    Returns the boolean matrix keyed by labels and the list of pairs where
    image equality disagrees with equality of the underlying pairings.
    """
    jacs = [jacobian(p.coordinates) for p in points]
    cols = len(jacs[0][0])
    for p, m in zip(points, jacs):
        if rank_exact(m) != cols:
            raise PreconditionError(f"differential at {p.label} is rank deficient")
    labels = [p.label for p in points]
    equal: dict[str, dict[str, bool]] = {lab: {} for lab in labels}
    mismatches = []
    for a in range(len(points)):
        equal[labels[a]][labels[a]] = True
        for b in range(a + 1, len(points)):
            same = rank_exact(hstack(jacs[a], jacs[b])) == cols
            equal[labels[a]][labels[b]] = equal[labels[b]][labels[a]] = same
            expected = points[a].pairing == points[b].pairing
            if same != expected:
                mismatches.append((labels[a], labels[b]))
    return {"labels": labels, "equal": equal, "mismatches": mismatches, "pairs_checked": len(points) * (len(points) - 1) // 2}


def jacobian_to_json(m: Sequence[Sequence[Any]], n: int) -> dict[str, Any]:
    from .rings import encode_scalar

    return {
        "n": n,
        "rows": ["".join(map(str, t)) for t in triples(n)],
        "cols": ["".join(map(str, p)) for p in pairs(n)],
        "entries": [[encode_scalar(x) for x in row] for row in m],
    }
