"""Laurent-polynomial edge curves along which areas stay bounded but volume does not.

Two families:

* the odd family, ``n = 2q - 1``: squared lengths are ``0``, ``t`` or ``t + 1``;
  every squared area is the constant ``0`` or ``-1/16`` while the squared
  volume grows linearly in ``t``;
* the ``n = 5`` family with rational parameters ``a, b, c`` (and its
  restriction to ``n = 4``): squared areas tend to nonzero constants while
  the squared volume grows like ``t^2`` (``t^4`` for ``n = 4``).

Along any such curve a product ``w(S) * W`` that is integral over the
polynomial ring in the areas must stay bounded, i.e. have Laurent top
degree ``<= 0``. :func:`witness_degree_certificate` checks that for the
witness products ``Q`` (``n = 4``) and ``P * D`` (``n = 5``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Any, Sequence

from .errors import PreconditionError
from .metrics import area_map, cm_volume_squared, pair_index, pairs, triple_index, triples
from .rings import NEG_INF, LaurentPoly, as_fraction, encode_scalar

T = LaurentPoly.t()


@dataclass(frozen=True)
class EdgeCurve:
    n: int
    entries: tuple[LaurentPoly, ...]
    family: str
    params: dict[str, Fraction] = field(default_factory=dict)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.entries[pair_index(self.n)[(min(i, j), max(i, j))]]

    def areas(self) -> list[LaurentPoly]:
        return area_map(self.entries)

    def volume_squared(self) -> LaurentPoly:
        return cm_volume_squared(self.entries)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "family": self.family,
            "params": {k: str(v) for k, v in self.params.items()},
            "ring": "laurent",
            "entries": [encode_scalar(e) for e in self.entries],
        }


# ---------------------------------------------------------------------------
# odd family
# ---------------------------------------------------------------------------


def odd_curve(q: int) -> EdgeCurve:
    """Curve in dimension ``n = 2q - 1``.

    ``s_ij = 0`` within each half ``{0..q-1}``, ``{q..2q-1}``; ``s_ij = t``
    across the halves, except ``s_{r,q+r} = t + 1`` for ``r = 1..q-1``.
    """
    if q < 3:
        raise ValueError("the odd curve needs q >= 3")
    n = 2 * q - 1
    special = {(r, q + r) for r in range(1, q)}
    entries = []
    for i, j in pairs(n):
        if (i < q) == (j < q):
            entries.append(LaurentPoly())
        elif (i, j) in special:
            entries.append(T + 1)
        else:
            entries.append(T)
    return EdgeCurve(n, tuple(entries), "odd", {"q": Fraction(q)})


def odd_curve_expected_area(q: int, triple: Sequence[int]) -> Fraction:
    tri = set(triple)
    if any({r, q + r} <= tri for r in range(1, q)):
        return Fraction(-1, 16)
    return Fraction(0)


def odd_curve_expected_volume(q: int) -> LaurentPoly:
    n = 2 * q - 1
    return LaurentPoly({1: Fraction(-4) ** (1 - q) / factorial(n) ** 2})


def verify_odd_curve(q: int) -> dict[str, Any]:
    curve = odd_curve(q)
    failures = []
    for t, S in zip(triples(curve.n), curve.areas()):
        want = odd_curve_expected_area(q, t)
        if S != want:
            failures.append({"triple": list(t), "computed": encode_scalar(S), "expected": str(want)})
    W = curve.volume_squared()
    W_expected = odd_curve_expected_volume(q)
    return {
        "family": "odd",
        "q": q,
        "n": curve.n,
        "areas_ok": not failures,
        "area_failures": failures,
        "W": encode_scalar(W),
        "W_expected": encode_scalar(W_expected),
        "volume_ok": W == W_expected,
        "ok": not failures and W == W_expected,
    }


# ---------------------------------------------------------------------------
# n = 5 family and its n = 4 restriction
# ---------------------------------------------------------------------------


def _check_params(a: Fraction, b: Fraction, c: Fraction) -> None:
    if a == 0 or b == 0 or c == 0:
        raise ValueError("a, b, c must be nonzero")
    if a + b == 0:
        raise ValueError("a + b must be nonzero")


def _n5_lengths(a: Fraction, b: Fraction, c: Fraction) -> dict[tuple[int, int], LaurentPoly]:
    inv = LaurentPoly.monomial(1, -1)
    bt = LaurentPoly.monomial(b, 1)
    at = LaurentPoly.monomial(a, 1)
    mixed = LaurentPoly({1: a + b, -3: -c})
    lengths = {(0, 1): inv, (4, 5): inv}
    for p in ((0, 2), (1, 2), (3, 4), (3, 5)):
        lengths[p] = bt
    for p in ((0, 3), (1, 3), (2, 4), (2, 5)):
        lengths[p] = at
    for p in ((0, 4), (1, 4), (0, 5), (1, 5), (2, 3)):
        lengths[p] = mixed
    return lengths


def n5_curve(a: Any, b: Any, c: Any) -> EdgeCurve:
    """Squared lengths ``s_ij = l_ij(t)^2`` of the six-vertex curve."""
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    _check_params(a, b, c)
    lengths = _n5_lengths(a, b, c)
    entries = tuple(lengths[p] ** 2 for p in pairs(5))
    return EdgeCurve(5, entries, "n5", {"a": a, "b": b, "c": c})


def n4_curve(a: Any, b: Any, c: Any) -> EdgeCurve:
    """The ``n5_curve`` with vertex 5 dropped."""
    full = n5_curve(a, b, c)
    entries = tuple(full.entry(i, j) for i, j in pairs(4))
    return EdgeCurve(4, entries, "n4", dict(full.params))


@dataclass(frozen=True)
class AsymptoticClaim:
    quantity: str  # "W" or "S012" style
    top_degree: int
    top_coefficient: Fraction
    remainder_bound: int


def n5_claims(a: Any, b: Any, c: Any) -> list[AsymptoticClaim]:
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    out = []
    groups = [
        (("012", "345"), b * b / 4),
        (("013", "245"), a * a / 4),
        (("014", "015", "045", "145"), (a + b) ** 2 / 4),
        (("023", "123", "234", "235"), a * b * c * (a + b) / 2),
    ]
    for names, value in groups:
        out += [AsymptoticClaim(f"S{name}", 0, value, -4) for name in names]
    out.append(AsymptoticClaim("W", 2, -(a * b * (a + b)) ** 2 / 3600, -2))
    return out


def n4_claims(a: Any, b: Any, c: Any) -> list[AsymptoticClaim]:
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    kept = [cl for cl in n5_claims(a, b, c) if cl.quantity != "W" and "5" not in cl.quantity]
    return kept + [AsymptoticClaim("W", 4, -(a * b * (a + b)) ** 2 / 144, 0)]


def quantity(curve: EdgeCurve, name: str) -> LaurentPoly:
    if name == "W":
        return curve.volume_squared()
    if not name.startswith("S") or len(name) != 4:
        raise ValueError(f"unknown quantity {name!r}")
    tri = tuple(sorted(int(ch) for ch in name[1:]))
    return curve.areas()[triple_index(curve.n)[tri]]


def _fmt_degree(d: int | float) -> Any:
    return "-inf" if d == NEG_INF else int(d)


def verify_asymptotics(curve: EdgeCurve, claims: Sequence[AsymptoticClaim]) -> dict[str, Any]:
    """Check leading terms and remainder degrees exactly.

    A claim ``c * t^d + O(t^k)`` holds when the computed Laurent polynomial
    has top degree ``d`` with coefficient ``c`` and, after subtracting
    ``c * t^d``, a remainder of top degree at most ``k``.
    """
    areas = curve.areas()
    W = curve.volume_squared()
    rows = []
    for cl in claims:
        if cl.quantity == "W":
            value = W
        else:
            tri = tuple(sorted(int(ch) for ch in cl.quantity[1:]))
            value = areas[triple_index(curve.n)[tri]]
        remainder = value - LaurentPoly.monomial(cl.top_coefficient, cl.top_degree)
        ok = (
            value.top_degree() == cl.top_degree
            and value.leading_coefficient() == cl.top_coefficient
            and remainder.top_degree() <= cl.remainder_bound
        )
        rows.append(
            {
                "quantity": cl.quantity,
                "claimed": f"{cl.top_coefficient}*t^{cl.top_degree} + O(t^{cl.remainder_bound})",
                "top_degree": _fmt_degree(value.top_degree()),
                "top_coefficient": str(value.leading_coefficient()),
                "remainder_top_degree": _fmt_degree(remainder.top_degree()),
                "ok": ok,
                "computed": encode_scalar(value),
            }
        )
    return {
        "family": curve.family,
        "n": curve.n,
        "params": {k: str(v) for k, v in curve.params.items()},
        "claims": rows,
        "ok": all(r["ok"] for r in rows),
    }


def areas_bounded_both_ways(curve: EdgeCurve) -> bool:
    """Every squared area tends to a nonzero constant: top degree 0 with nonzero constant."""
    return all(S.top_degree() == 0 for S in curve.areas())


# ---------------------------------------------------------------------------
# witness polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessPolynomial:
    """Product of witness factors in the squared areas.

    ``kind`` is a string of factor letters: ``Q`` (``n = 4`` only), ``P``
    (needs five distinct ``indices``), ``D`` (``n = 5`` only), or ``1`` for
    the trivial witness.
    """

    kind: str
    indices: tuple[int, ...] = (0, 1, 2, 3, 4)

    def __post_init__(self) -> None:
        if not self.kind or any(ch not in "QPD1" for ch in self.kind):
            raise ValueError(f"unknown witness kind {self.kind!r}")
        if "P" in self.kind and (len(self.indices) != 5 or len(set(self.indices)) != 5):
            raise ValueError("P needs five pairwise distinct indices")

    def required_n(self) -> int | None:
        if "Q" in self.kind and "D" in self.kind:
            raise ValueError("Q and D live in different dimensions")
        if "Q" in self.kind:
            return 4
        if "D" in self.kind:
            return 5
        return None


def witness_Q(S: Sequence[Any]) -> Any:
    """Product over edges {i, j} of the Heron-type form in the three areas sharing {i, j}."""
    if len(S) != 10:
        raise ValueError("Q is defined for n = 4 (10 areas)")
    idx = triple_index(4)

    def area(*v: int) -> Any:
        return S[idx[tuple(sorted(v))]]

    out: Any = 1
    for i, j in pairs(4):
        k, l, m = (v for v in range(5) if v not in (i, j))
        x, y, z = area(i, j, k), area(i, j, l), area(i, j, m)
        out = out * (2 * x * y + 2 * y * z + 2 * z * x - x * x - y * y - z * z)
    return out


def witness_P(S: Sequence[Any], n: int, indices: Sequence[int]) -> Any:
    """Product of the ten squared areas of 2-faces inside the 5 given vertices."""
    if len(set(indices)) != 5 or not all(0 <= v <= n for v in indices):
        raise ValueError(f"P needs five distinct vertices of 0..{n}")
    idx = triple_index(n)
    out: Any = 1
    for tri in combinations(sorted(indices), 3):
        out = out * S[idx[tri]]
    return out


def witness_D(S: Sequence[Any]) -> Any:
    """Product of S_ijk - S_ijl over distinct i, j, k, l in 0..5 with i < j and k < l."""
    if len(S) != 20:
        raise ValueError("D is defined for n = 5 (20 areas)")
    idx = triple_index(5)
    out: Any = 1
    for i, j in pairs(5):
        rest = [v for v in range(6) if v not in (i, j)]
        for k, l in combinations(rest, 2):
            out = out * (S[idx[tuple(sorted((i, j, k)))]] - S[idx[tuple(sorted((i, j, l)))]])
    return out


def evaluate_witness(w: WitnessPolynomial, S: Sequence[Any], n: int | None = None) -> Any:
    from .metrics import dimension_from_areas

    dim = dimension_from_areas(len(S)) if n is None else n
    need = w.required_n()
    if need is not None and need != dim:
        raise ValueError(f"witness {w.kind} needs n = {need}, got n = {dim}")
    if dim < 4 and "P" in w.kind:
        raise ValueError("P needs n >= 4")
    out: Any = 1
    for ch in w.kind:
        if ch == "Q":
            out = out * witness_Q(S)
        elif ch == "P":
            out = out * witness_P(S, dim, w.indices)
        elif ch == "D":
            out = out * witness_D(S)
    return out


def witness_degree_certificate(curve: EdgeCurve, w: WitnessPolynomial) -> dict[str, Any]:
    """Top degree of ``w(S(t)) * W(t)``; the certificate passes when it is ``<= 0``."""
    areas = curve.areas()
    unbounded = [
        "".join(map(str, t)) for t, S in zip(triples(curve.n), areas) if S.top_degree() > 0
    ]
    if unbounded:
        raise PreconditionError(f"areas unbounded along the curve: {unbounded}")
    W = curve.volume_squared()
    wv = evaluate_witness(w, areas, curve.n)
    if not isinstance(wv, LaurentPoly):
        wv = LaurentPoly.constant(wv)
    prod = wv * W
    top = prod.top_degree()
    return {
        "family": curve.family,
        "n": curve.n,
        "params": {k: str(v) for k, v in curve.params.items()},
        "witness": w.kind,
        "witness_top_degree": _fmt_degree(wv.top_degree()),
        "witness_is_zero": wv.is_zero(),
        "W_top_degree": _fmt_degree(W.top_degree()),
        "product_top_degree": _fmt_degree(top),
        "ok": top <= 0,
    }
