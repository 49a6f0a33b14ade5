"""Exact pre-images of the equiareal point under the Heron map.

The equiareal point ``y0`` has every squared 2-face area equal to 3/16, the
value for a unit equilateral triangle. Its pre-images are

* ``x(omega, sigma)``: ``s_ij = 3*sigma`` on the pairs of a partial pairing
  ``omega`` and ``sigma`` elsewhere, ``sigma = +1 or -1``;
* for ``n = 4`` only, ``x(gamma)``: ``s_ij = +sqrt(-3/5)`` on the edges of a
  5-cycle ``gamma`` and ``-sqrt(-3/5)`` off it.

``sqrt(-3/5)`` is stored as ``(1/5)*sqrt(-15)`` so all cycle points live in
``Q(sqrt -15)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import Any, Iterator, Sequence

from .errors import ContradictionError, PreconditionError, UnsupportedDimension
from .metrics import area_map, cm_volume_squared, pairs, restrict_edges, triples
from .rings import QuadExt

EQUIAREAL = Fraction(3, 16)
SQRT_D = -15
SQRT_MINUS_3_5 = QuadExt(0, Fraction(1, 5), SQRT_D)

# Squared volumes at the n = 4 catalog points, keyed by point type.
N4_VOLUMES = {
    "pairs0": Fraction(5, 2**10 * 3**2),
    "pairs1": Fraction(-1, 2**10 * 3),
    "pairs2": Fraction(-3, 2**10),
    "cycle": Fraction(5, 2**10),
}


@dataclass(frozen=True)
class PartialPairing:
    n: int
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for p in self.pairs:
            i, j = p
            if not (0 <= i < j <= self.n):
                raise ValueError(f"pair {p} is not a sorted pair of vertices in 0..{self.n}")
            if i in seen or j in seen:
                raise ValueError(f"pairs of a partial pairing must be disjoint: {sorted(self.pairs)}")
            seen.update(p)

    def __len__(self) -> int:
        return len(self.pairs)

    def label(self) -> str:
        return ",".join(f"{i}-{j}" for i, j in sorted(self.pairs))


@dataclass(frozen=True)
class FiveCycle:
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if len(self.edges) != 5:
            raise ValueError("a 5-cycle has five edges")
        degree = {v: 0 for v in range(5)}
        adj: dict[int, list[int]] = {v: [] for v in range(5)}
        for i, j in self.edges:
            if not (0 <= i < j <= 4):
                raise ValueError(f"bad edge {(i, j)}")
            degree[i] += 1
            degree[j] += 1
            adj[i].append(j)
            adj[j].append(i)
        if any(d != 2 for d in degree.values()):
            raise ValueError("every vertex of a 5-cycle has degree 2")
        prev, cur, steps = None, 0, 0
        while True:
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
            steps += 1
            if cur == 0:
                break
        if steps != 5:
            raise ValueError("edges do not form a single 5-cycle")

    @classmethod
    def from_order(cls, order: Sequence[int]) -> FiveCycle:
        return cls(frozenset(tuple(sorted((order[k], order[(k + 1) % 5]))) for k in range(5)))

    def complement(self) -> FiveCycle:
        return FiveCycle(frozenset(p for p in pairs(4) if p not in self.edges))

    def label(self) -> str:
        return ",".join(f"{i}-{j}" for i, j in sorted(self.edges))


@dataclass(frozen=True)
class CatalogPoint:
    kind: str  # "pairing" or "cycle"
    coordinates: tuple[Any, ...] = field(compare=False)
    pairing: PartialPairing | None = None
    sigma: int = 0
    cycle: FiveCycle | None = None

    @property
    def n(self) -> int:
        if self.pairing is not None:
            return self.pairing.n
        return 4

    @property
    def label(self) -> str:
        if self.kind == "pairing":
            return f"pairing:{self.pairing.label()}:{'+1' if self.sigma > 0 else '-1'}"
        return f"cycle:{self.cycle.label()}"

    @property
    def volume_key(self) -> str:
        if self.kind == "cycle":
            return "cycle"
        return f"pairs{len(self.pairing)}"


def partial_pairing_count(n: int) -> int:
    """Closed-form count of partial pairings on ``n + 1`` points."""
    m = n + 1
    return sum(factorial(m) // (2**k * factorial(k) * factorial(m - 2 * k)) for k in range(m // 2 + 1))


def _pairings(vertices: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    if not vertices:
        yield []
        return
    first, rest = vertices[0], vertices[1:]
    # first vertex left unpaired
    yield from _pairings(rest)
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1 :]
        for tail in _pairings(remaining):
            yield [(first, partner)] + tail


def enumerate_partial_pairings(n: int) -> list[PartialPairing]:
    if n < 1:
        raise UnsupportedDimension("partial pairings need n >= 1")
    return [PartialPairing(n, frozenset(ps)) for ps in _pairings(tuple(range(n + 1)))]


def enumerate_five_cycles() -> list[FiveCycle]:
    """The 12 five-cycles on {0..4}: vertex 0 first, one orientation per cycle."""
    out: list[FiveCycle] = []
    seen: set[frozenset] = set()
    for rest in permutations(range(1, 5)):
        if rest[0] > rest[-1]:
            continue  # reversed duplicate
        cyc = FiveCycle.from_order((0,) + rest)
        if cyc.edges not in seen:
            seen.add(cyc.edges)
            out.append(cyc)
    return out


def pairing_point(pairing: PartialPairing, sigma: int) -> CatalogPoint:
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    coords = tuple(Fraction(3 * sigma) if p in pairing.pairs else Fraction(sigma) for p in pairs(pairing.n))
    return CatalogPoint("pairing", coords, pairing=pairing, sigma=sigma)


def cycle_point(cycle: FiveCycle) -> CatalogPoint:
    coords = tuple(SQRT_MINUS_3_5 if p in cycle.edges else -SQRT_MINUS_3_5 for p in pairs(4))
    return CatalogPoint("cycle", coords, cycle=cycle)


def build_catalog(n: int) -> list[CatalogPoint]:
    """All 2*r_n pairing points, plus the 12 cycle points when ``n = 4``."""
    if n < 4:
        raise UnsupportedDimension(f"the equiareal catalog is defined for n >= 4, got {n}")
    points = [pairing_point(w, sigma) for w in enumerate_partial_pairings(n) for sigma in (1, -1)]
    if n == 4:
        points += [cycle_point(c) for c in enumerate_five_cycles()]
    return points


def parse_point(spec: str, n: int) -> CatalogPoint:
    """Parse ``pairing:0-1,2-3:+1`` / ``pairing::-1`` / ``cycle:0-1,1-2,2-3,3-4,0-4``."""
    kind, _, rest = spec.partition(":")

    def edges(text: str) -> frozenset[tuple[int, int]]:
        out = set()
        for chunk in filter(None, text.split(",")):
            a, b = (int(x) for x in chunk.split("-"))
            out.add((min(a, b), max(a, b)))
        return frozenset(out)

    if kind == "pairing":
        body, _, sign = rest.rpartition(":")
        sigma = {"+1": 1, "1": 1, "+": 1, "-1": -1, "-": -1}.get(sign)
        if sigma is None:
            raise ValueError(f"bad sign in point spec {spec!r}")
        return pairing_point(PartialPairing(n, edges(body)), sigma)
    if kind == "cycle":
        if n != 4:
            raise UnsupportedDimension("cycle points exist only for n = 4")
        return cycle_point(FiveCycle(edges(rest)))
    raise ValueError(f"unknown point kind in {spec!r}")


def verify_fiber(n: int) -> dict[str, Any]:
    """Check exactly that every catalog point maps to the equiareal point."""
    points = build_catalog(n)
    failures = []
    per_ring = {"rational": 0, "quadext": 0}
    for p in points:
        per_ring["quadext" if p.kind == "cycle" else "rational"] += 1
        for t, S in zip(triples(n), area_map(p.coordinates)):
            if S != EQUIAREAL:
                failures.append({"point": p.label, "triple": list(t), "area": str(S)})
    labels = {p.coordinates for p in points}
    return {
        "n": n,
        "count": len(points),
        "expected_count": 64 if n == 4 else 2 * partial_pairing_count(n),
        "distinct": len(labels) == len(points),
        "per_ring": per_ring,
        "fiber_ok": not failures,
        "failures": failures,
    }


def volume_table(n: int = 4) -> dict[str, Any]:
    """Exact squared volume at each ``n = 4`` catalog point."""
    if n != 4:
        raise UnsupportedDimension("the volume table is only tabulated for n = 4")
    return {p.label: cm_volume_squared(p.coordinates) for p in build_catalog(4)}


def check_volume_table() -> list[str]:
    """Labels whose squared volume disagrees with the tabulated value for their type."""
    bad = []
    for p in build_catalog(4):
        if cm_volume_squared(p.coordinates) != N4_VOLUMES[p.volume_key]:
            bad.append(p.label)
    return bad


TETRA_DISJUNCTS = ("opposite", "cyclic(1,2,3)", "cyclic(2,3,1)", "cyclic(3,1,2)")


def classify_equiareal_tetrahedron(s: Sequence[Any]) -> list[str]:
    """Which structural cases hold for an equiareal tetrahedron (all areas 3/16).

    ``opposite``: opposite edges have equal squared lengths.
    ``cyclic(i,j,k)``: ``s_ij = s_0k``, ``s_ik = s_0j`` and
    ``s_jk + s_0i - 2 s_0j - 2 s_0k = 0``.

    Every case that holds is returned, in the fixed order of
    :data:`TETRA_DISJUNCTS`.
    """
    if len(s) != 6:
        raise PreconditionError("a tetrahedron has 6 squared edge lengths")
    areas = area_map(s)
    if any(a != EQUIAREAL for a in areas):
        raise PreconditionError(f"not equiareal at 3/16: areas {[str(a) for a in areas]}")
    e = {p: v for p, v in zip(pairs(3), s)}

    def sq(i: int, j: int) -> Any:
        return e[(min(i, j), max(i, j))]

    held = []
    if sq(1, 2) == sq(0, 3) and sq(1, 3) == sq(0, 2) and sq(2, 3) == sq(0, 1):
        held.append("opposite")
    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        if sq(i, j) == sq(0, k) and sq(i, k) == sq(0, j) and sq(j, k) + sq(0, i) - 2 * sq(0, j) - 2 * sq(0, k) == 0:
            held.append(f"cyclic({i},{j},{k})")
    if not held:
        raise ContradictionError(f"equiareal tetrahedron fits no known case: {[str(v) for v in s]}")
    return held


def classify_catalog_faces(n: int = 4) -> dict[str, Any]:
    """Classify every 4-vertex restriction of every catalog point."""
    results = {}
    failures = []
    for p in build_catalog(n):
        for sub in combinations(range(n + 1), 4):
            key = f"{p.label}|{''.join(map(str, sub))}"
            try:
                results[key] = classify_equiareal_tetrahedron(restrict_edges(p.coordinates, sub))
            except (ContradictionError, PreconditionError) as exc:
                failures.append({"point": p.label, "vertices": list(sub), "error": str(exc)})
    return {"n": n, "checked": len(results) + len(failures), "ok": not failures, "failures": failures, "results": results}
