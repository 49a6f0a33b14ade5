"""The verification suite behind ``simplex-lab all-checks``.

Each check returns a :class:`CheckResult`; runtime budgets are part of the
pass condition where one is stated.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Callable

import numpy as np

from . import catalog, curves, linearization, metrics, tracker
from .linalg import rank_exact

REPORT_SCHEMA = "simplex-lab.report/1"


@dataclass
class CheckResult:
    id: str
    paper_ref: str
    status: str  # pass | fail | skipped
    detail: dict[str, Any]
    seconds: float = 0.0

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "seconds": round(self.seconds, 3),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class Check:
    id: str
    paper_ref: str
    budget_seconds: float | None
    run: Callable[[dict[str, Any]], tuple[bool, dict[str, Any]]]

    @property
    def short_id(self) -> str:
        return self.id.split("-", 1)[0]


def _volumes(opts: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    ones = [Fraction(1)] * 10
    w_ones = metrics.cm_volume_squared(ones)
    bad = catalog.check_volume_table()
    by_kind: dict[str, set[str]] = {}
    for p in catalog.build_catalog(4):
        by_kind.setdefault(p.volume_key, set()).add(str(metrics.cm_volume_squared(p.coordinates)))
    ok = w_ones == Fraction(5, 9216) and not bad and all(len(v) == 1 for v in by_kind.values())
    return ok, {"W_all_ones": str(w_ones), "by_type": {k: sorted(v) for k, v in by_kind.items()}, "mismatches": bad}


def _fiber_catalog(opts: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    r4_enum = len(catalog.enumerate_partial_pairings(4))
    r4_closed = catalog.partial_pairing_count(4)
    reports = {n: catalog.verify_fiber(n) for n in opts.get("exact_dims", (4, 5, 6))}
    ok = r4_enum == r4_closed == 26
    summary = {}
    for n, rep in reports.items():
        expected = 64 if n == 4 else 2 * catalog.partial_pairing_count(n)
        ok = ok and rep["fiber_ok"] and rep["distinct"] and rep["count"] == expected
        summary[str(n)] = {"count": rep["count"], "expected": expected, "fiber_ok": rep["fiber_ok"]}
    return ok, {"r4_enumerated": r4_enum, "r4_closed_form": r4_closed, "dims": summary}


def _jacobian_certificates(opts: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    ranks = {}
    ok = True
    for n in opts.get("exact_dims", (4, 5, 6)):
        want = comb(n + 1, 2)
        deficient = [p.label for p in catalog.build_catalog(n) if rank_exact(linearization.jacobian(p.coordinates)) != want]
        ranks[str(n)] = {"full_rank_required": want, "deficient": deficient}
        ok = ok and not deficient
    sweep = linearization.image_sweep(catalog.build_catalog(5))
    ok = ok and not sweep["mismatches"] and len(sweep["labels"]) == 152
    sample = _image_sample_n6(random.Random(opts.get("seed", 0)), opts.get("n6_image_pairs", 100))
    ok = ok and not sample["mismatches"]
    return ok, {
        "ranks": ranks,
        "image_sweep_points": len(sweep["labels"]),
        "image_sweep_pairs": sweep["pairs_checked"],
        "image_sweep_mismatches": sweep["mismatches"],
        "n6_image_sample": sample,
    }


def _image_sample_n6(rng: random.Random, count: int) -> dict[str, Any]:
    """Seeded n = 6 image comparisons; half the pairs share their pairing."""
    points = catalog.build_catalog(6)
    by_pairing: dict[Any, list[int]] = {}
    for k, p in enumerate(points):
        by_pairing.setdefault(p.pairing, []).append(k)
    mismatches = []
    same_pairs = 0
    for k in range(count):
        a = rng.randrange(len(points))
        if k % 2 == 0:
            b = next(x for x in by_pairing[points[a].pairing] if x != a)
        else:
            b = rng.choice([x for x in range(len(points)) if x != a])
        expected = points[a].pairing == points[b].pairing
        same_pairs += expected
        got = linearization.images_equal(
            linearization.jacobian(points[a].coordinates), linearization.jacobian(points[b].coordinates)
        )
        if got != expected:
            mismatches.append((points[a].label, points[b].label))
    return {"pairs": count, "same_pairing_pairs": same_pairs, "mismatches": mismatches}


def random_rational(rng: random.Random, size: int = 20, den: int = 12) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, den))


def _oracle(opts: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    rng = random.Random(opts.get("seed", 0))
    samples = opts.get("oracle_samples", 500)
    mismatches: dict[str, int] = {}
    for n in range(1, 7):
        bad = 0
        for _ in range(samples):
            s = [random_rational(rng) for _ in range(comb(n + 1, 2))]
            if metrics.cm_volume_squared(s) != metrics.gram_volume_squared(s):
                bad += 1
        mismatches[str(n)] = bad
    return not any(mismatches.values()), {"samples_per_n": samples, "mismatches": mismatches}


def _odd_curves(opts: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    reps = [curves.verify_odd_curve(q) for q in opts.get("odd_q", (3, 4))]
    detail = {f"q={r['q']}": {"ok": r["ok"], "W": r["W"], "area_failures": r["area_failures"]} for r in reps}
    q3 = next((r for r in reps if r["q"] == 3), None)
    ok = all(r["ok"] for r in reps) and (q3 is None or q3["W"] == {"1": "1/230400"})
    return ok, detail


PARAM_TRIPLES = ((1, 1, 1), (2, 1, 3), (3, -2, 1))


def _asymptotics(opts: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    detail = {}
    ok = True
    for a, b, c in PARAM_TRIPLES:
        r5 = curves.verify_asymptotics(curves.n5_curve(a, b, c), curves.n5_claims(a, b, c))
        r4 = curves.verify_asymptotics(curves.n4_curve(a, b, c), curves.n4_claims(a, b, c))
        ok = ok and r5["ok"] and r4["ok"]
        detail[f"{a},{b},{c}"] = {
            "n5_ok": r5["ok"],
            "n4_ok": r4["ok"],
            "failed": [x for x in r5["claims"] + r4["claims"] if not x["ok"]],
        }
    return ok, detail


def _witnesses(opts: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    detail = {}
    ok = True
    for a, b, c in PARAM_TRIPLES:
        c4, c5 = curves.n4_curve(a, b, c), curves.n5_curve(a, b, c)
        q = curves.witness_degree_certificate(c4, curves.WitnessPolynomial("Q"))
        pd = curves.witness_degree_certificate(c5, curves.WitnessPolynomial("PD", (0, 1, 2, 3, 4)))
        w4 = c4.volume_squared().top_degree()
        w5 = c5.volume_squared().top_degree()
        ok = ok and q["ok"] and pd["ok"] and w4 == 4 and w5 == 2
        detail[f"{a},{b},{c}"] = {
            "QW_top_degree": q["product_top_degree"],
            "PDW_top_degree": pd["product_top_degree"],
            "D_vanishes_on_curve": pd["witness_is_zero"],
            "W_top_degree_n4": w4,
            "W_top_degree_n5": w5,
        }
    return ok, detail


def _tetrahedra(opts: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    rep = catalog.classify_catalog_faces(4)
    counts: dict[str, int] = {}
    for held in rep["results"].values():
        for name in held:
            counts[name] = counts.get(name, 0) + 1
    return rep["ok"], {"restrictions_checked": rep["checked"], "disjunct_counts": counts, "failures": rep["failures"]}


def _fiber_tracking(opts: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    seed = opts.get("seed", 0)
    n_targets = opts.get("fiber_targets", 20)
    budget = 60.0
    rng = np.random.default_rng(seed)
    rows = []
    ok = True
    for k in range(n_targets):
        target = tracker.random_target_near_y0(rng, 1e-2)
        t0 = time.perf_counter()
        res = tracker.track_fiber(target, tracker.TrackerConfig(seed=seed * 1000 + k))
        dt = time.perf_counter() - t0
        pairs_ = sum(1 for i, j in enumerate(res.negation_pairs) if j > i)
        involution = all(j >= 0 and res.negation_pairs[j] == i for i, j in enumerate(res.negation_pairs))
        row_ok = (
            len(res.endpoints) == 64
            and max(res.residuals) < 1e-8
            and pairs_ == 32
            and involution
            and res.class_count <= 32
            and dt < budget
        )
        ok = ok and row_ok
        rows.append(
            {
                "target": k,
                "endpoints": len(res.endpoints),
                "max_residual": max(res.residuals),
                "negation_pairs": pairs_,
                "class_count": res.class_count,
                "path_failures": res.path_failures,
                "seconds": round(dt, 3),
                "ok": row_ok,
            }
        )
    s_true = tracker.random_simplex_edges(4, rng, spread=0.05)
    target = tracker.HeronSystem(4).areas(s_true.astype(complex)).real
    t0 = time.perf_counter()
    res = tracker.track_fiber(target, tracker.TrackerConfig(seed=seed))
    dt = time.perf_counter() - t0
    dist = {
        sign: min(float(np.max(np.abs(e - sgn * s_true))) for e in res.endpoints)
        for sign, sgn in (("plus", 1), ("minus", -1))
    }
    truth_ok = dist["plus"] < 1e-6 and dist["minus"] < 1e-6 and len(res.endpoints) == 64 and dt < budget
    ok = ok and truth_ok
    return ok, {
        "targets": rows,
        "true_simplex": {"distance_to_plus": dist["plus"], "distance_to_minus": dist["minus"], "endpoints": len(res.endpoints), "ok": truth_ok},
    }


def _probe(opts: dict[str, Any]) -> tuple[bool, dict[str, Any]]:
    seed = opts.get("seed", 0)
    rng = np.random.default_rng(seed + 17)
    s_true = tracker.random_simplex_edges(5, rng, spread=0.3)
    rep = tracker.local_uniqueness_probe(s_true, trials=200, cfg=tracker.TrackerConfig(seed=seed))
    ok = rep["ok"] and rep["converged"] > 0
    return ok, {"trials": rep["trials"], "buckets": rep["buckets"], "anomalies": rep["anomalies"][:5]}


CHECKS: tuple[Check, ...] = (
    Check("AC1-volume-values", "squared volumes at the n=4 equiareal pre-images", 1.0, _volumes),
    Check("AC2-fiber-catalog", "pre-images of the equiareal point (64 for n=4, 2r_n for n>=5)", 5.0, _fiber_catalog),
    Check("AC3-jacobian-certificates", "injective differential and image separation at the pre-images", 120.0, _jacobian_certificates),
    Check("AC4-oracle-equivalence", "Cayley-Menger determinant against the Gram determinant", None, _oracle),
    Check("AC5-odd-curves", "odd-dimensional curve with bounded areas and linear volume", 30.0, _odd_curves),
    Check("AC6-n5-asymptotics", "six-vertex curve asymptotics of areas and volume", None, _asymptotics),
    Check("AC7-witness-certificates", "witness products Q and P*D repair the volume growth", None, _witnesses),
    Check("AC8-tetrahedron-classification", "structure of complex equiareal tetrahedra", None, _tetrahedra),
    Check("AC9-fiber-tracking", "64 pre-images for n=4 and at most 32 congruence classes", None, _fiber_tracking),
    Check("AC10-uniqueness-probe", "two pre-images (s and -s) for generic n>=5", None, _probe),
)


def run_check(check: Check, opts: dict[str, Any] | None = None) -> CheckResult:
    opts = opts or {}
    t0 = time.perf_counter()
    try:
        ok, detail = check.run(opts)
    except Exception as exc:  # a crashing check is a failing check
        ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    dt = time.perf_counter() - t0
    if check.budget_seconds is not None and dt >= check.budget_seconds:
        ok = False
        detail = dict(detail, budget_exceeded=f"{dt:.2f}s >= {check.budget_seconds}s")
    return CheckResult(check.id, check.paper_ref, "pass" if ok else "fail", detail, dt)


def _matches(check: Check, key: str) -> bool:
    return key in (check.id, check.short_id)


def run_all(opts: dict[str, Any] | None = None, only: set[str] | None = None) -> dict[str, Any]:
    """Run the suite; ``only`` selects checks by full id or short id (``AC3``)."""
    if only:
        unknown = [k for k in only if not any(_matches(c, k) for c in CHECKS)]
        if unknown:
            raise ValueError(f"unknown check ids: {sorted(unknown)}")
    results = []
    for check in CHECKS:
        if only and not any(_matches(check, k) for k in only):
            results.append(CheckResult(check.id, check.paper_ref, "skipped", {}))
            continue
        results.append(run_check(check, opts))
    failed = any(r.status == "fail" for r in results)
    return {
        "schema": REPORT_SCHEMA,
        "suite": "all-checks",
        "checks": [r.to_json() for r in results],
        "exit_status": 1 if failed else 0,
    }


def check_by_id(check_id: str) -> Check:
    for c in CHECKS:
        if _matches(c, check_id):
            return c
    raise KeyError(check_id)


__all__ = ["CHECKS", "Check", "CheckResult", "run_all", "run_check", "check_by_id"]
