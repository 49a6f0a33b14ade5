"""Numerical fibers of the Heron map by homotopy continuation.

For ``n = 4`` the Heron map is a square system (10 squared edges -> 10
squared areas) with 64 pre-images over the equiareal point ``y0``, all known
exactly. The tracker follows each of them along

    H(s, tau) = (1 - tau) * gamma * (phi(s) - y0) + tau * (phi(s) - S_target)

from ``tau = 0`` to ``tau = 1`` with an Euler predictor and a Newton
corrector. The random unit complex ``gamma`` keeps paths away from the real
branch locus.

For ``n >= 5`` the system is overdetermined and only a local probe is
offered: Gauss-Newton from random complex starts, bucketing the converged
endpoints against ``+s_true`` and ``-s_true``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Any, Sequence

import numpy as np

from .catalog import EQUIAREAL, build_catalog
from .errors import PathFailure, PreconditionError
from .metrics import dimension_from_areas, dimension_from_edges, pair_index, triples


@dataclass(frozen=True)
class TrackerConfig:
    step_initial: float = 0.05
    step_min: float = 1e-7
    step_max: float = 0.25
    newton_tol: float = 1e-11
    newton_max_iters: int = 50
    corrector_iters: int = 4
    seed: int = 0
    gamma: complex | None = None
    dedupe_tol: float = 1e-6
    real_tol: float = 1e-8
    divergence_bound: float = 1e6
    cond_max: float = 1e12

    def __post_init__(self) -> None:
        if not (0 < self.step_min <= self.step_initial <= 1):
            raise ValueError("need 0 < step_min <= step_initial <= 1")
        if self.newton_tol <= 0 or self.dedupe_tol <= 0 or self.real_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.gamma is not None and abs(abs(self.gamma) - 1) > 1e-12:
            raise ValueError("gamma must have unit modulus")

    def resolved_gamma(self) -> complex:
        if self.gamma is not None:
            return complex(self.gamma)
        theta = np.random.default_rng(self.seed).uniform(0, 2 * np.pi)
        return complex(np.exp(1j * theta))

    def halved(self) -> TrackerConfig:
        data = asdict(self)
        data["step_initial"] = max(self.step_min, self.step_initial / 2)
        data["step_max"] = max(data["step_initial"], self.step_max / 2)
        return TrackerConfig(**data)


# ---------------------------------------------------------------------------
# vectorized Heron map
# ---------------------------------------------------------------------------


class HeronSystem:
    """Heron map and its Jacobian on complex numpy vectors for a fixed ``n``."""

    def __init__(self, n: int) -> None:
        self.n = n
        idx = pair_index(n)
        tri = triples(n)
        self.a = np.array([idx[(i, j)] for i, j, _ in tri])
        self.b = np.array([idx[(j, k)] for _, j, k in tri])
        self.c = np.array([idx[(i, k)] for i, _, k in tri])
        self.rows = np.arange(len(tri))
        self.n_edges = comb(n + 1, 2)

    def areas(self, s: np.ndarray) -> np.ndarray:
        x, y, z = s[self.a], s[self.b], s[self.c]
        return (2 * (x * y + y * z + z * x) - x * x - y * y - z * z) / 16

    def jacobian(self, s: np.ndarray) -> np.ndarray:
        x, y, z = s[self.a], s[self.b], s[self.c]
        J = np.zeros((len(self.rows), self.n_edges), dtype=complex)
        J[self.rows, self.a] = (y + z - x) / 8
        J[self.rows, self.b] = (x + z - y) / 8
        J[self.rows, self.c] = (x + y - z) / 8
        return J


def _system(n: int) -> HeronSystem:
    return HeronSystem(n)


def _step(J: np.ndarray, r: np.ndarray, cond_max: float) -> np.ndarray:
    if J.shape[0] == J.shape[1]:
        if np.linalg.cond(J) > cond_max:
            raise PathFailure("singular Jacobian")
        return np.linalg.solve(J, -r)
    sv = np.linalg.svd(J, compute_uv=False)
    if sv[-1] == 0 or sv[0] / sv[-1] > cond_max:
        raise PathFailure("rank deficient Jacobian")
    return np.linalg.lstsq(J, -r, rcond=None)[0]


def newton_correct(
    s: Sequence[complex],
    S_target: Sequence[complex],
    cfg: TrackerConfig | None = None,
) -> np.ndarray:
    """Newton (square) or Gauss-Newton (overdetermined) iteration to ``phi(s) = S_target``.

    Raises :class:`PathFailure` on divergence, a singular Jacobian, or the
    iteration limit.
    """
    cfg = cfg or TrackerConfig()
    x = np.asarray(s, dtype=complex).copy()
    target = np.asarray(S_target, dtype=complex)
    n = dimension_from_edges(len(x))
    if dimension_from_areas(len(target)) != n:
        raise PreconditionError("edge and area vectors have different dimensions")
    system = _system(n)
    for _ in range(cfg.newton_max_iters):
        r = system.areas(x) - target
        if np.max(np.abs(r)) < cfg.newton_tol:
            return x
        x = x + _step(system.jacobian(x), r, cfg.cond_max)
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > cfg.divergence_bound:
            raise PathFailure("Newton iteration diverged")
    r = system.areas(x) - target
    if np.max(np.abs(r)) < cfg.newton_tol:
        return x
    raise PathFailure(f"no convergence in {cfg.newton_max_iters} iterations (residual {np.max(np.abs(r)):.3e})")


# ---------------------------------------------------------------------------
# path tracking (n = 4)
# ---------------------------------------------------------------------------


@dataclass
class PathResult:
    start_label: str
    endpoint: np.ndarray | None
    residual: float
    steps: int
    rejected: int
    status: str  # "ok", "failed", "diverged"


def _target_at(tau: float, gamma: complex, y0: np.ndarray, target: np.ndarray) -> np.ndarray:
    # zero set of H(., tau) is phi(s) = this point
    g = (1 - tau) * gamma + tau
    return ((1 - tau) * gamma * y0 + tau * target) / g


def _corrector(system: HeronSystem, s: np.ndarray, goal: np.ndarray, cfg: TrackerConfig) -> np.ndarray | None:
    x = s.copy()
    scale = max(1.0, float(np.max(np.abs(x))))
    prev = np.inf
    for _ in range(cfg.corrector_iters):
        r = system.areas(x) - goal
        try:
            dx = _step(system.jacobian(x), r, cfg.cond_max)
        except PathFailure:
            return None
        size = float(np.max(np.abs(dx)))
        # demand contraction, so a large step cannot jump onto another path
        if size > 0.5 * prev:
            return None
        x = x + dx
        prev = size
        if size < 1e-10 * scale:
            return x
    return None


def track_path(
    system: HeronSystem,
    start: np.ndarray,
    y0: np.ndarray,
    target: np.ndarray,
    gamma: complex,
    cfg: TrackerConfig,
    label: str = "",
) -> PathResult:
    tau = 0.0
    s = start.astype(complex).copy()
    h = cfg.step_initial
    clean = 0
    steps = rejected = 0
    gamma_y0 = gamma * y0
    while tau < 1.0:
        h = min(h, 1.0 - tau, cfg.step_max)
        # Euler predictor on dphi(s)/dtau = d(goal)/dtau
        g = (1 - tau) * gamma + tau
        goal_now = _target_at(tau, gamma, y0, target)
        dgoal = (target - gamma_y0) / g - goal_now * (1 - gamma) / g
        try:
            ds = np.linalg.solve(system.jacobian(s), dgoal)
        except np.linalg.LinAlgError:
            return PathResult(label, None, np.inf, steps, rejected, "failed")
        pred = s + h * ds
        corrected = _corrector(system, pred, _target_at(tau + h, gamma, y0, target), cfg)
        if corrected is None:
            rejected += 1
            clean = 0
            h /= 2
            if h < cfg.step_min:
                return PathResult(label, None, np.inf, steps, rejected, "failed")
            continue
        s = corrected
        tau = tau + h if tau + h < 1.0 - 1e-15 else 1.0
        steps += 1
        clean += 1
        if clean >= 3:
            h *= 2
            clean = 0
        if np.max(np.abs(s)) > cfg.divergence_bound:
            return PathResult(label, None, np.inf, steps, rejected, "diverged")
    try:
        s = newton_correct(s, target, cfg)
    except PathFailure:
        return PathResult(label, None, np.inf, steps, rejected, "failed")
    residual = float(np.max(np.abs(system.areas(s) - target)))
    return PathResult(label, s, residual, steps, rejected, "ok")


@dataclass
class FiberResult:
    endpoints: list[np.ndarray]
    labels: list[str]
    residuals: list[float]
    path_failures: int
    negation_pairs: list[int]
    class_count: int
    real_positive: list[int]
    gamma: complex
    path_stats: list[dict[str, Any]] = field(default_factory=list)
    duplicates: int = 0

    def to_json(self) -> dict[str, Any]:
        return {
            "n": 4,
            "endpoint_count": len(self.endpoints),
            "endpoints": [[[float(z.real), float(z.imag)] for z in e] for e in self.endpoints],
            "start_labels": self.labels,
            "residuals": self.residuals,
            "max_residual": max(self.residuals) if self.residuals else None,
            "path_failures": self.path_failures,
            "duplicates": self.duplicates,
            "negation_pairs": self.negation_pairs,
            "negation_pair_count": sum(1 for i, j in enumerate(self.negation_pairs) if j > i),
            "class_count": self.class_count,
            "real_positive_endpoints": self.real_positive,
            "gamma": [self.gamma.real, self.gamma.imag],
            "path_stats": self.path_stats,
        }


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SIMPLEX_LAB_THREADS", "1")))
    except ValueError:
        return 1


def _dedupe(results: list[PathResult], tol: float) -> tuple[list[PathResult], int]:
    kept: list[PathResult] = []
    dupes = 0
    for r in results:
        if any(np.max(np.abs(r.endpoint - k.endpoint)) < tol for k in kept):
            dupes += 1
            continue
        kept.append(r)
    return kept, dupes


def negation_pairing(endpoints: Sequence[np.ndarray], tol: float) -> list[int]:
    """Index of ``-e`` among the endpoints for each endpoint ``e`` (``-1`` if absent)."""
    out = []
    for e in endpoints:
        match = -1
        for j, f in enumerate(endpoints):
            if np.max(np.abs(e + f)) < tol:
                match = j
                break
        out.append(match)
    return out


def sign_normalize(s: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Representative of ``{s, -s}``: first nonzero entry gets nonnegative real part."""
    for z in s:
        if abs(z) > tol:
            return s if z.real > 0 or (z.real == 0 and z.imag >= 0) else -s
    return s


def is_real_positive(s: np.ndarray, real_tol: float) -> bool:
    scale = max(1.0, float(np.max(np.abs(s))))
    return bool(np.max(np.abs(s.imag)) <= real_tol * scale and np.all(s.real > 0))


def track_fiber(S_target: Sequence[float], cfg: TrackerConfig | None = None) -> FiberResult:
    """Continue the 64 exact pre-images of ``y0`` to pre-images of ``S_target`` (n = 4)."""
    cfg = cfg or TrackerConfig()
    target = np.asarray(S_target, dtype=complex)
    if target.shape != (10,):
        raise PreconditionError("track_fiber works for n = 4 (10 squared areas)")
    system = _system(4)
    y0 = np.full(10, float(EQUIAREAL), dtype=complex)
    gamma = cfg.resolved_gamma()
    starts = [(p.label, np.array([complex(x) for x in p.coordinates])) for p in build_catalog(4)]

    def run(item: tuple[str, np.ndarray], c: TrackerConfig) -> PathResult:
        label, start = item
        return track_path(system, start, y0, target, gamma, c, label)

    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda it: run(it, cfg), starts))
    else:
        results = [run(it, cfg) for it in starts]

    # flaky paths get retried with smaller steps before they count as failures
    for k, r in enumerate(results):
        c = cfg
        for _ in range(3):
            if r.status == "ok":
                break
            c = c.halved()
            r = run(starts[k], c)
        results[k] = r

    # if two paths landed on the same endpoint, retrack both with smaller steps
    for _ in range(3):
        ok = [k for k, r in enumerate(results) if r.status == "ok"]
        clash = set()
        for x in range(len(ok)):
            for y in range(x + 1, len(ok)):
                if np.max(np.abs(results[ok[x]].endpoint - results[ok[y]].endpoint)) < cfg.dedupe_tol:
                    clash.update((ok[x], ok[y]))
        if not clash:
            break
        fine = cfg.halved().halved()
        for k in clash:
            results[k] = run(starts[k], fine)

    good = [r for r in results if r.status == "ok" and r.residual < cfg.newton_tol]
    failures = len(results) - len(good)
    if not good:
        raise PathFailure("every path failed")
    kept, dupes = _dedupe(good, cfg.dedupe_tol)
    endpoints = [r.endpoint for r in kept]
    pairs_ = negation_pairing(endpoints, cfg.dedupe_tol)
    real_pos = [k for k, e in enumerate(endpoints) if is_real_positive(e, cfg.real_tol)]
    return FiberResult(
        endpoints=endpoints,
        labels=[r.start_label for r in kept],
        residuals=[r.residual for r in kept],
        path_failures=failures,
        negation_pairs=pairs_,
        class_count=len(real_pos),
        real_positive=real_pos,
        gamma=gamma,
        path_stats=[
            {"start": r.start_label, "status": r.status, "steps": r.steps, "rejected": r.rejected} for r in results
        ],
        duplicates=dupes,
    )


# ---------------------------------------------------------------------------
# random targets and simplices
# ---------------------------------------------------------------------------


def random_simplex_edges(n: int, rng: np.random.Generator, spread: float = 0.3) -> np.ndarray:
    """Squared edges of a random real simplex from a positive definite Gram matrix.

    The Gram matrix is that of the regular unit simplex plus a random
    symmetric perturbation of relative size ``spread``, shifted if needed to
    stay positive definite.
    """
    base = 0.5 * (np.eye(n) + np.ones((n, n)))  # Gram of the unit regular simplex
    A = rng.normal(size=(n, n))
    G = base + spread * (A + A.T) / 2
    w = np.linalg.eigvalsh(G)
    if w[0] <= 0.05:
        G = G + (0.05 - w[0]) * np.eye(n)
    s = []
    for i, j in ((i, j) for i in range(n + 1) for j in range(i + 1, n + 1)):
        if i == 0:
            s.append(G[j - 1, j - 1])
        else:
            s.append(G[i - 1, i - 1] + G[j - 1, j - 1] - 2 * G[i - 1, j - 1])
    return np.array(s, dtype=float)


def random_target_near_y0(rng: np.random.Generator, distance: float = 1e-2) -> np.ndarray:
    v = rng.normal(size=10)
    return float(EQUIAREAL) + distance * v / np.linalg.norm(v)


# ---------------------------------------------------------------------------
# local probe (n >= 5)
# ---------------------------------------------------------------------------


def local_uniqueness_probe(
    s_true: Sequence[float],
    trials: int = 200,
    cfg: TrackerConfig | None = None,
    box: float | None = None,
    starts: Sequence[Sequence[complex]] | None = None,
) -> dict[str, Any]:
    """Gauss-Newton from random complex starts against ``phi(s_true)``.

    Converged endpoints are bucketed as ``+s_true``, ``-s_true`` or
    ``other``; any ``other`` is an anomaly. Non-convergent trials are only
    counted.
    """
    cfg = cfg or TrackerConfig()
    truth = np.asarray(s_true, dtype=complex)
    n = dimension_from_edges(len(truth))
    if n < 5:
        raise PreconditionError("the probe is for n >= 5")
    system = _system(n)
    target = system.areas(truth)
    rng = np.random.default_rng(cfg.seed)
    radius = box if box is not None else 2.0 * float(np.max(np.abs(truth)))
    if starts is None:
        starts = [
            rng.uniform(-radius, radius, truth.size) + 1j * rng.uniform(-radius, radius, truth.size)
            for _ in range(trials)
        ]
    buckets = {"plus": 0, "minus": 0, "other": 0, "failed": 0}
    anomalies = []
    for x0 in starts:
        try:
            x = newton_correct(x0, target, cfg)
        except PathFailure:
            buckets["failed"] += 1
            continue
        if np.max(np.abs(x - truth)) < cfg.dedupe_tol:
            buckets["plus"] += 1
        elif np.max(np.abs(x + truth)) < cfg.dedupe_tol:
            buckets["minus"] += 1
        else:
            buckets["other"] += 1
            anomalies.append([[float(z.real), float(z.imag)] for z in x])
    return {
        "n": n,
        "trials": len(starts),
        "buckets": buckets,
        "converged": buckets["plus"] + buckets["minus"] + buckets["other"],
        "anomalies": anomalies,
        "ok": buckets["other"] == 0,
    }
