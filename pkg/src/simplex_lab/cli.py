"""Command-line entry point: ``simplex-lab <command> ...``.

Every command prints one JSON document (or writes it to ``--out``). Exit
status is 0 on success, 1 when a verification fails, 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import catalog, checks, curves, linearization, metrics, tracker
from .linalg import rank_exact
from .rings import common_ring, decode_scalar, encode_scalar

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# JSON input helpers
# ---------------------------------------------------------------------------


def load_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON ({exc.msg}, char {exc.pos})") from exc


def parse_vector(obj: Any, kind: str, n: int | None = None) -> tuple[int, list[Any]]:
    """Decode ``{"n", "ring", "entries"}`` (or a bare list) into scalars.

    ``kind`` is ``"edges"`` or ``"areas"``; ``n`` overrides/validates the
    dimension.
    """
    ring = None
    if isinstance(obj, dict):
        if "entries" not in obj:
            raise InputError("vector object needs an 'entries' field")
        ring = obj.get("ring")
        if ring not in (None, "rational", "quadext", "complex", "laurent"):
            raise InputError(f"unknown ring {ring!r}")
        declared = obj.get("n")
        if n is not None and declared is not None and declared != n:
            raise InputError(f"--n {n} disagrees with the file's n = {declared}")
        n = n if n is not None else declared
        entries = obj["entries"]
    elif isinstance(obj, list):
        entries = obj
    else:
        raise InputError("expected a JSON list or a vector object")
    try:
        values = [decode_scalar(e, ring) for e in entries]
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar: {exc}") from exc
    if not values:
        raise InputError("empty vector")
    try:
        dim = metrics.dimension_from_edges(len(values)) if kind == "edges" else metrics.dimension_from_areas(len(values))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if n is not None and dim != n:
        raise InputError(f"{len(values)} {kind} entries do not match n = {n}")
    return dim, values


def encode_vector(n: int, values: Sequence[Any]) -> dict[str, Any]:
    return {"n": n, "ring": common_ring(values), "entries": [encode_scalar(v) for v in values]}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_volume(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    n, s = parse_vector(load_json(args.edges), "edges", args.n)
    out: dict[str, Any] = {"W": encode_scalar(metrics.cm_volume_squared(s))}
    if args.oracle:
        out["W_gram"] = encode_scalar(metrics.gram_volume_squared(s))
    return out, EXIT_OK


def cmd_areas(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    n, s = parse_vector(load_json(args.edges), "edges", args.n)
    if n < 2:
        raise InputError("areas need n >= 2")
    return encode_vector(n, metrics.area_map(s)), EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    points = catalog.build_catalog(args.n)
    out: dict[str, Any] = {"n": args.n, "count": len(points)}
    status = EXIT_OK
    if args.verify:
        rep = catalog.verify_fiber(args.n)
        out["fiber_ok"] = rep["fiber_ok"]
        out["distinct"] = rep["distinct"]
        out["expected_count"] = rep["expected_count"]
        out["failures"] = rep["failures"]
        if not rep["fiber_ok"] or rep["count"] != rep["expected_count"]:
            status = EXIT_FAIL
    if args.n == 4:
        out["volume_table"] = {k: encode_scalar(v) for k, v in catalog.volume_table(4).items()}
        if args.verify:
            bad = catalog.check_volume_table()
            out["volume_table_ok"] = not bad
            status = EXIT_FAIL if bad else status
    if args.points:
        out["points"] = [{"label": p.label, "entries": [encode_scalar(x) for x in p.coordinates]} for p in points]
    return out, status


def cmd_jacobian(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    if args.point:
        point = catalog.parse_point(args.point, args.n)
        s, label = list(point.coordinates), point.label
    elif args.edges:
        _, s = parse_vector(load_json(args.edges), "edges", args.n)
        label = args.edges
    else:
        raise InputError("jacobian needs --point or --edges")
    J = linearization.jacobian(s)
    out = {"point": label, "jacobian": linearization.jacobian_to_json(J, args.n)}
    if args.rank:
        r = rank_exact(J)
        out["rank"] = r
        out["full_column_rank"] = r == len(s)
    return out, EXIT_OK


def cmd_images(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    if args.all_pairs:
        sweep = linearization.image_sweep(catalog.build_catalog(args.n))
        out = {
            "n": args.n,
            "labels": sweep["labels"],
            "equal": sweep["equal"],
            "pairs_checked": sweep["pairs_checked"],
            "mismatches": [list(m) for m in sweep["mismatches"]],
            "ok": not sweep["mismatches"],
        }
        return out, EXIT_OK if out["ok"] else EXIT_FAIL
    if not (args.first and args.second):
        raise InputError("images needs --all-pairs or both --first and --second")
    p1, p2 = catalog.parse_point(args.first, args.n), catalog.parse_point(args.second, args.n)
    same = linearization.images_equal(linearization.jacobian(p1.coordinates), linearization.jacobian(p2.coordinates))
    return {"n": args.n, "first": p1.label, "second": p2.label, "images_equal": same}, EXIT_OK


def _build_curve(args: argparse.Namespace) -> curves.EdgeCurve:
    if args.family == "odd":
        return curves.odd_curve(args.q)
    maker = curves.n5_curve if args.family == "n5" else curves.n4_curve
    return maker(args.a, args.b, args.c)


def cmd_curve(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    curve = _build_curve(args)
    out: dict[str, Any] = {"curve": curve.to_json()}
    ok = True
    areas = curve.areas()
    out["areas"] = {"".join(map(str, t)): encode_scalar(S) for t, S in zip(metrics.triples(curve.n), areas)}
    out["W"] = encode_scalar(curve.volume_squared())
    if args.verify:
        if args.family == "odd":
            rep = curves.verify_odd_curve(args.q)
        else:
            claims = curves.n5_claims if args.family == "n5" else curves.n4_claims
            rep = curves.verify_asymptotics(curve, claims(args.a, args.b, args.c))
            rep["areas_bounded_both_ways"] = curves.areas_bounded_both_ways(curve)
        out["verification"] = rep
        ok = ok and rep["ok"]
    if args.witness:
        w = curves.WitnessPolynomial(args.witness, tuple(args.indices))
        cert = curves.witness_degree_certificate(curve, w)
        out["witness_certificate"] = cert
        ok = ok and cert["ok"]
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_witness(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    n, S = parse_vector(load_json(args.areas), "areas", args.n)
    w = curves.WitnessPolynomial(args.kind, tuple(args.indices))
    return {"n": n, "witness": w.kind, "indices": list(w.indices), "value": encode_scalar(curves.evaluate_witness(w, S, n))}, EXIT_OK


def _tracker_config(args: argparse.Namespace) -> tracker.TrackerConfig:
    kw: dict[str, Any] = {"seed": args.seed}
    if args.tol is not None:
        kw["newton_tol"] = args.tol
    return tracker.TrackerConfig(**kw)


def cmd_fiber(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    if args.n != 4:
        raise InputError("fiber tracking is implemented for n = 4; use 'probe' for n >= 5")
    _, S = parse_vector(load_json(args.target), "areas", 4)
    target = np.array([complex(x) for x in S])
    if np.max(np.abs(target.imag)) > 0:
        raise InputError("fiber targets must be real")
    res = tracker.track_fiber(target.real, _tracker_config(args))
    out = res.to_json()
    out["target"] = [float(x) for x in target.real]
    return out, EXIT_OK if res.path_failures == 0 else EXIT_FAIL


def cmd_probe(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    if args.edges:
        n, s = parse_vector(load_json(args.edges), "edges", args.n)
        s_true = np.array([complex(x).real for x in s])
    else:
        s_true = tracker.random_simplex_edges(args.n, np.random.default_rng(args.seed + 17))
    rep = tracker.local_uniqueness_probe(s_true, trials=args.trials, cfg=_tracker_config(args))
    rep["s_true"] = [float(x) for x in s_true]
    return rep, EXIT_OK if rep["ok"] else EXIT_FAIL


def cmd_all_checks(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    opts = {"seed": args.seed, "fiber_targets": args.fiber_targets}
    if args.exact_dims:
        opts["exact_dims"] = tuple(args.exact_dims)
    if args.odd_q:
        opts["odd_q"] = tuple(args.odd_q)
    report = checks.run_all(opts, set(args.only) if args.only else None)
    for c in report["checks"]:
        print(f"[{c['status'].upper():7}] {c['id']} ({c['seconds']:.2f}s)", file=sys.stderr)
    return report, report["exit_status"]


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", "--json", dest="out", metavar="PATH", help="write the JSON report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None, help="Newton residual tolerance (numerical commands)")

    parser = argparse.ArgumentParser(prog="simplex-lab", description="Metric invariants of simplices and their Heron-map fibers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", parents=[common], help="squared volume from squared edge lengths")
    p.add_argument("--n", type=int)
    p.add_argument("--edges", required=True, help="edge vector JSON ('-' for stdin)")
    p.add_argument("--oracle", action="store_true", help="also report the Gram-determinant value")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("areas", parents=[common], help="squared 2-face areas (Heron map)")
    p.add_argument("--n", type=int)
    p.add_argument("--edges", required=True)
    p.set_defaults(func=cmd_areas)

    p = sub.add_parser("catalog", parents=[common], help="exact pre-images of the equiareal point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--points", action="store_true", help="include every point's coordinates")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("jacobian", parents=[common], help="exact differential of the Heron map")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--point", help="pairing:0-1,2-3:+1 | pairing::-1 | cycle:0-1,1-2,2-3,3-4,0-4")
    p.add_argument("--edges")
    p.add_argument("--rank", action="store_true")
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("images", parents=[common], help="compare images of differentials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--all-pairs", action="store_true")
    p.add_argument("--first")
    p.add_argument("--second")
    p.set_defaults(func=cmd_images)

    p = sub.add_parser("curve", parents=[common], help="Laurent edge curves and their certificates")
    p.add_argument("--family", choices=("odd", "n5", "n4"), required=True)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="1")
    p.add_argument("--c", default="1")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--witness", help="Q, P, D, PD or 1")
    p.add_argument("--indices", type=int, nargs=5, default=[0, 1, 2, 3, 4])
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("witness", parents=[common], help="evaluate a witness polynomial on squared areas")
    p.add_argument("--kind", required=True)
    p.add_argument("--areas", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--indices", type=int, nargs=5, default=[0, 1, 2, 3, 4])
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("fiber", parents=[common], help="track the 64-point fiber to a target (n = 4)")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--target", required=True)
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("probe", parents=[common], help="random-start Newton probe for n >= 5")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--edges")
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("all-checks", parents=[common], help="run the full verification suite")
    p.add_argument("--only", nargs="*", help="check ids to run (others are skipped)")
    p.add_argument("--fiber-targets", type=int, default=20)
    p.add_argument("--exact-dims", type=int, nargs="*")
    p.add_argument("--odd-q", type=int, nargs="*")
    p.set_defaults(func=cmd_all_checks)
    return parser


def _emit(obj: Any, out: str | None) -> None:
    text = json.dumps(obj, indent=2, default=str)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, status = args.func(args)
    except InputError as exc:
        print(f"simplex-lab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"simplex-lab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args.out)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
