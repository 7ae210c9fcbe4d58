"""Command-line interface.

Subcommands: symmetric-scan, certify, region-map, tropical-verify, evaluate.
Angles are degrees on the command line and radians in emitted files.  Exit
codes: 0 success or certified, 1 input error, 2 undecided certification,
3 empty result.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

import numpy as np

from .geometry import (
    ChainAngles,
    CollisionError,
    DistanceVector,
    OutOfDomainError,
    PlanarConfiguration,
    branch_position,
    cyclic_from_angles,
    mutual_distances,
    Y4_MAX,
)
from .equations import (
    Exponent,
    albouy_chenciner_f,
    la2_feasible,
    laura_andoyer,
    region_classify,
    symmetric_g,
)
from .intervals import Box, Interval
from .certify import certify_no_common_zero, certify_unique_root
from .symmetric import (
    bifurcation_scan,
    NoBifurcationError,
    scan_branch,
    isolate_roots,
    window_for,
)
from .tropical import WeightVector, build_system, in_prevariety, verify_tables

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNDECIDED = 2
EXIT_EMPTY = 3


def _write(payload: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")


def _parse_window(text: str, branch: str, inset: float):
    names = {"a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3", "b4", "b5"}
    if text.lower() in names:
        return window_for(branch, text.upper(), inset=inset)
    lo, hi = (float(x) for x in text.split(","))
    return lo, hi


def cmd_symmetric_scan(args) -> int:
    a_exp = Exponent.parse(args.A).value
    if args.window:
        records = isolate_roots(args.branch, a_exp,
                                _parse_window(args.window, args.branch, args.inset),
                                tol=args.tol)
    else:
        records = scan_branch(args.branch, a_exp, tol=args.tol)
    if args.format == "csv":
        import io
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["y4", "branch", "sign_type", "A", "m1", "m2", "m3", "m4",
                    "m5", "residual_max", "simple", "resolved"])
        for r in records:
            masses = list(r.masses.as_array()) if r.masses else [""] * 5
            w.writerow([r.y4, r.branch, r.sign_type.label, r.a_exp, *masses,
                        r.residual_max, r.simple, r.resolved])
        payload = buf.getvalue()
    else:
        payload = json.dumps([r.to_json() for r in records], indent=1)
    _write(payload, args.out)
    if args.svg_out:
        _write(_family_svg(), args.svg_out)
    return EXIT_OK if records else EXIT_EMPTY


def _family_svg(samples: int = 400) -> str:
    """SVG path data of the (x3, y3) family curves, one path per branch."""
    paths = []
    ys = np.linspace(0.0, Y4_MAX, samples)
    for branch in ("A", "B"):
        x3, y3 = branch_position(ys, branch)
        pts = " L ".join(f"{x:.6f} {y:.6f}" for x, y in zip(x3, y3))
        paths.append(f'<path class="branch-{branch}" d="M {pts}" fill="none"/>')
    body = "\n".join(paths)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.1 -1.1 2.2 3.1">\n'
            f"{body}\n</svg>\n")


def cmd_certify(args) -> int:
    a_lo, a_hi = (float(x) for x in args.A_range.split(","))
    window = _parse_window(args.window, args.branch, args.inset)
    if args.mode == "unique-root":
        cert = certify_unique_root(window, (a_lo, a_hi), branch=args.branch,
                                   max_depth=args.max_depth)
    else:
        region = Box(Interval(window[0], window[1]), Interval(a_lo, a_hi))
        cert = certify_no_common_zero(region, branch=args.branch,
                                      max_depth=args.max_depth)
    _write(json.dumps(cert.to_json(), indent=1), args.out)
    return EXIT_OK if cert.certified else EXIT_UNDECIDED


def cmd_region_map(args) -> int:
    a_exp = Exponent.parse(args.A).value
    if args.point:
        # single-cell query; angles arrive in degrees
        t12_deg, t23_deg = (float(x) for x in args.point.split(","))
        try:
            res = region_classify(
                ChainAngles(math.radians(t12_deg), math.radians(t23_deg),
                            args.closure), a_exp)
            payload = res.to_json()
        except OutOfDomainError as exc:
            payload = {"region": "unrealizable", "detail": str(exc)}
        _write(json.dumps(payload, indent=1), None)
        return EXIT_OK
    n = args.grid
    thetas = np.linspace(0.0, 2.0 * math.pi, n + 2)[1:-1]
    rows = []
    labels = {}
    for closure in ("plus", "minus"):
        for t12 in thetas:
            for t23 in thetas:
                try:
                    res = region_classify(
                        ChainAngles(float(t12), float(t23), closure), a_exp)
                    label = res.region
                except OutOfDomainError:
                    label = "unrealizable"
                except CollisionError:
                    label = "collision"
                rows.append((float(t12), float(t23), closure, label))
                labels[(closure, float(t12), float(t23))] = label
    out_csv = args.out + ".csv"
    with open(out_csv, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["theta12", "theta23", "closure", "region"])
        w.writerows(rows)
    _write(_boundary_svg(thetas, labels), args.out + ".svg")
    return EXIT_OK


def _boundary_svg(thetas, labels: dict) -> str:
    """Grid-edge segments between cells whose region labels differ."""
    segs = {"plus": [], "minus": []}
    n = len(thetas)
    half = 0.5 * (thetas[1] - thetas[0]) if n > 1 else 0.1
    for closure in ("plus", "minus"):
        for i in range(n):
            for j in range(n):
                here = labels[(closure, float(thetas[i]), float(thetas[j]))]
                if i + 1 < n:
                    right = labels[(closure, float(thetas[i + 1]), float(thetas[j]))]
                    if right != here:
                        x = 0.5 * (thetas[i] + thetas[i + 1])
                        segs[closure].append(
                            (x, thetas[j] - half, x, thetas[j] + half))
                if j + 1 < n:
                    up = labels[(closure, float(thetas[i]), float(thetas[j + 1]))]
                    if up != here:
                        y = 0.5 * (thetas[j] + thetas[j + 1])
                        segs[closure].append(
                            (thetas[i] - half, y, thetas[i] + half, y))
    paths = []
    for closure, ss in segs.items():
        d = " ".join(f"M {a:.4f} {b:.4f} L {c:.4f} {e:.4f}" for a, b, c, e in ss)
        paths.append(f'<path class="closure-{closure}" d="{d}" fill="none"/>')
    body = "\n".join(paths)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 6.3 6.3">\n'
            f"{body}\n</svg>\n")


def cmd_tropical_verify(args) -> int:
    reports = []
    status = EXIT_OK
    for text in args.A:
        a_exp = Exponent.parse(text)
        if a_exp.rational is None:
            print(f"exponent {text} is not rational", file=sys.stderr)
            return EXIT_INPUT
        if args.ray:
            weights = WeightVector(tuple(Fraction(x) for x in args.ray.split(",")))
            system = build_system(a_exp.rational)
            ok, witness = in_prevariety(weights, system, a_exp.rational)
            reports.append({"A": str(a_exp.rational),
                            "ray": [str(w) for w in weights.weights],
                            "in_prevariety": ok, "witness": witness})
            if not ok:
                status = EXIT_EMPTY
        else:
            rep = verify_tables(a_exp.rational)
            reports.append(rep.to_json())
            if not rep.all_passed:
                status = EXIT_EMPTY
    _write(json.dumps(reports if len(reports) > 1 else reports[0], indent=1),
           args.out)
    return status


def cmd_evaluate(args) -> int:
    try:
        with open(args.config) as fh:
            spec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read configuration: {exc}", file=sys.stderr)
        return EXIT_INPUT
    a_exp = Exponent.parse(spec.get("A", args.A)).value
    masses = spec.get("masses", [1.0] * 5)
    if len(masses) != 5:
        print("expected five masses", file=sys.stderr)
        return EXIT_INPUT
    reports = []
    try:
        if "points" in spec:
            config = PlanarConfiguration(np.asarray(spec["points"], dtype=float))
            reports.append(laura_andoyer(config, masses, a_exp).to_json())
            reports.append(albouy_chenciner_f(config, masses, a_exp).to_json())
            reports.append(symmetric_g(config, masses, a_exp).to_json())
            verdict = None
            if mutual_distances(config).is_equilateral:
                verdict = la2_feasible(config, a_exp).to_json()
            reports.append({"system": "la2_feasibility",
                            "residuals": {}, "max_abs": 0.0,
                            "meta": {"verdict": verdict}})
        elif "distances" in spec:
            classes = DistanceVector(*[float(d) for d in spec["distances"]])
            table = classes.full_table()
            reports.append(albouy_chenciner_f(table, masses, a_exp).to_json())
            reports.append(symmetric_g(table, masses, a_exp).to_json())
        else:
            print("configuration needs 'points' or 'distances'", file=sys.stderr)
            return EXIT_INPUT
    except (CollisionError, ValueError) as exc:
        payload = json.dumps({"error": str(exc)}, indent=1)
        _write(payload, args.out)
        return EXIT_INPUT
    _write(json.dumps({"reports": reports}, indent=1), args.out)
    return EXIT_OK


def cmd_bifurcation(args) -> int:
    lo, hi = (float(x) for x in args.A_range.split(","))
    try:
        blo, bhi = bifurcation_scan((lo, hi), step=args.step, tol=args.tol)
    except NoBifurcationError as exc:
        _write(json.dumps({"found": False, "detail": str(exc)}, indent=1), args.out)
        return EXIT_EMPTY
    _write(json.dumps({"found": True, "A_c_enclosure": [blo, bhi]}, indent=1),
           args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pentacc",
        description="Equilateral pentagon central configurations: scans, "
                    "certification, regions, tropical checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("symmetric-scan",
                       help="isolate admissible symmetric shapes and recover masses")
    p.add_argument("--A", required=True, help="potential exponent (real or p/q)")
    p.add_argument("--branch", choices=("A", "B"), default="A")
    p.add_argument("--window", help="sign-type name (a2, b2, ...) or lo,hi")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--inset", type=float, default=1e-9,
                   help="shrink named windows away from their boundaries")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--svg-out", help="also write the family-curve SVG path data")
    p.set_defaults(func=cmd_symmetric_scan)

    p = sub.add_parser("certify", help="interval certification over a (y4, A) box")
    p.add_argument("--mode", choices=("unique-root", "no-common-zero"),
                   default="unique-root")
    p.add_argument("--branch", choices=("A", "B"), default="A")
    p.add_argument("--window", required=True,
                   help="sign-type name (a2, b2, ...) or lo,hi")
    p.add_argument("--A-range", dest="A_range", required=True, help="lo,hi")
    p.add_argument("--inset", type=float, default=1e-6)
    p.add_argument("--max-depth", type=int, default=60)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("region-map",
                       help="classify the two-angle family over a grid")
    p.add_argument("--A", default="3")
    p.add_argument("--grid", type=int, default=60)
    p.add_argument("--point", help="single query 'theta12,theta23' in degrees")
    p.add_argument("--closure", choices=("plus", "minus"), default="plus")
    p.add_argument("--out", default="regions", help="output prefix (.csv and .svg)")
    p.set_defaults(func=cmd_region_map)

    p = sub.add_parser("tropical-verify",
                       help="check the ray and cone tables, or a single ray")
    p.add_argument("--A", action="append", required=True,
                   help="rational exponent, repeatable (e.g. --A 3 --A 5/2)")
    p.add_argument("--ray", help="six comma-separated rational weights")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_tropical_verify)

    p = sub.add_parser("evaluate", help="residual systems for a configuration file")
    p.add_argument("--config", required=True,
                   help="JSON with points [[x,y]*5] or distances [6), plus "
                        "optional masses and A")
    p.add_argument("--A", default="3", help="exponent when the file omits it")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bifurcation", help="bracket the root-count bifurcation in A")
    p.add_argument("--A-range", dest="A_range", default="3.0,3.3")
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_bifurcation)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OutOfDomainError, CollisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
