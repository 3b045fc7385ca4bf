"""Command-line front end.

Exit codes: 0 success or pass, 1 invalid input or failed check, 2 usage or
configuration error. Every command writes JSON records to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import svg
from .cat_verifier import (
    VERTICES,
    angle_equality_check,
    angle_triangle_inequality_check,
    build_triangle,
    cat_check,
    hull_containment_check,
)
from .domain import DEFAULT_TOL
from .errors import GeometryError
from .intrinsic_geodesics import shortest_path
from .io import load_domain, write_reports
from .suite import ConfigError, SuiteConfig, run_suite

CHECKS = ("cat", "angles", "hull", "angle-triangle")


class UsageError(Exception):
    pass


def _emit(record: dict, stream=None) -> None:
    print(json.dumps(record), file=stream or sys.stdout)


def _error(exc: Exception) -> int:
    code = exc.code if isinstance(exc, GeometryError) else type(exc).__name__
    _emit({"error": code, "message": str(exc)})
    return 1


def _scales(text: str | None):
    if text is None:
        return None
    try:
        values = [float(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"--scales must be a comma-separated list of numbers: {text!r}") from exc
    if not values:
        raise UsageError("--scales is empty")
    return values


def _write_svg(target: str, text: str) -> None:
    Path(target).write_text(text)


# --- commands ---------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        domain = load_domain(args.file, args.kappa, args.tol)
    except GeometryError as exc:
        return _error(exc)
    _emit({"valid": True, **domain.describe()})
    return 0


def cmd_geodesic(args) -> int:
    try:
        domain = load_domain(args.file, args.kappa, args.tol)
        path = shortest_path(domain, args.from_, args.to)
    except GeometryError as exc:
        return _error(exc)
    _emit(
        {
            "kappa": domain.kappa,
            "waypoints": [list(w) for w in path.waypoints],
            "length": path.length,
            "bends": len(path.bends),
        }
    )
    if args.render:
        _write_svg(args.render, svg.render(domain, [path], ["geodesic"], {"p": path.start, "q": path.end}))
    return 0


def cmd_check(args) -> int:
    scales = _scales(args.scales)
    points = args.point or []
    need = 4 if args.check == "angle-triangle" else 3
    if len(points) != need:
        raise UsageError(f"check {args.check!r} takes exactly {need} --point arguments")
    samples = args.samples or (128 if args.check == "hull" else 64)
    tol = args.check_tol if args.check_tol is not None else (1e-9 if args.check in ("cat", "hull") else 1e-3)
    try:
        domain = load_domain(args.file, args.kappa, args.tol)
        if args.check == "angle-triangle":
            report = angle_triangle_inequality_check(
                domain, points[0], points[1:], scales=scales, grid=args.grid,
                tol=tol, instance=str(args.file),
            )
            reports = [report]
            drawn = [shortest_path(domain, points[0], t) for t in points[1:]]
            labels = ["ray-1", "ray-2", "ray-3"]
        else:
            tri = build_triangle(domain, *points)
            drawn, labels = list(tri.sides), ["pq", "qr", "rp"]
            if args.check == "cat":
                reports = [cat_check(tri, n_samples=samples, tol=tol, instance=str(args.file))]
            elif args.check == "hull":
                reports = [hull_containment_check(tri, samples, tol, instance=str(args.file))]
            else:
                which = VERTICES if args.vertex == "all" else (args.vertex,)
                reports = [
                    angle_equality_check(
                        tri, v, scales, tol, args.grid, instance=f"{args.file}/{v}"
                    )
                    for v in which
                ]
    except GeometryError as exc:
        return _error(exc)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    write_reports(reports, sys.stdout)
    if args.render:
        _write_svg(args.render, svg.render(domain, drawn, labels))
    return 0 if all(r.passed for r in reports) else 1


def cmd_suite(args) -> int:
    path = Path(args.config)
    try:
        data = json.loads(path.read_text())
        if args.seed is not None:
            data = {**data, "seed": args.seed}
        cfg = SuiteConfig.from_dict(data, base_dir=path.parent)
    except (OSError, json.JSONDecodeError, ConfigError, TypeError, ValueError) as exc:
        _emit({"error": "ConfigError", "message": str(exc)}, sys.stderr)
        return 2
    reports = run_suite(cfg)
    if args.out:
        with open(args.out, "w") as fh:
            write_reports(reports, fh)
    else:
        write_reports(reports, sys.stdout)
    failed = [r for r in reports if not r.skipped and not r.passed]
    summary = {
        "records": len(reports),
        "failed": len(failed),
        "skipped": sum(r.skipped for r in reports),
    }
    _emit(summary, sys.stderr)
    return 1 if failed else 0


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catkappa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def domain_args(p):
        p.add_argument("file", help="domain file (JSON)")
        p.add_argument("--kappa", type=float, default=None, help="override the file curvature")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="validation tolerance")

    p = sub.add_parser("validate", help="parse and validate a domain file")
    domain_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("geodesic", help="shortest path between two points")
    domain_args(p)
    p.add_argument("--from", dest="from_", nargs=2, type=float, required=True, metavar=("X", "Y"))
    p.add_argument("--to", nargs=2, type=float, required=True, metavar=("X", "Y"))
    p.add_argument("--render", metavar="SVG")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("check", help="run one check on a triangle")
    domain_args(p)
    p.add_argument("check", choices=CHECKS)
    p.add_argument("--point", nargs=2, type=float, action="append", metavar=("X", "Y"),
                   help="triangle vertex; angle-triangle takes the apex then three targets")
    p.add_argument("--vertex", choices=VERTICES + ("all",), default="all")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--scales", default=None, help="comma-separated decreasing scales")
    p.add_argument("--grid", type=int, default=8)
    p.add_argument("--check-tol", type=float, default=None, help="pass tolerance of the check")
    p.add_argument("--render", metavar="SVG")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("suite", help="run the verification suite")
    p.add_argument("config", help="suite config (JSON)")
    p.add_argument("--out", help="report file (default stdout)")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    return 2  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
