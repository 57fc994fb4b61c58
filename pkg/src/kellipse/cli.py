"""Command-line front end: ``kellipse poly|report|sing|plot|dual``.

Exit codes: 0 all checks matched, 2 usage error, 3 non-generic input or a
mismatch, 4 resource guard (k above ``--max-k``).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import KEllipseError, OriginNotInteriorError, ResourceGuardError
from .lmi import EllipseConfig, parse_foci, random_generic_config

log = logging.getLogger("kellipse")

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_GUARD = 0, 2, 3, 4
DEFAULT_MAX_K = 5


@dataclass
class RunConfig:
    command: str
    config: EllipseConfig
    tol: float
    out: str | None
    csv: str | None
    window: tuple[float, float, float, float] | None
    res: int
    partition: tuple[int, ...] | None
    max_k: int
    workers: int | None
    n_samples: int
    recenter: bool
    timing: bool
    points: bool


def _parse_window(text: str) -> tuple[float, float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad window {text!r}") from None
    if len(vals) != 4 or not (vals[2] > vals[0] and vals[3] > vals[1]):
        raise argparse.ArgumentTypeError("window must be x0,y0,x1,y1 with x0<x1, y0<y1")
    return vals


def _parse_partition(text: str) -> tuple[int, ...]:
    try:
        idx = tuple(sorted({int(v) for v in text.split(",")}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}") from None
    return idx


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--foci", help='foci as "u1,v1;u2,v2;..." (integers, decimals or a/b)')
    g.add_argument("--radius", help="radius r (rational), default 1")
    g.add_argument("--seed", type=int, help="random generic foci from this seed (needs --k)")
    g.add_argument("--k", type=int, help="number of random foci")
    o = common.add_argument_group("options")
    o.add_argument("--tol", type=float, default=1e-7, help="numerical tolerance (default 1e-7)")
    o.add_argument("--out", help="output path (JSON for poly/report/sing, SVG for plot/dual)")
    o.add_argument("--csv", help="also write CSV output to this path")
    o.add_argument("--window", type=_parse_window, help="plot window x0,y0,x1,y1")
    o.add_argument("--res", type=int, default=300, help="plot grid resolution (>= 16)")
    o.add_argument("--partition", type=_parse_partition, help="1-based focus indices J for plot overlays")
    o.add_argument("--max-k", type=int, default=DEFAULT_MAX_K, help="resource guard on k (default 5)")
    o.add_argument("--workers", type=int, help="worker processes (default $KELLIPSE_WORKERS or 1)")
    o.add_argument("--n-samples", type=int, default=360, help="dual: number of directions")
    o.add_argument("--no-recenter", action="store_true", help="dual: fail instead of recentering")
    o.add_argument("--timing", action="store_true", help="include wall-clock timings in JSON")
    o.add_argument("--points", action="store_true", help="report: include intersection points")
    o.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="kellipse", description="Algebraic k-ellipses: polynomial, singularities, genus, dual.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("poly", parents=[common], help="defining polynomial and degree")
    sub.add_parser("report", parents=[common], help="full census, genus and dual degree both ways")
    sub.add_parser("sing", parents=[common], help="singularity census")
    sub.add_parser("plot", parents=[common], help="SVG of the real curve with overlays")
    sub.add_parser("dual", parents=[common], help="SVG and CSV of the sampled dual curve")
    return parser


def resolve(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    if args.seed is not None or args.k is not None:
        if args.foci:
            parser.error("give either --foci or --seed/--k, not both")
        if args.seed is None or args.k is None or args.k < 1:
            parser.error("--seed and --k (>= 1) go together")
        cfg = random_generic_config(args.k, args.seed)
        if args.radius is not None:
            cfg = cfg.with_radius(_fraction(args.radius, parser))
    else:
        if not args.foci:
            parser.error("--foci or --seed/--k is required")
        try:
            foci = parse_foci(args.foci)
        except (ValueError, ZeroDivisionError) as exc:
            parser.error(f"malformed --foci: {exc}")
        radius = _fraction(args.radius, parser) if args.radius is not None else Fraction(1)
        try:
            cfg = EllipseConfig(foci, radius)
        except ValueError as exc:
            parser.error(str(exc))
    if args.res < 16:
        parser.error("--res must be at least 16")
    if args.tol <= 0:
        parser.error("--tol must be positive")
    part = None
    if args.partition is not None:
        if any(i < 1 or i > cfg.k for i in args.partition) or not 1 <= len(args.partition) < cfg.k:
            parser.error(f"--partition must be a proper nonempty subset of 1..{cfg.k}")
        part = tuple(i - 1 for i in args.partition)
    return RunConfig(
        command=args.command,
        config=cfg,
        tol=args.tol,
        out=args.out,
        csv=args.csv,
        window=args.window,
        res=args.res,
        partition=part,
        max_k=args.max_k,
        workers=args.workers,
        n_samples=args.n_samples,
        recenter=not args.no_recenter,
        timing=args.timing,
        points=args.points,
    )


def _fraction(text: str, parser) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        parser.error(f"bad rational {text!r}")


def _emit(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _header(rc: RunConfig) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": rc.command, "config": rc.config.to_json()}


def _guard(rc: RunConfig) -> None:
    if rc.config.k > rc.max_k:
        raise ResourceGuardError(f"k={rc.config.k} exceeds --max-k {rc.max_k}")


# -- subcommands ---------------------------------------------------------------


def cmd_poly(rc: RunConfig) -> int:
    from .curve import degree_check, ellipse_polynomial

    _guard(rc)
    t0 = time.perf_counter()
    cp = ellipse_polynomial(rc.config, max_k=rc.max_k, workers=rc.workers)
    dc = degree_check(cp)
    out = _header(rc)
    out.update(
        degree=cp.degree,
        expected_degree=dc.expected,
        degree_matches=dc.matches,
        n_terms=len(cp.affine),
        polynomial=cp.affine.to_text(),
    )
    if rc.timing:
        out["timing_s"] = round(time.perf_counter() - t0, 3)
    _emit(out, rc.out)
    if rc.csv:
        with open(rc.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["ex", "ey", "ez", "numerator", "denominator"])
            for e, c in cp.projective.sorted_terms():
                w.writerow([*e, c.re.numerator, c.re.denominator])
    return EXIT_OK if dc.matches else EXIT_MISMATCH


def cmd_report(rc: RunConfig) -> int:
    from .invariant import build_report

    _guard(rc)
    rep = build_report(rc.config, tol=rc.tol, max_k=rc.max_k, workers=rc.workers)
    payload = rep.to_json(include_points=rc.points)
    payload["command"] = rc.command
    if not rc.timing:
        payload.pop("timing", None)
    _emit(payload, rc.out)
    return EXIT_OK if rep.all_match else EXIT_MISMATCH


def cmd_sing(rc: RunConfig) -> int:
    from .curve import ellipse_polynomial
    from .singular import build_census

    _guard(rc)
    t0 = time.perf_counter()
    cp = ellipse_polynomial(rc.config, max_k=rc.max_k, workers=rc.workers)
    census = build_census(cp, tol=rc.tol, workers=rc.workers)
    out = _header(rc)
    out.update(
        degree=cp.degree,
        n_singular=len(census.points),
        n_affine_nodes=len(census.affine),
        singularities=[p.to_json() for p in census.points],
        circular_points=[c.to_json() for c in census.circular],
        issues=census.issues,
    )
    if rc.timing:
        out["timing_s"] = round(time.perf_counter() - t0, 3)
    _emit(out, rc.out)
    if rc.csv:
        with open(rc.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x_re", "x_im", "y_re", "y_im", "z_re", "z_im", "m", "r", "delta", "kind", "provenance"])
            for p in census.points:
                row = []
                for c in p.coords:
                    c = complex(c)
                    row += [repr(c.real), repr(c.imag)]
                w.writerow(row + [p.multiplicity, p.branches, p.delta, p.kind, p.provenance])
    return EXIT_OK if not census.issues else EXIT_MISMATCH


def cmd_plot(rc: RunConfig) -> int:
    from .curve import degenerate_polynomial, ellipse_polynomial
    from .plotting import plot_curve
    from .singular import build_census

    _guard(rc)
    cfg = rc.config
    out_path = rc.out or "kellipse.svg"
    sing: list[tuple[float, float]] = []
    issues: list[str] = []
    if cfg.k >= 3 and cfg.radius > 0:
        census = build_census(ellipse_polynomial(cfg, max_k=rc.max_k, workers=rc.workers), rc.tol, rc.workers)
        issues = census.issues
        for p in census.affine:
            x, y = complex(p.coords[0]), complex(p.coords[1])
            if abs(x.imag) <= 1e-9 * (1 + abs(x)) and abs(y.imag) <= 1e-9 * (1 + abs(y)):
                sing.append((x.real, y.real))
    degenerate = None
    if rc.partition is not None and len(rc.partition) >= 2:
        degenerate = degenerate_polynomial(cfg.subset(rc.partition, radius=0)).affine
    summary = plot_curve(cfg, out_path, rc.window, rc.res, rc.partition, degenerate, sing)
    out = _header(rc)
    out.update(summary, real_singular_points=[list(p) for p in sing], issues=issues)
    if rc.partition is not None:
        out["partition"] = [i + 1 for i in rc.partition]
    _emit(out, None)
    return EXIT_OK if not issues else EXIT_MISMATCH


def cmd_dual(rc: RunConfig) -> int:
    from .dual import convexity_check, dual_inequality_check, polar_boundary
    from .plotting import plot_dual

    cfg = rc.config
    try:
        pb = polar_boundary(cfg, rc.n_samples)
    except OriginNotInteriorError:
        if not rc.recenter:
            raise
        pb = polar_boundary(cfg, rc.n_samples, recenter=True)
    out_path = rc.out or "kellipse_dual.svg"
    csv_path = rc.csv or str(Path(out_path).with_suffix(".csv"))
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["theta", "h", "x", "y", "w1", "w2"])
        for s in pb:
            w.writerow([f"{v:.12g}" for v in s.as_row()])
    violation = dual_inequality_check(pb, pb.primal_points())
    convex = convexity_check(pb.dual_points())
    summary = plot_dual(pb, out_path, title=f"dual of the {cfg.k}-ellipse, r = {cfg.radius}")
    out = _header(rc)
    out.update(
        summary,
        csv=csv_path,
        shift=[str(pb.shift[0]), str(pb.shift[1])],
        max_violation=violation,
        convex=convex,
    )
    _emit(out, None)
    ok = violation <= 1e-6 and convex
    return EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {"poly": cmd_poly, "report": cmd_report, "sing": cmd_sing, "plot": cmd_plot, "dual": cmd_dual}


_VALUE_OPTS = {"--foci", "--radius", "--window", "--partition", "--tol"}


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--window -1,0,1,2`` as ``--window=-1,0,1,2`` so argparse does not read a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        a = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if a in _VALUE_OPTS and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == "."):
            out.append(f"{a}={nxt}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    rc = resolve(args, parser)
    try:
        return COMMANDS[rc.command](rc)
    except ResourceGuardError as exc:
        print(f"kellipse: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except KEllipseError as exc:
        print(f"kellipse: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"kellipse: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
