"""Command-line interface.

Exit status: 0 success, 1 verification (or numerical) failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .bike import no_slip_residual, solve_bike
from .equivalence import double_angle_residual, init_from_theta, verify_equivalence
from .export import magnetic_csv, magnetic_svg, track_csv, track_svg, write_atomic
from .frontpath import build_front_path, magnetic_simulate, path_distance
from .numerics import AngleJumpError, GridSpec, IntegrationError
from .potential import CATALOG, DescriptorError, DomainError, PeriodError, make_potential
from .schrodinger import monodromy

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _grid(args) -> GridSpec:
    try:
        return GridSpec(args.t0, args.t1, args.h)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _potential(descriptor):
    try:
        return make_potential(descriptor)
    except DescriptorError as exc:
        raise UsageError(f"bad potential descriptor {descriptor!r}: {exc}") from None
    except PeriodError as exc:
        raise UsageError(str(exc)) from None


def _targets(args):
    """Map of format -> output path (None means stdout)."""
    if args.format == "both":
        if args.out is None:
            raise UsageError("--format both needs --out")
        base = Path(args.out)
        return {"csv": base.with_suffix(".csv"), "svg": base.with_suffix(".svg")}
    return {args.format: Path(args.out) if args.out else None}


def _emit(outputs: dict, texts: dict):
    for fmt, target in outputs.items():
        if target is None:
            sys.stdout.write(texts[fmt])
        else:
            try:
                write_atomic(target, texts[fmt])
            except OSError as exc:
                raise UsageError(f"cannot write {target}: {exc.strerror or exc}") from None


def cmd_track(args) -> int:
    p = _potential(args.potential)
    grid = _grid(args)
    outputs = _targets(args)
    path = build_front_path(p, grid)
    bike = solve_bike(path, args.theta0)
    title = f"{args.potential}, theta0={args.theta0:g}"
    texts = {}
    if "csv" in outputs:
        texts["csv"] = track_csv(path, bike)
    if "svg" in outputs:
        texts["svg"] = track_svg(path, bike, title)
    _emit(outputs, texts)
    if args.plot:
        from . import plotting

        with plotting.style():
            plotting.save(plotting.plot_track(path, bike, title=title), args.plot)
    return EXIT_OK


def cmd_magnetic(args) -> int:
    p = _potential(args.potential)
    grid = _grid(args)
    outputs = _targets(args)
    mp = magnetic_simulate(p, grid)
    texts = {}
    if "csv" in outputs:
        texts["csv"] = magnetic_csv(mp)
    if "svg" in outputs:
        texts["svg"] = magnetic_svg(mp, args.potential)
    _emit(outputs, texts)
    if args.plot:
        from . import plotting

        with plotting.style():
            plotting.save(plotting.plot_magnetic(mp, title=args.potential), args.plot)
    return EXIT_OK


def verify_one(p, grid, theta0):
    """The three residuals reported by ``verify``."""
    report = verify_equivalence(p, theta0, grid)
    double = double_angle_residual(p, grid, init_from_theta(theta0))
    distance = path_distance(magnetic_simulate(p, grid), build_front_path(p, grid))
    return {"equivalence": report.max_residual, "double_angle": double, "magnetic_path": distance}


def cmd_verify(args) -> int:
    p = _potential(args.potential)
    grid = _grid(args)
    try:
        results = verify_one(p, grid, args.theta0)
    except (AngleJumpError, IntegrationError) as exc:
        print(f"numerical failure: {exc}")
        print("status=FAIL")
        return EXIT_FAILED
    ok = True
    for name, value in results.items():
        passed = value <= args.tol
        ok &= passed
        print(f"{name:<14} max_residual={value:.6e} {'ok' if passed else 'FAIL'}")
    print(f"tol={args.tol:g} status={'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_monodromy(args) -> int:
    p = _potential(args.potential)
    period = args.period
    if period is not None:
        if not (math.isfinite(period) and period > 0):
            raise UsageError("--period must be positive")
        # a period that restates the built-in one (to print precision) is taken as given
        if p.period is None or not math.isclose(period, p.period, rel_tol=1e-9):
            try:
                p = p.with_period(period)
            except PeriodError as exc:
                raise UsageError(str(exc)) from None
    elif p.period is None:
        raise UsageError(f"{args.potential} has no period; pass --period")
    if not args.h > 0:
        raise UsageError("--h must be positive")
    result = monodromy(p, args.h, period)
    (a, b), (c, d) = result.matrix.tolist()
    print(f"period={result.period!r}")
    print(f"[[{a!r}, {b!r}],")
    print(f" [{c!r}, {d!r}]]")
    print(f"trace={result.trace!r} det={result.det!r} class={result.stability}")
    return EXIT_OK


def cmd_gallery(args) -> int:
    """CSV and PNG for every catalog potential, plus the front-path panel and the cusp figure."""
    from . import plotting

    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create {out}: {exc.strerror or exc}") from None
    grid = _grid(args)
    paths = []
    with plotting.style():
        for desc in CATALOG:
            p = make_potential(desc)
            path = build_front_path(p, grid)
            bike = solve_bike(path, args.theta0)
            stem = desc.replace(":", "_").replace(",", "_")
            write_atomic(out / f"{stem}.csv", track_csv(path, bike))
            plotting.save(plotting.plot_track(path, bike, title=desc), out / f"{stem}.png")
            report = verify_equivalence(p, args.theta0, grid)
            plotting.save(plotting.plot_equivalence(report, title=desc), out / f"{stem}_equivalence.png")
            print(
                f"{desc:<16} equivalence={report.max_residual:.3e} "
                f"no_slip={no_slip_residual(bike, path):.3e}"
            )
            paths.append(path)
        plotting.save(plotting.plot_gallery(paths, list(CATALOG)), out / "front_paths.png")
        cusp = make_potential("cos:1.5,1,1")
        plotting.save(
            plotting.plot_magnetic(magnetic_simulate(cusp, grid), title="cos:1.5,1,1"),
            out / "magnetic_cusps.png",
        )
    print(f"wrote {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilltrack",
        description="Bicycle tracks of Hill potentials and numerical checks of their equivalence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("potential", help="e.g. const:0, cos:0.5,0.3,1, sech2:2,1,5, sum:(a;b), file:p.csv")
        sp.add_argument("--t0", type=float, default=0.0)
        sp.add_argument("--t1", type=float, required=True)
        sp.add_argument("--h", type=float, default=1e-3, help="step size (default 1e-3)")

    def outputs(sp):
        sp.add_argument("--out", help="output file (stdout if omitted)")
        sp.add_argument("--format", choices=("csv", "svg", "both"), default="csv")
        sp.add_argument("--plot", metavar="PNG", help="also render a matplotlib figure")

    sp = sub.add_parser("track", help="front path, bike angle and rear track")
    common(sp)
    sp.add_argument("--theta0", type=float, required=True)
    outputs(sp)
    sp.set_defaults(func=cmd_track)

    sp = sub.add_parser("verify", help="check bike angle against the Hill solution")
    common(sp)
    sp.add_argument("--theta0", type=float, required=True)
    sp.add_argument("--tol", type=float, default=1e-5)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("magnetic", help="pseudo-magnetic particle trajectory")
    common(sp)
    outputs(sp)
    sp.set_defaults(func=cmd_magnetic)

    sp = sub.add_parser("monodromy", help="fundamental matrix over one period")
    sp.add_argument("potential")
    sp.add_argument("--period", type=float)
    sp.add_argument("--h", type=float, default=1e-3)
    sp.set_defaults(func=cmd_monodromy)

    sp = sub.add_parser("gallery", help="figures and CSVs for the built-in potentials")
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--t0", type=float, default=0.0)
    sp.add_argument("--t1", type=float, default=20.0)
    sp.add_argument("--h", type=float, default=1e-3)
    sp.add_argument("--theta0", type=float, default=0.0)
    sp.set_defaults(func=cmd_gallery)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"hilltrack {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IntegrationError, AngleJumpError) as exc:
        print(f"hilltrack {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
