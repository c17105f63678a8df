"""``projdyn`` command line: construct, verify, certify, product, plan, check-fixtures.

Output is JSON on stdout (``--human`` for a readable summary).  Exit codes:
0 success, 1 usage or I/O error, 2 infeasible request, 3 verification failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .constructor import construct, make_source, parse_choices, period_bound
from .core import ProjectivePoint, dumps, map_to_json, parse_point, point_to_json
from .errors import (
    ConstructionError,
    InvalidDimension,
    InvalidMap,
    OrbitError,
    PeriodOutOfRange,
    PlanInfeasible,
    ProjdynError,
    UnknownFixture,
)
from .fixtures import load_map_source, verify_all
from .morphism import is_morphism
from .orbits import PeriodicReturn, assert_primitive_period, detect_orbit
from .planner import ExtraPeriod, best_plan, realize_plan
from .products import combined_period, product_map, product_point

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 1, 2, 3
DEFAULT_MAX_ITERS = 500


class UsageError(Exception):
    pass


def max_iters() -> int:
    raw = os.environ.get("PROJDYN_MAX_ITERS")
    if raw is None:
        return DEFAULT_MAX_ITERS
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"PROJDYN_MAX_ITERS must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("PROJDYN_MAX_ITERS must be positive")
    return value


def _emit(args, payload: dict, human: str):
    text = dumps(payload)
    out = getattr(args, "out", None)
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from exc
    sys.stdout.write(human + "\n" if args.human else text)


def _load(source):
    try:
        return load_map_source(source)
    except UnknownFixture as exc:
        raise UsageError(str(exc.args[0])) from exc
    except InvalidMap as exc:
        raise UsageError(str(exc)) from exc


def cmd_construct(args) -> int:
    choices = None
    if args.choices:
        try:
            choices = parse_choices(args.choices, args.dim)
        except ValueError as exc:
            raise UsageError(f"bad --choices: {exc}") from exc
    try:
        bound = period_bound(args.dim)
    except InvalidDimension as exc:
        raise UsageError(str(exc)) from exc
    if args.period > bound:
        print(f"period exceeds the construction bound: {args.period} > {bound} on P^{args.dim}",
              file=sys.stderr)
        return EXIT_INFEASIBLE
    try:
        result = construct(args.dim, args.period, make_source(args.seed), choices, args.budget)
    except PeriodOutOfRange as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INFEASIBLE
    except ConstructionError as exc:
        print(f"construction failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    payload = result.to_json()
    _emit(args, payload, f"{result.map}\npoint {result.point} has primitive period {result.period}")
    return EXIT_OK


def cmd_verify(args) -> int:
    phi, point, period = _load(args.map)
    if args.point:
        try:
            point = parse_point(args.point)
        except (ValueError, ZeroDivisionError, ProjdynError) as exc:
            raise UsageError(f"bad --point: {exc}") from exc
    point = point or ProjectivePoint(tuple([0] * phi.dimension + [1]))
    period = args.period if args.period is not None else period
    report = {"map": args.map, "point": point_to_json(point)}
    if period is None:
        record = detect_orbit(phi, point, max_iters=max_iters())
        outcome = record.outcome
        report["outcome"] = type(outcome).__name__
        report.update(vars(outcome))
        ok = isinstance(outcome, PeriodicReturn)
        _emit(args, report, f"{point}: {outcome}")
        return EXIT_OK if ok else EXIT_VERIFY
    report["period"] = period
    try:
        cert = assert_primitive_period(phi, point, period)
    except OrbitError as exc:
        report["certified"] = False
        report["error"] = type(exc).__name__
        report["detail"] = str(exc)
        _emit(args, report, f"{point}: not of primitive period {period} ({exc})")
        return EXIT_VERIFY
    except ProjdynError as exc:
        raise UsageError(str(exc)) from exc
    report["certified"] = True
    report["certificate"] = cert.to_json()
    _emit(args, report, f"{point} has primitive period {period}")
    return EXIT_OK


def cmd_certify(args) -> int:
    phi, _, _ = _load(args.map)
    cert = is_morphism(phi, screen=not args.no_screen)
    payload = {"map": args.map, **cert.to_json()}
    _emit(args, payload, f"{cert.decision} (rank {cert.rank} of {cert.columns}, "
                         f"{cert.rows}x{cert.columns} matrix)")
    return EXIT_OK if cert.is_morphism else EXIT_VERIFY


def cmd_product(args) -> int:
    left, lp, ln = _load(args.left)
    right, rp, rn = _load(args.right)
    try:
        psi = product_map(left, right)
    except ProjdynError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"map": map_to_json(psi)}
    if lp is not None and rp is not None:
        payload["point"] = point_to_json(product_point(lp, rp))
        if ln is not None and rn is not None:
            payload["period"] = combined_period(ln, rn)
    _emit(args, payload, str(psi))
    return EXIT_OK


def cmd_plan(args) -> int:
    try:
        extra = [ExtraPeriod.parse(e) for e in args.extra_period]
    except ValueError as exc:
        raise UsageError(f"bad --extra-period: {exc}") from exc
    if args.dim < 1:
        raise UsageError("--dim must be at least 1")
    plan = best_plan(args.dim, extra)
    payload = plan.to_json()
    human = " + ".join(f"P^{m}:{n}" for m, n in plan.blocks) + f" -> period {plan.achieved}"
    if args.realize:
        try:
            phi, point, cert = realize_plan(plan, args.seed if args.seed is not None else "plan")
        except PlanInfeasible as exc:
            print(f"plan infeasible: {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
        payload.update(map=map_to_json(phi), point=point_to_json(point), certification=cert)
    _emit(args, payload, human)
    return EXIT_OK


def cmd_check_fixtures(args) -> int:
    report = verify_all()
    lines = [f"{e['id']}: period {'ok' if e['period_ok'] else 'FAIL'}, "
             f"morphism {'ok' if e['morphism_ok'] else 'FAIL'}" for e in report["fixtures"]]
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="projdyn", description=__doc__.splitlines()[0])
    parser.add_argument("--human", action="store_true", help="readable output instead of JSON")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", default=argparse.SUPPRESS,
                        help="readable output instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a map with a periodic point of given period")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--seed", help="seed for random draws (default: enumerate 2, 3, ...)")
    p.add_argument("--choices", help="pinned coefficients, e.g. 'c=1,b:=1-a'")
    p.add_argument("--budget", type=int, default=1000, help="total draw budget")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="certify the primitive period of a point")
    p.add_argument("--map", required=True, help="JSON file or fixture:<id>")
    p.add_argument("--point")
    p.add_argument("--period", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", parents=[common], help="decide whether a map is a morphism")
    p.add_argument("--map", required=True)
    p.add_argument("--no-screen", action="store_true", help="skip the modular fast path")
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("product", parents=[common], help="splice two maps")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("plan", parents=[common], help="best block plan for a dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--extra-period", action="append", default=[], metavar="M:n[:SOURCE]")
    p.add_argument("--realize", action="store_true")
    p.add_argument("--seed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("check-fixtures", aliases=["paper-check"], parents=[common],
                       help="re-certify every published example")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
