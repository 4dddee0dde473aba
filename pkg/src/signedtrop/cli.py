"""Command-line front end.

One verb per invocation; matrices are given inline (rows separated by ';')
or via @file, with columns as points.  Results go to standard output as JSON
or delimited matrix text; the plot verb renders a matplotlib figure to an SVG
file or to standard output.

Exit codes: 0 success, 1 verified negative answer (non-member, infeasible),
2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .linalg import SymMatrix, parse_matrix, parse_vector
from .elimination import (
    farkas,
    fm_step_nonstrict,
    fm_step_strict,
    parse_halfspace_system,
    seq_system_solve_bruteforce,
)
from .convexity import (
    NonConvexError,
    UnboundedError,
    hrep_to_vrep,
    member,
    orthant_hull,
    segment,
    vrep_to_hrep,
)
from .puiseux import lift_construct, lift_verify


class InputError(Exception):
    pass


def _load(text: str) -> str:
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return fh.read()
    return text


def _matrix(text: str) -> SymMatrix:
    try:
        return parse_matrix(_load(text))
    except (ValueError, OSError) as exc:
        raise InputError(f"bad matrix: {exc}") from exc


def _vector(text: str):
    try:
        return parse_vector(_load(text))
    except (ValueError, OSError) as exc:
        raise InputError(f"bad vector: {exc}") from exc


def _halfspaces(text: str):
    try:
        return parse_halfspace_system(_load(text))
    except (ValueError, OSError) as exc:
        raise InputError(f"bad halfspace system: {exc}") from exc


def _emit(obj) -> None:
    print(json.dumps(obj))


def cmd_farkas(args) -> int:
    cert = farkas(_matrix(args.A))
    _emit(cert.to_json())
    return 0


def cmd_feas(args) -> int:
    a = _matrix(args.A)
    if args.teq:
        if args.b is None:
            raise InputError("--teq needs -b")
        b = _vector(args.b)
        if len(b) != a.rows:
            raise InputError("target length must match the row count")
        x = seq_system_solve_bruteforce(a, b)
        out = {
            "mode": "teq-bruteforce (experimental)",
            "feasible": x is not None,
        }
        if x is not None:
            out["solution"] = [str(v) for v in x]
        _emit(out)
        return 0 if x is not None else 1
    cert = farkas(a)
    _emit(
        {
            "kernel_nonempty": cert.kind == "kernel",
            "separator_nonempty": cert.kind == "separator",
            "certificate": cert.to_json(),
        }
    )
    return 0


def cmd_member(args) -> int:
    a = _matrix(args.A)
    b = _vector(args.b)
    if len(b) != a.rows:
        raise InputError("point dimension must match the generator rows")
    res = member(a, b)
    out = {"member": res.member}
    if res.member:
        out["witness"] = [str(x) for x in res.witness]
    else:
        out["separator"] = res.separator.to_json()
    _emit(out)
    return 0 if res.member else 1


def cmd_hull(args) -> int:
    a = _matrix(args.A)
    report = orthant_hull(a).to_json()
    if args.figure:
        if a.rows != 2:
            raise InputError("--figure supports dimension 2 only")
        from .plot import render_hull_figure, save_figure

        fmt = "png" if args.figure.endswith(".png") else "svg"
        save_figure(render_hull_figure(a), args.figure, fmt=fmt)
        report["figure"] = args.figure
    _emit(report)
    return 0


def cmd_eliminate(args) -> int:
    if args.strict:
        a = _matrix(args.A)
        if not (1 <= args.row <= a.rows):
            raise InputError(f"--row must be in 1..{a.rows}")
        result = fm_step_strict(a, args.row - 1)
        if args.json:
            _emit(result.to_json())
        else:
            print(result if result.rows else "(empty)")
        return 0
    rows = _halfspaces(args.H)
    if not rows:
        raise InputError("empty system")
    if not (1 <= args.var <= rows[0].dim):
        raise InputError(f"--var must be in 1..{rows[0].dim}")
    try:
        out = fm_step_nonstrict(rows, args.var)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        _emit([r.to_json() for r in out])
    else:
        for r in out:
            print(r)
    return 0


def cmd_segment(args) -> int:
    p, q = _vector(args.p), _vector(args.q)
    if len(p) != len(q):
        raise InputError("endpoint dimensions differ")
    _emit(segment(p, q).to_json())
    return 0


def cmd_vrep2hrep(args) -> int:
    rows = vrep_to_hrep(_matrix(args.A))
    if args.json:
        _emit([r.to_json() for r in rows])
    else:
        for r in rows:
            print(r)
    return 0


def cmd_hrep2vrep(args) -> int:
    rows = _halfspaces(args.H)
    try:
        v = hrep_to_vrep(rows)
    except (NonConvexError, UnboundedError) as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        _emit(v.to_json())
    else:
        print(v if v.cols else "(no generators)")
    return 0


def cmd_liftcheck(args) -> int:
    a = _matrix(args.A)
    x = _vector(args.x)
    b = _vector(args.b)
    ok = lift_verify(a, x, b)
    out = {"ok": ok}
    if ok:
        lift = lift_construct(a, x, b)
        out["lift"] = [[str(s) for s in row] for row in lift.entries]
    _emit(out)
    return 0 if ok else 1


def cmd_plot(args) -> int:
    from .plot import render_hull_figure, save_figure

    a = _matrix(args.A)
    if a.rows != 2:
        raise InputError("plot supports dimension 2 only")
    halfspaces = _halfspaces(args.halfspaces) if args.halfspaces else None
    fig = render_hull_figure(a, halfspaces=halfspaces, span=args.span)
    if args.output:
        fmt = "png" if args.output.endswith(".png") else "svg"
        save_figure(fig, args.output, fmt=fmt)
        _emit({"figure": args.output, "generators": a.to_json()})
    else:
        save_figure(fig, sys.stdout.buffer, fmt="svg")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trop",
        description="Exact signed tropical convexity toolkit",
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("farkas", help="kernel or separator certificate")
    p.add_argument("-A", required=True, help="matrix, inline or @file")
    p.set_defaults(fn=cmd_farkas)

    p = sub.add_parser("feas", help="feasibility report")
    p.add_argument("-A", required=True)
    p.add_argument("-b", help="target vector for the --teq form")
    p.add_argument(
        "--teq",
        action="store_true",
        help="experimental brute-force check of the entrywise below-or-balanced system",
    )
    p.set_defaults(fn=cmd_feas)

    p = sub.add_parser("member", help="hull membership with certificate")
    p.add_argument("-A", required=True, help="generators as columns")
    p.add_argument("-b", required=True, help="query point")
    p.set_defaults(fn=cmd_member)

    p = sub.add_parser("hull", help="orthant decomposition of the hull")
    p.add_argument("-A", required=True)
    p.add_argument("--figure", help="also render the planar hull to this file")
    p.set_defaults(fn=cmd_hull)

    p = sub.add_parser("eliminate", help="one Fourier-Motzkin step")
    p.add_argument("-A", help="matrix for the strict form")
    p.add_argument("-H", help="halfspace system for the non-strict form")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--row", type=int, default=1, help="1-based row to eliminate (strict)")
    p.add_argument("--var", type=int, default=1, help="1-based variable to eliminate")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_eliminate)

    p = sub.add_parser("segment", help="piecewise description of a segment")
    p.add_argument("-p", required=True)
    p.add_argument("-q", required=True)
    p.set_defaults(fn=cmd_segment)

    p = sub.add_parser("vrep2hrep", help="generators to closed halfspaces")
    p.add_argument("-A", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_vrep2hrep)

    p = sub.add_parser("hrep2vrep", help="closed halfspaces to generators")
    p.add_argument("-H", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_hrep2vrep)

    p = sub.add_parser("liftcheck", help="series lift oracle for a membership witness")
    p.add_argument("-A", required=True)
    p.add_argument("-x", required=True, help="normalized weights")
    p.add_argument("-b", required=True, help="target point")
    p.set_defaults(fn=cmd_liftcheck)

    p = sub.add_parser("plot", help="render a planar hull figure")
    p.add_argument("-A", required=True)
    p.add_argument("-o", "--output", help="output file (.svg or .png); stdout SVG if absent")
    p.add_argument("--span", type=float, help="magnitude clamp of the display map")
    p.add_argument("--halfspaces", help="optional halfspace system to overlay")
    p.set_defaults(fn=cmd_plot)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.verb == "eliminate" and args.strict and not args.A:
            raise InputError("--strict needs -A")
        if args.verb == "eliminate" and not args.strict and not args.H:
            raise InputError("the non-strict form needs -H")
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # downstream closed the pipe; exit quietly like any well-behaved tool
        try:
            sys.stdout.close()
        except OSError:
            pass
        return 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
