"""Command-line front end.

    braidtrace exact    --braid "1 1 1" --strands 2
    braidtrace kl3      --braid "1 -2 1 -2" --strands 3 --theta pi/2
    braidtrace ajl      --braid "1 -2 1 -2" --strands 3 --theta 0.4
    braidtrace hadamard --braid "1 1 1" --strands 2 --theta 0.4 --shots 100000
    braidtrace sweep    --braid "1 -2 1 -2" --strands 3 --method ajl --theta-min 0.05 --theta-max pi/5 --steps 50
    braidtrace check    --level fast

Exit status: 0 on success, 1 on invalid input, 2 on an internal assertion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, _kernels
from .ajl import AJLParams, enumerate_basis, rho_ajl, validate_params
from .braid import closure_permutation, exponent_sum, parse_braid
from .bracket import default_workers, exact_invariants
from .checks import run_checks
from .hadamard import ShotPlan, estimate_jones
from .kl3 import KLParams, bracket_kl3, jones_kl3, rho3
from .markov import evaluate_ajl, weighted_trace

SWEEP_COLUMNS = ["theta", "A_re", "A_im", "bracket_re", "bracket_im", "f_re", "f_im"]

_ANGLE = re.compile(r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


def parse_angle(text: str) -> float:
    """Decimal radians or multiples of pi: ``0.4``, ``pi/5``, ``2pi/3``, ``-3*pi/4``."""
    m = _ANGLE.match(text)
    if m:
        num = m.group(1)
        k = 1.0 if num in ("", "+") else -1.0 if num == "-" else float(num)
        den = float(m.group(2)) if m.group(2) else 1.0
        if den == 0:
            raise ValueError(f"zero denominator in angle {text!r}")
        return k * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"cannot parse angle {text!r}") from None


def _angle_arg(text: str) -> float:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _cplx(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _braid(args):
    return parse_braid(args.braid, args.strands)


def cmd_exact(args) -> dict:
    b = _braid(args)
    inv = exact_invariants(b, args.method)
    _, components = closure_permutation(b)
    return {"braid": str(b), "n_strands": b.n_strands, "writhe": exponent_sum(b),
            "components": components, **inv.to_json()}


def cmd_kl3(args) -> dict:
    b = _braid(args)
    p = KLParams(args.theta)
    M = rho3(b, p, args.allow_nonunitary)
    tr = complex(np.trace(M))
    return {"braid": str(b), "theta": p.theta, "A": _cplx(p.A), "delta": p.delta,
            "trace_re": tr.real, "trace_im": tr.imag,
            "bracket": _cplx(bracket_kl3(b, p, args.allow_nonunitary)),
            "f": _cplx(jones_kl3(b, p, args.allow_nonunitary)), "unitary": p.unitary}


def _ajl_params(args, n):
    r = args.r if args.r is not None else n + 2
    report = validate_params(args.theta, r, n)
    return AJLParams(args.theta, r), report


def cmd_ajl(args) -> dict:
    b = _braid(args)
    p, report = _ajl_params(args, b.n_strands)
    ev = evaluate_ajl(b, p, force=args.force_truncation)
    return {"braid": str(b), "theta": p.theta, "r": p.r, "A": _cplx(ev.A), "d": ev.d,
            "dim": ev.dim, "mode": report.mode, "truncated": report.truncated,
            "warnings": report.warnings, "trace": _cplx(ev.trace), "bracket_raw": _cplx(ev.raw),
            "bracket_reduced": _cplx(ev.reduced), "f": _cplx(ev.f)}


def cmd_hadamard(args) -> dict:
    b = _braid(args)
    plan = ShotPlan(args.shots, args.seed, args.parts)
    out = {"braid": str(b), "theta": args.theta, "method": args.method, "shots": args.shots,
           "seed": args.seed}
    if args.method == "ajl":
        p, report = _ajl_params(args, b.n_strands)
        basis = enumerate_basis(b.n_strands, p.r)
        est = estimate_jones(b, p, plan, basis, z=args.z, force=args.force_truncation)
        out.update(r=p.r, mode=report.mode, warnings=report.warnings)
        exact_trace = lambda: weighted_trace(rho_ajl(b, basis, p), basis, p)  # noqa: E731
        exact_f = lambda: evaluate_ajl(b, p, basis, force=args.force_truncation).f  # noqa: E731
    else:
        p = KLParams(args.theta)
        est = estimate_jones(b, p, plan, z=args.z)
        exact_trace = lambda: complex(np.trace(rho3(b, p)))  # noqa: E731
        exact_f = lambda: jones_kl3(b, p)  # noqa: E731
    t = est.trace
    out.update(A=_cplx(p.A), estimate_re=t.estimate.real, estimate_im=t.estimate.imag,
               stderr_re=t.stderr_re, stderr_im=t.stderr_im, shots_used=t.shots_used,
               per_sector={str(k): _cplx(v) for k, v in t.per_sector.items()},
               jones_estimate=_cplx(est.value), jones_stderr=est.stderr,
               confidence_radius=est.confidence_radius, z=args.z)
    if args.with_exact:
        out["exact"] = {"trace": _cplx(exact_trace()), "f": _cplx(exact_f())}
    return out


def _sweep_row(args, b, theta):
    I = exponent_sum(b)
    if args.method == "kl3":
        p = KLParams(theta)
        if p.singular:
            nan = complex(math.nan, math.nan)
            return theta, p.A, nan, nan
        bracket = bracket_kl3(b, p, allow_nonunitary=True)
    elif args.method == "ajl":
        r = args.r if args.r is not None else b.n_strands + 2
        p = AJLParams(theta, r)
        bracket = evaluate_ajl(b, p, force=args.force_truncation).reduced
    else:
        r = args.r if args.r is not None else b.n_strands + 2
        p = AJLParams(theta, r)
        est = estimate_jones(b, p, ShotPlan(args.shots, args.seed), force=args.force_truncation,
                             workers=1)
        bracket = est.reduced
    f = (-p.A ** 3) ** (-I) * bracket
    return theta, p.A, bracket, f


def cmd_sweep(args) -> list[list[float]]:
    b = _braid(args)
    if args.steps < 1:
        raise ValueError("--steps must be >= 1")
    grid = np.linspace(args.theta_min, args.theta_max, args.steps) if args.steps > 1 \
        else np.array([args.theta_min])
    with ThreadPoolExecutor(default_workers()) as pool:
        rows = list(pool.map(lambda th: _sweep_row(args, b, float(th)), grid))
    return [[th, A.real, A.imag, br.real, br.imag, f.real, f.imag] for th, A, br, f in rows]


def cmd_check(args) -> dict:
    report = run_checks(args.level, seed=args.seed, only=args.suite or None)
    report["backend"] = _kernels.BACKEND
    return report


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=["json", "csv", "text"], default=None,
                     help="output format (default json; csv for sweep)")
    fmt.add_argument("--output", "-o", default="-", help="output file (default stdout)")

    braid = _Parser(add_help=False)
    braid.add_argument("--braid", required=True, help='signed generators, e.g. "1 -2 1 -2"')
    braid.add_argument("--strands", type=int, required=True)

    angle = _Parser(add_help=False)
    angle.add_argument("--theta", type=_angle_arg, required=True,
                       help='radians or a multiple of pi, e.g. "pi/5"')

    path = _Parser(add_help=False)
    path.add_argument("--r", type=int, default=None, help="line graph G_r (default strands + 2)")
    path.add_argument("--force-truncation", action="store_true",
                      help="evaluate on a truncated basis at a generic angle")

    parser = _Parser(prog="braidtrace", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("exact", parents=[braid, fmt], help="exact bracket, f and Jones polynomial")
    p.add_argument("--method", choices=["auto", "state_sum", "tl"], default="auto")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("kl3", parents=[braid, angle, fmt], help="2x2 unitary trace formula")
    p.add_argument("--allow-nonunitary", action="store_true")
    p.set_defaults(func=cmd_kl3)

    p = sub.add_parser("ajl", parents=[braid, angle, path, fmt], help="path-model Markov trace")
    p.set_defaults(func=cmd_ajl)

    p = sub.add_parser("hadamard", parents=[braid, angle, path, fmt],
                       help="simulated Hadamard-test estimate")
    p.add_argument("--method", choices=["ajl", "kl3"], default="ajl")
    p.add_argument("--shots", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parts", choices=["real", "imaginary", "both"], default="both")
    p.add_argument("--z", type=float, default=4.0, help="confidence radius in standard errors")
    p.add_argument("--with-exact", action="store_true")
    p.set_defaults(func=cmd_hadamard)

    p = sub.add_parser("sweep", parents=[braid, path, fmt], help="evaluate over a theta grid")
    p.add_argument("--method", choices=["ajl", "kl3", "hadamard"], default="ajl")
    p.add_argument("--theta-min", type=_angle_arg, required=True)
    p.add_argument("--theta-max", type=_angle_arg, required=True)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--shots", type=int, default=20_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check", parents=[fmt], help="run invariant suites")
    p.add_argument("--level", choices=["fast", "full"], default="fast")
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    p.set_defaults(func=cmd_check)
    return parser


def _to_text(doc, prefix="") -> str:
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v and not _is_leaf_list(v):
                lines.append(f"{prefix}{k}:")
                lines.append(_to_text(v, prefix + "  "))
            else:
                lines.append(f"{prefix}{k}: {v}")
    elif isinstance(doc, list):
        for item in doc:
            lines.append(_to_text(item, prefix + "- ") if isinstance(item, dict) else f"{prefix}{item}")
    return "\n".join(lines)


def _is_leaf_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def render(doc, fmt: str) -> str:
    if isinstance(doc, list):  # sweep rows
        if fmt == "json":
            return json.dumps([dict(zip(SWEEP_COLUMNS, row)) for row in doc], indent=2) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        w.writerows([[repr(float(x)) for x in row] for row in doc])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "text":
        return _to_text(doc) + "\n"
    raise ValueError(f"{fmt} output is only available for sweep")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or ("csv" if args.command == "sweep" else "json")
    try:
        doc = args.func(args)
        text = render(doc, fmt)
    except (AssertionError, ArithmeticError, TypeError) as exc:
        print(f"braidtrace: internal error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"braidtrace: {exc}", file=sys.stderr)
        return 1
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    if args.command == "check" and not doc["passed"]:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
