"""Command-line front end.

    mlradii eval      --omega 1 --beta 1 --gamma 1 --x 1
    mlradii zeros     --omega 3 --beta 1 --gamma 1 --target lambda --count 5
    mlradii radius    --problem ucv --norm g --omega 3 --beta 1 --gamma 1 --eta 1 --verify
    mlradii sweep     --problem star --norm g --omega 3 --beta 1 --gamma 1 --vary rho --from 0 --to 0.9 --steps 10
    mlradii wi-check  --omega 3 --beta 1

Exit codes: 0 success, 2 invalid input, 3 parameters not admitted, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import InvalidParameters, MLRadiiError
from .ml_core import MLParams, eval_phi, eval_phi_derivative
from .param_region import wi_check
from .radii import DEFAULT_TOL, ProblemKind, ProblemSpec, solve
from .verify import DEFAULT_DELTA, DEFAULT_GRID, verify_result
from .zero_finder import DEFAULT_ZERO_TOL, ZeroTarget, zeros_of

log = logging.getLogger("mlradii")

EXIT_OK, EXIT_INVALID, EXIT_NOT_ADMITTED, EXIT_NUMERIC = 0, 2, 3, 4

TARGET_ALIASES = {
    "lambda": ZeroTarget.LAMBDA,
    "psi_prime": ZeroTarget.PSI_PRIME,
    "g_prime": ZeroTarget.G_PRIME,
    "h_prime": ZeroTarget.H_PRIME,
    "h_function": ZeroTarget.H_FUNCTION,
}


def real(text):
    """Plain finite decimal; rejects nan, inf and anything float() would not parse."""
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a plain decimal number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return v


def positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def target_type(text):
    t = TARGET_ALIASES.get(text.lower())
    if t is None:
        try:
            t = ZeroTarget(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"unknown target {text!r}") from None
    return t


# ---------------------------------------------------------------------------
# output


def _flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out.update(_flatten({str(i): x for i, x in enumerate(v)}, key + "."))
        else:
            out[key] = v
    return out


def _cell(v, precise=False):
    if isinstance(v, float):
        return "%.17g" % v if precise else repr(v)
    if v is None:
        return ""
    return str(v)


def render(payload, fmt, rows_key=None):
    """Serialize a payload dict.  ``rows_key`` names a list of row dicts (sweep)."""
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if rows_key is not None:
        rows = [_flatten(r) for r in payload[rows_key]]
        header = list(dict.fromkeys(k for r in rows for k in r))
    else:
        rows = [_flatten(payload)]
        header = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_cell(r.get(h), precise=True) for h in header])
        return buf.getvalue().rstrip("\n")
    if rows_key is not None:
        meta = {k: v for k, v in _flatten({k: v for k, v in payload.items() if k != rows_key}).items()}
        lines = [f"{k}: {_cell(v)}" for k, v in meta.items()]
        cells = [[_cell(r.get(h)) for h in header] for r in rows]
        widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h) for i, h in enumerate(header)]
        lines.append("  ".join(h.ljust(wd) for h, wd in zip(header, widths)))
        lines += ["  ".join(c.ljust(wd) for c, wd in zip(row, widths)) for row in cells]
        return "\n".join(lines)
    width = max(len(k) for k in header)
    return "\n".join(f"{k.ljust(width)}  {_cell(rows[0][k])}" for k in header)


# ---------------------------------------------------------------------------
# commands


def _params(args):
    return MLParams(args.omega, args.beta, args.gamma)


def cmd_eval(args):
    p = _params(args)
    res = eval_phi(p, args.x) if args.order == 0 else eval_phi_derivative(p, args.x, args.order)
    payload = {
        "params": p.as_dict(),
        "x": args.x,
        "order": args.order,
        "value": res.value,
        "est_error": res.est_error,
        "terms_used": res.terms_used,
    }
    return payload, None


def cmd_zeros(args):
    table = zeros_of(_params(args), args.target, args.count, tol=args.tol)
    return table.to_dict(), None


def _problem(args, **override):
    kw = dict(eta=args.eta, rho=args.rho, alpha=args.alpha)
    kw.update(override)
    return ProblemSpec(ProblemKind(args.problem), **kw)


def _settings(args):
    return {"tol": args.tol, "delta": args.delta, "grid": args.grid,
            "assume_real_zeros": args.assume_real_zeros, "verify": args.verify}


def cmd_radius(args):
    problem = _problem(args)
    p = _params(args)
    res = solve(problem, p, args.norm, assume_real_zeros=args.assume_real_zeros, tol=args.tol)
    rep = None
    if args.verify:
        res, rep = verify_result(res, args.delta, args.grid)
    payload = res.to_dict()
    payload["settings"] = _settings(args)
    if rep is not None:
        payload["verification"] = rep.to_dict()
    return payload, None


def _sweep_row(args, p, value):
    row = {args.vary: value, "radius": None, "residual": None, "zeros_used": None, "verified": None,
           "status": "ok"}
    try:
        problem = _problem(args, **{args.vary: value})
        res = solve(problem, p, args.norm, assume_real_zeros=args.assume_real_zeros, tol=args.tol)
        if args.verify:
            res, _ = verify_result(res, args.delta, args.grid)
        row.update(radius=res.radius, residual=res.residual, zeros_used=res.zeros_used, verified=res.verified)
    except MLRadiiError as exc:
        row["status"] = f"{type(exc).__name__}: {exc}"
        row["_code"] = exc.exit_code
    return row


def cmd_sweep(args):
    if args.steps < 2:
        raise InvalidParameters("sweep needs --steps >= 2")
    if not args.start < args.stop:
        raise InvalidParameters("sweep needs --from < --to")
    p = _params(args)
    grid = [args.start + (args.stop - args.start) * i / (args.steps - 1) for i in range(args.steps)]
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(lambda v: _sweep_row(args, p, v), grid))
    else:
        rows = [_sweep_row(args, p, v) for v in grid]
    codes = [r.pop("_code") for r in rows if "_code" in r]
    payload = {
        "problem": args.problem,
        "norm": args.norm,
        "params": p.as_dict(),
        "vary": args.vary,
        "fixed": {k: getattr(args, k) for k in ("eta", "rho", "alpha") if k != args.vary},
        "settings": _settings(args),
        "rows": rows,
    }
    code = EXIT_OK if len(codes) < len(rows) else codes[0]
    return payload, code


def cmd_wi_check(args):
    v = wi_check(args.omega, args.beta, args.max_depth)
    payload = {"omega": args.omega, "beta": args.beta, "max_depth": args.max_depth, **v.to_dict()}
    if v.witness is not None:
        payload["witness_chain"] = v.witness.describe()
    return payload, None


# ---------------------------------------------------------------------------
# parser


def _add_params(p, gamma=True):
    p.add_argument("--omega", type=real, required=True)
    p.add_argument("--beta", type=real, required=True)
    if gamma:
        p.add_argument("--gamma", type=real, required=True)


def _add_format(p):
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")


def _add_problem(p):
    p.add_argument("--problem", choices=[k.value for k in ProblemKind], required=True)
    p.add_argument("--norm", choices=("f", "g", "h"), required=True)
    _add_params(p)
    p.add_argument("--eta", type=real, default=0.0)
    p.add_argument("--alpha", type=real, default=0.0)
    p.add_argument("--rho", type=real, default=0.0)
    p.add_argument("--tol", type=real, default=DEFAULT_TOL)
    p.add_argument("--assume-real-zeros", action="store_true",
                   help="skip the W_i admission test (e.g. omega = 2 sine/cosine cases)")
    p.add_argument("--verify", action="store_true", help="run the geometric check on circles around the radius")
    p.add_argument("--delta", type=real, default=DEFAULT_DELTA)
    p.add_argument("--grid", type=positive_int, default=DEFAULT_GRID)
    _add_format(p)


def build_parser():
    ap = argparse.ArgumentParser(prog="mlradii", description=__doc__.split("\n")[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate phi or its derivatives")
    _add_params(p)
    p.add_argument("--x", type=real, required=True)
    p.add_argument("--order", type=int, choices=(0, 1, 2), default=0)
    _add_format(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("zeros", help="leading positive zeros of a target function")
    _add_params(p)
    p.add_argument("--target", type=target_type, default=ZeroTarget.LAMBDA,
                   help="lambda, psi_prime, g_prime, h_prime or h_function")
    p.add_argument("--count", type=positive_int, default=5)
    p.add_argument("--tol", type=real, default=DEFAULT_ZERO_TOL)
    _add_format(p)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("radius", help="solve one radius problem")
    _add_problem(p)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("sweep", help="solve a radius problem over a parameter grid")
    _add_problem(p)
    p.add_argument("--vary", choices=("eta", "rho", "alpha"), required=True)
    p.add_argument("--from", dest="start", type=real, required=True)
    p.add_argument("--to", dest="stop", type=real, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--jobs", type=positive_int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("wi-check", help="decide (1/omega, beta) in W_i")
    _add_params(p, gamma=False)
    p.add_argument("--max-depth", type=positive_int, default=64)
    _add_format(p)
    p.set_defaults(func=cmd_wi_check)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        payload, code = args.func(args)
    except MLRadiiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(render(payload, args.format, rows_key="rows" if args.func is cmd_sweep else None))
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
