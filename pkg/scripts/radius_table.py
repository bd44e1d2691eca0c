"""Radii of every problem kind for a few parameter sets and all three
normalizations, each checked on circles around the radius.

    python scripts/radius_table.py
    python scripts/radius_table.py --csv radii.csv
"""
import argparse
import csv
import sys
import time

from mlradii import MLParams, MLRadiiError, ProblemSpec, solve, wi_check
from mlradii.verify import verify_result

PARAMS = [
    (MLParams(2, 2, 1), True),  # sin z
    (MLParams(2, 1, 1), True),  # z cos z
    (MLParams(3, 1, 1), False),
    (MLParams(3, 1.5, 2), False),
    (MLParams(6, 3.7, 0.5), False),
]
PROBLEMS = [
    ProblemSpec("star"),
    ProblemSpec("convex"),
    ProblemSpec("ucv", eta=1),
    ProblemSpec("sp", eta=1),
    ProblemSpec("alphaconvex", alpha=0.5),
    ProblemSpec("strong", rho=0.5),
]


def label(p):
    extra = {"ucv": f"eta={p.eta:g}", "sp": f"eta={p.eta:g}", "alphaconvex": f"alpha={p.alpha:g}",
             "strong": f"rho={p.rho:g}"}.get(p.kind.value, "")
    return f"{p.kind.value} {extra}".strip()


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--csv", help="also write the rows to this file")
    args = ap.parse_args()

    rows = []
    t0 = time.perf_counter()
    for params, override in PARAMS:
        verdict = wi_check(params.omega, params.beta).status.value
        for norm in "fgh":
            for problem in PROBLEMS:
                row = {"omega": params.omega, "beta": params.beta, "gamma": params.gamma, "wi": verdict,
                       "norm": norm, "problem": label(problem)}
                try:
                    res = solve(problem, params, norm, assume_real_zeros=override)
                    res, rep = verify_result(res)
                    row.update(radius=res.radius, verified=res.verified, inner=rep.inner_pass,
                               outer=rep.outer_fail, status="ok")
                except MLRadiiError as exc:
                    row.update(radius=None, verified=None, inner=None, outer=None, status=type(exc).__name__)
                rows.append(row)
    elapsed = time.perf_counter() - t0

    fmt = "{:>5} {:>5} {:>5}  {:<9} {:<4} {:<22} {:>22}  {:<8} {}"
    print(fmt.format("omega", "beta", "gamma", "W_i", "norm", "problem", "radius", "check", "status"))
    for r in rows:
        radius = "-" if r["radius"] is None else f"{r['radius']:.14f}"
        print(fmt.format(f"{r['omega']:g}", f"{r['beta']:g}", f"{r['gamma']:g}", r["wi"], r["norm"],
                         r["problem"], radius, r["verified"] or "-", r["status"]))
    print(f"\n{len(rows)} problems in {elapsed:.1f} s", file=sys.stderr)

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)


if __name__ == "__main__":
    main()
