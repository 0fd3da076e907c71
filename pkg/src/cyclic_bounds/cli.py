"""Command-line surface: bounds, tangent, witness, minimize, verify.

Exit codes: 0 success, 1 computational failure (diagnostic on stderr),
2 usage error.  All randomness flows from --seed, so identical invocations
produce identical output.  Floats print with 17 significant digits in csv and
json modes and 6 in text mode (the tangent intercept gamma keeps 12).
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .bounds import bounds_table, bounds_table_csv, bounds_table_json
from .errors import CapacityError, CyclicBoundsError
from .funcs import INFINITY
from .optimize import MinimizeConfig, minimize
from .sums import vector_to_lines
from .tangent import gamma_table_csv, gamma_table_json, solve_tangent
from .verification import report_to_json, run_verification
from .witness import DEFAULT_N_CAP, build_witness, plan_witness, witness_value_and_bound

__all__ = ["main", "entry_point"]

_MAX_TOL = 1e-3


def _read_thread_cap() -> int:
    """Parallelism cap from CYCLIC_BOUNDS_THREADS; execution is serial, so any
    positive cap is honored trivially."""
    raw = os.environ.get("CYCLIC_BOUNDS_THREADS", "")
    if not raw:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        return 1
    return max(cap, 1)


def _tol_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--tol",
        type=float,
        default=1e-12,
        help="residual tolerance, in (0, 1e-3] (default 1e-12)",
    )


def _check_tol(parser: argparse.ArgumentParser, tol: float) -> float:
    if not (0.0 < tol <= _MAX_TOL):
        parser.error(f"--tol must lie in (0, {_MAX_TOL}], got {tol}")
    return tol


def _fmt6(v: float) -> str:
    return format(v, ".6g")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclic-bounds",
        description="Floors, ceilings, witnesses and minimizers for normalized cyclic sums.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="floor/ceiling table for k = 2..k-max")
    p_bounds.add_argument("--k-max", type=int, required=True, help="largest k (>= 2)")
    p_bounds.add_argument(
        "--format", choices=("text", "csv", "json"), default="text"
    )
    _tol_flag(p_bounds)

    p_tan = sub.add_parser("tangent", help="common-tangent solution for one k")
    p_tan.add_argument(
        "--k", required=True, help="family index: a real >= 2, or the literal 'inf'"
    )
    p_tan.add_argument("--format", choices=("text", "csv", "json"), default="text")
    _tol_flag(p_tan)

    p_wit = sub.add_parser("witness", help="near-optimal witness vector for one k")
    p_wit.add_argument("--k", type=int, required=True, help="integer k >= 2")
    p_wit.add_argument("--eps", type=float, required=True, help="target slack > 0")
    p_wit.add_argument(
        "--out", default=None, help="stream the vector here, one value per line"
    )
    p_wit.add_argument(
        "--n-cap",
        type=int,
        default=DEFAULT_N_CAP,
        help=f"largest allowed witness length (default {DEFAULT_N_CAP})",
    )
    p_wit.add_argument("--format", choices=("text", "json"), default="text")

    p_min = sub.add_parser("minimize", help="multi-start descent at concrete (n, k)")
    p_min.add_argument("--n", type=int, required=True)
    p_min.add_argument("--k", type=int, required=True)
    p_min.add_argument("--restarts", type=int, default=8)
    p_min.add_argument("--seed", type=int, default=0)
    p_min.add_argument("--max-iters", type=int, default=600)

    p_ver = sub.add_parser("verify", help="run the randomized invariant suites")
    p_ver.add_argument("--suite", choices=("all", "fast"), default="fast")
    p_ver.add_argument("--seed", type=int, default=0)

    return parser


def _cmd_bounds(parser, args) -> int:
    if args.k_max < 2:
        parser.error(f"--k-max must be >= 2, got {args.k_max}")
    tol = _check_tol(parser, args.tol)
    rows = bounds_table(args.k_max, tol)
    if args.format == "csv":
        sys.stdout.write(bounds_table_csv(rows))
    elif args.format == "json":
        sys.stdout.write(bounds_table_json(rows) + "\n")
    else:
        sys.stdout.write(f"{'k':>6}  {'lower':>10}  {'upper':>10}  {'gap':>10}\n")
        for r in rows:
            k = "inf" if math.isinf(r.k) else str(int(r.k))
            sys.stdout.write(
                f"{k:>6}  {_fmt6(r.lower):>10}  {_fmt6(r.upper):>10}  {_fmt6(r.gap):>10}\n"
            )
    return 0


def _cmd_tangent(parser, args) -> int:
    if args.k.strip().lower() == "inf":
        idx = INFINITY
    else:
        try:
            idx = float(args.k)
        except ValueError:
            parser.error(f"--k must be a real number or 'inf', got {args.k!r}")
        if idx < 2.0:
            parser.error(f"--k must be >= 2 or 'inf', got {args.k}")
    tol = _check_tol(parser, args.tol)
    sol = solve_tangent(idx, tol)
    if args.format == "csv":
        sys.stdout.write(gamma_table_csv([sol]))
    elif args.format == "json":
        sys.stdout.write(gamma_table_json([sol]) + "\n")
    else:
        k_str = "inf" if math.isinf(sol.idx) else _fmt6(sol.idx)
        sys.stdout.write(f"k       {k_str}\n")
        sys.stdout.write(f"a       {_fmt6(sol.a)}\n")
        sys.stdout.write(f"b       {_fmt6(sol.b)}\n")
        sys.stdout.write(f"gamma   {format(sol.gamma, '.12g')}\n")
        sys.stdout.write(f"lambda  {_fmt6(sol.lam)}\n")
        sys.stdout.write(f"mu      {_fmt6(sol.mu)}\n")
        sys.stdout.write(
            "residuals  " + "  ".join(format(r, ".3g") for r in sol.residuals) + "\n"
        )
    return 0


def _cmd_witness(parser, args) -> int:
    if args.k < 2:
        parser.error(f"--k must be an integer >= 2, got {args.k}")
    if not args.eps > 0.0:
        parser.error(f"--eps must be positive, got {args.eps}")
    sol = solve_tangent(args.k)
    spec = plan_witness(args.k, args.eps, sol, n_cap=args.n_cap)
    report = witness_value_and_bound(spec)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(vector_to_lines(build_witness(spec)))
    ok = report.value <= report.analytic_bound < report.gamma_plus_eps
    if args.format == "json":
        body = spec.to_json()[:-1]  # reopen the record to append the outcome
        sys.stdout.write(
            body
            + f', "m_prime": {spec.m_prime}'
            + f', "value": {format(report.value, ".17g")}'
            + f', "analytic_bound": {format(report.analytic_bound, ".17g")}'
            + f', "gamma_plus_eps": {format(report.gamma_plus_eps, ".17g")}'
            + f', "certified": {"true" if ok else "false"}'
            + "}\n"
        )
    else:
        sys.stdout.write(f"k               {spec.k}\n")
        sys.stdout.write(f"n               {spec.n}\n")
        sys.stdout.write(f"m               {spec.m}\n")
        sys.stdout.write(f"m_prime         {spec.m_prime}\n")
        sys.stdout.write(f"mu_star         {spec.mu_star}\n")
        sys.stdout.write(f"a_star          {_fmt6(spec.a_star)}\n")
        sys.stdout.write(f"b_star          {_fmt6(spec.b_star)}\n")
        sys.stdout.write(f"delta           {_fmt6(spec.delta)}\n")
        sys.stdout.write(f"analytic_bound  {_fmt6(report.analytic_bound)}\n")
        sys.stdout.write(f"value           {_fmt6(report.value)}\n")
        sys.stdout.write(f"gamma_plus_eps  {_fmt6(report.gamma_plus_eps)}\n")
        if args.out:
            sys.stdout.write(f"vector          {args.out}\n")
    if not ok:
        sys.stderr.write(
            f"witness certification failed: value={report.value!r}, "
            f"bound={report.analytic_bound!r}, target={report.gamma_plus_eps!r}\n"
        )
        return 1
    return 0


def _cmd_minimize(parser, args) -> int:
    if args.k < 1 or args.n < args.k:
        parser.error(f"need n >= k >= 1, got n={args.n}, k={args.k}")
    if args.restarts < 0:
        parser.error(f"--restarts must be >= 0, got {args.restarts}")
    cfg = MinimizeConfig(
        restarts=args.restarts, seed=args.seed, max_iters=args.max_iters
    )
    result = minimize(args.n, args.k, cfg)
    sys.stdout.write(result.to_json() + "\n")
    return 0


def _cmd_verify(parser, args) -> int:
    report = run_verification(suite=args.suite, seed=args.seed)
    sys.stdout.write(report_to_json(report) + "\n")
    return 0 if report.passed else 1


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _read_thread_cap()
    handlers = {
        "bounds": _cmd_bounds,
        "tangent": _cmd_tangent,
        "witness": _cmd_witness,
        "minimize": _cmd_minimize,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](parser, args)
    except CapacityError as exc:
        needed = f" (needed n = {exc.required_n})" if exc.required_n else ""
        sys.stderr.write(f"capacity error: {exc}{needed}\n")
        return 1
    except CyclicBoundsError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
