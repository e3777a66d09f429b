"""Command-line front end.

Every subcommand writes CSV (default) or JSON to standard output, or to
``--output``; relative output paths are resolved against
``$BESSEL_HITTING_OUTPUT_DIR`` when it is set.  Numbers carry 15
significant digits.

Exit status: 0 on success, 1 for domain errors (illegal ``a``, ``b``,
``nu`` or options), 2 when a numerical budget is exceeded (or, for
``verify``, when any check fails).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings

import numpy as np

from .hitting import (
    HittingQuery,
    QuadratureSpec,
    RegimeError,
    distribution_curve,
    laplace_hitting,
    tail_asymptotic,
    tail_case,
    tail_coefficients,
)
from .oracle import McSpec, simulate_hitting
from .specfun import BesselDomainError, ConvergenceError
from .verification import check_inversion, check_monte_carlo, default_matrix
from .zeros import ZeroSearchError, find_k_zeros

__all__ = ["build_parser", "main", "run"]

OUTPUT_DIR_ENV = "BESSEL_HITTING_OUTPUT_DIR"
HEADER = ("t", "value", "err_estimate", "method")


class NumericalBudgetError(RuntimeError):
    pass


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "pass" if x else "fail"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".15g")


def _emit(header, rows, fmt: str, out) -> None:
    if fmt == "json":
        recs = []
        for r in rows:
            rec = {}
            for k, v in zip(header, r):
                if isinstance(v, str) or isinstance(v, (bool, np.bool_)):
                    rec[k] = v if isinstance(v, str) else bool(v)
                else:
                    rec[k] = float(_fmt(v))
            recs.append(rec)
        json.dump({"columns": list(header), "rows": recs}, out, indent=1)
        out.write("\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])


def _grid(args) -> np.ndarray:
    if args.t:
        ts = np.array(sorted(set(args.t)), dtype=float)
    else:
        if args.count < 1:
            raise RegimeError("grid count must be at least 1")
        if not (0 < args.tmin <= args.tmax):
            raise RegimeError("need 0 < tmin <= tmax")
        if args.count == 1:
            ts = np.array([args.tmin])
        elif args.spacing == "log":
            ts = np.logspace(math.log10(args.tmin), math.log10(args.tmax), args.count)
        else:
            ts = np.linspace(args.tmin, args.tmax, args.count)
    if np.any(ts <= 0):
        raise RegimeError("times must be positive")
    return ts


def _query(args) -> HittingQuery:
    if args.nu is None or args.a is None or args.b is None:
        raise RegimeError("--nu, --a and --b are required")
    return HittingQuery(args.a, args.b, args.nu)


def _quad(args) -> QuadratureSpec:
    return QuadratureSpec(rel_tol=args.rel_tol, abs_tol=args.abs_tol)


def _add_query(p, grid=True):
    p.add_argument("--nu", type=float, help="Bessel index")
    p.add_argument("--a", type=float, help="starting level")
    p.add_argument("--b", type=float, help="target level")
    if grid:
        p.add_argument("--t", type=float, action="append",
                       help="evaluation time (repeatable); overrides the grid options")
        p.add_argument("--tmin", type=float, default=0.01)
        p.add_argument("--tmax", type=float, default=100.0)
        p.add_argument("--count", type=int, default=30)
        p.add_argument("--spacing", choices=("lin", "log"), default="log")


def _add_common(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", help=f"output file (relative paths go under ${OUTPUT_DIR_ENV})")
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--abs-tol", type=float, default=1e-12)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bessel-hitting",
        description="Distribution functions of first hitting times of Bessel processes.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, helptext in (("cdf", "P(tau <= t) on a time grid"),
                           ("survival", "P(tau > t) on a time grid")):
        sp = sub.add_parser(name, help=helptext)
        _add_query(sp)
        _add_common(sp)

    sp = sub.add_parser("laplace", help="E[exp(-lambda tau)]")
    _add_query(sp, grid=False)
    sp.add_argument("--lam", type=float, action="append", required=True,
                    help="transform argument (repeatable)")
    _add_common(sp)

    sp = sub.add_parser("zeros", help="zeros of K_nu as re,im pairs")
    sp.add_argument("--nu", type=float, required=True)
    _add_common(sp)

    sp = sub.add_parser("tail", help="large-time asymptotics of P(tau > t) (outward)")
    _add_query(sp)
    sp.add_argument("--coefficients", action="store_true",
                    help="print the expansion coefficients instead")
    _add_common(sp)

    sp = sub.add_parser("simulate", help="Monte Carlo empirical CDF")
    _add_query(sp)
    sp.add_argument("--paths", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=20240601)
    sp.add_argument("--eps", type=float, default=0.05)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--no-bridge", action="store_true")
    _add_common(sp)

    sp = sub.add_parser("verify", help="concordance report against the oracles")
    sp.add_argument("--cell", choices=("outward", "inward", "from-origin", "to-origin"),
                    help="check a single cell; omit to run the default matrix")
    _add_query(sp, grid=False)
    sp.add_argument("--mc", action="store_true", help="also run Monte Carlo for --cell")
    sp.add_argument("--no-mc", action="store_true",
                    help="skip the Monte Carlo cells of the default matrix")
    sp.add_argument("--seed", type=int, default=20240601)
    sp.add_argument("--paths", type=int, default=100_000)
    _add_common(sp)
    return p


def _cmd_curve(args, survival_form):
    q = _query(args)
    curve = distribution_curve(q, _grid(args), _quad(args), survival_form=survival_form)
    if not np.all(np.isfinite(curve.values)):
        raise NumericalBudgetError("non-finite values on the grid")
    return HEADER, list(curve.rows()), 0


def _cmd_laplace(args):
    q = _query(args)
    rows = []
    for lam in args.lam:
        if not lam > 0:
            raise RegimeError("lambda must be positive")
        rows.append((lam, laplace_hitting(q, lam), 0.0, "closed-form"))
    return ("lambda", "value", "err_estimate", "method"), rows, 0


def _cmd_zeros(args):
    zs = find_k_zeros(args.nu)
    return ("re", "im"), [(z.real, z.imag) for z in zs], 0


def _cmd_tail(args):
    q = _query(args)
    if args.coefficients:
        tc = tail_coefficients(q, _quad(args))
        rows = []
        for m in range(tc.m_max + 1):
            rows.append(("beta1", m, tc.beta1[m]))
            rows.append(("beta2", m, tc.beta2.get(m, 0.0)))
            if tc.beta3:
                rows.append(("beta3", m, tc.beta3[m]))
        if tc.sigma1 is not None:
            rows.append(("sigma1", "", tc.sigma1))
            rows.append(("sigma2", "", tc.sigma2))
        return ("name", "m", "value"), rows, 0
    method = f"tail-case{tail_case(q)}"
    rows = [(t, tail_asymptotic(q, float(t)), math.nan, method) for t in _grid(args)]
    return HEADER, rows, 0


def _cmd_simulate(args):
    q = _query(args)
    ts = _grid(args)
    spec = McSpec(paths=args.paths, t_max=float(ts[-1]), eps=args.eps, seed=args.seed,
                  bridge=not args.no_bridge, workers=args.workers)
    res = simulate_hitting(q, spec)
    return HEADER, list(res.curve(ts).rows()), 0


def _cmd_verify(args):
    if args.cell:
        q = _query(args)
        if q.regime.value != args.cell:
            raise RegimeError(f"(a={q.a:g}, b={q.b:g}) is a {q.regime.value} cell, not {args.cell}")
        rows = [check_inversion(q)]
        if args.mc:
            rows.append(check_monte_carlo(q, paths=args.paths, seed=args.seed))
    else:
        rows = default_matrix(include_mc=not args.no_mc)
    out = [(r.cell, r.method, r.sup_gap, r.budget, r.passed) for r in rows]
    status = 0 if all(r.passed for r in rows) else 2
    return ("cell", "method", "sup_gap", "budget", "pass"), out, status


COMMANDS = {
    "cdf": lambda a: _cmd_curve(a, False),
    "survival": lambda a: _cmd_curve(a, True),
    "laplace": _cmd_laplace,
    "zeros": _cmd_zeros,
    "tail": _cmd_tail,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
}


def _open_output(path):
    if path is None:
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        path = os.path.join(base, path)
    return open(path, "w", encoding="utf-8", newline="")


def run(argv=None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, run the subcommand and return the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            header, rows, status = COMMANDS[args.command](args)
    except (RegimeError, BesselDomainError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (ConvergenceError, ZeroSearchError, NumericalBudgetError, ArithmeticError) as exc:
        print(f"numerical budget exceeded: {exc}", file=stderr)
        return 2
    buf = io.StringIO()
    _emit(header, rows, args.format, buf)
    fh = _open_output(args.output)
    if fh is None:
        stdout.write(buf.getvalue())
    else:
        with fh:
            fh.write(buf.getvalue())
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
