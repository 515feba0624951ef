"""Command line interface: evaluate wave functions, tabulate them over grids,
and run the named verification suites.

Exit codes: 0 success / suite passed, 1 suite failed, 2 domain or input
error, 3 convergence failure.  Output is a single JSON record (eval), a CSV
or JSON stream (table), or a JSON report (verify); byte-stable for identical
inputs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .errors import (
    CSWaveError,
    DegenerateInput,
    DepthExceeded,
    DomainError,
    NonConvergence,
    NonFinite,
    PoleError,
    StepTooLarge,
    ZeroError,
)
from .quadrature import EvalResult, QuadSpec
from .suites import SUITES, run_suite
from .wavefunctions import euler_psi, hc_psi_symmetrized, mb_psi, psi_asymptotic, psi_zero

__all__ = ["main", "build_parser"]

_REPS = ("euler", "mb", "series", "asymptotic", "zero")


def _parse_scalar(tok: str) -> complex:
    if ":" in tok:
        re_s, im_s = tok.split(":", 1)
        return complex(float(re_s), float(im_s))
    return complex(float(tok), 0.0)


def parse_lambda(text: str) -> list[complex]:
    """Comma separated spectral parameters; complex entries as re:im."""
    return [_parse_scalar(t) for t in text.split(",") if t.strip() != ""]


def parse_x(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip() != ""]


def _spec_for(tol: float | None, n: int) -> QuadSpec:
    if tol is None:
        tol = 1e-8 if n <= 2 else 1e-4
    return QuadSpec(abs_tol=1e-300, rel_tol=0.1 * tol, max_depth=26 if n <= 2 else 22)


def _evaluate(rep: str, lam, x, g: float, tol: float | None, kmax: int | None) -> EvalResult:
    n = len(lam)
    if rep == "euler":
        return euler_psi(lam, x, g, _spec_for(tol, n))
    if rep == "mb":
        return mb_psi(lam, x, g, _spec_for(tol, n))
    if rep == "series":
        return hc_psi_symmetrized(lam, x, g, kmax)
    if rep == "asymptotic":
        return EvalResult(psi_asymptotic(lam, x, g), 0.0, 1)
    if rep == "zero":
        if any(v != 0.0 for v in x):
            raise DomainError("rep 'zero' evaluates at x = 0 only")
        return EvalResult(psi_zero(lam, g), 0.0, 1)
    raise DomainError(f"unknown representation {rep!r}")


def _record(rep, g, lam, x, result: EvalResult) -> dict:
    return {
        "rep": rep,
        "g": g,
        "lambda": [[z.real, z.imag] for z in lam],
        "x": list(x),
        "value_re": result.value.real,
        "value_im": result.value.imag,
        "abs_err": result.abs_err,
        "n_evals": result.n_evals,
    }


def cmd_eval(args) -> int:
    lam = parse_lambda(args.lam)
    x = parse_x(args.x) if args.x else [0.0] * len(lam)
    if len(x) != len(lam):
        raise DomainError("--lambda and --x must have the same length")
    result = _evaluate(args.rep, lam, x, args.g, args.tol, args.kmax)
    rec = _record(args.rep, args.g, lam, x, result)
    if args.format == "json":
        print(json.dumps(rec, sort_keys=True))
    else:
        w = csv.DictWriter(sys.stdout, fieldnames=list(rec))
        w.writeheader()
        rec["lambda"] = ";".join(f"{z[0]}:{z[1]}" for z in rec["lambda"])
        rec["x"] = ";".join(str(v) for v in rec["x"])
        w.writerow(rec)
    return 0


def _parse_grid(specs: list[str]):
    """Axes like 'lambda1=-1:1:11' or 'x2=0:2:5'; row-major in given order."""
    axes = []
    for spec in specs:
        name, _, rng = spec.partition("=")
        try:
            lo, hi, count = rng.split(":")
            values = np.linspace(float(lo), float(hi), int(count))
        except ValueError as exc:
            raise DomainError(f"bad grid axis {spec!r}; use name=lo:hi:count") from exc
        if name.startswith("lambda"):
            idx = int(name[6:]) - 1
            axes.append(("lambda", idx, values))
        elif name.startswith("x"):
            idx = int(name[1:]) - 1
            axes.append(("x", idx, values))
        else:
            raise DomainError(f"unknown grid axis {name!r}")
    return axes


def cmd_table(args) -> int:
    lam0 = parse_lambda(args.lam)
    x0 = parse_x(args.x) if args.x else [0.0] * len(lam0)
    if len(x0) != len(lam0):
        raise DomainError("--lambda and --x must have the same length")
    axes = _parse_grid(args.grid or [])
    total = int(np.prod([len(a[2]) for a in axes])) if axes else 0
    if total > 10**4:
        raise DomainError("grid larger than 10^4 points")

    fields = ["rep", "g"]
    fields += [f"lambda{i + 1}" for i in range(len(lam0))]
    fields += [f"x{i + 1}" for i in range(len(x0))]
    if args.rep == "duality":
        fields += ["euler_re", "euler_im", "mb_re", "mb_im", "abs_diff", "error"]
    else:
        fields += ["value_re", "value_im", "abs_err", "n_evals", "error"]

    out = io.StringIO()
    rows = []
    points = []
    if axes:
        shape = [len(a[2]) for a in axes]
        for flat in range(total):
            rem, coords = flat, []
            for size in reversed(shape):
                coords.append(rem % size)
                rem //= size
            points.append(tuple(reversed(coords)))
    for coords in points:
        lam = list(lam0)
        x = list(x0)
        for (kind, idx, values), c in zip(axes, coords):
            if kind == "lambda":
                lam[idx] = complex(values[c])
            else:
                x[idx] = float(values[c])
        row = {"rep": args.rep, "g": args.g}
        row.update({f"lambda{i + 1}": lam[i].real if lam[i].imag == 0 else f"{lam[i].real}:{lam[i].imag}"
                    for i in range(len(lam))})
        row.update({f"x{i + 1}": x[i] for i in range(len(x))})
        try:
            if args.rep == "duality":
                a = _evaluate("euler", lam, x, args.g, args.tol, args.kmax)
                b = _evaluate("mb", lam, x, args.g, args.tol, args.kmax)
                row.update({"euler_re": a.value.real, "euler_im": a.value.imag,
                            "mb_re": b.value.real, "mb_im": b.value.imag,
                            "abs_diff": abs(a.value - b.value), "error": ""})
            else:
                res = _evaluate(args.rep, lam, x, args.g, args.tol, args.kmax)
                row.update({"value_re": res.value.real, "value_im": res.value.imag,
                            "abs_err": res.abs_err, "n_evals": res.n_evals, "error": ""})
        except CSWaveError as exc:
            row.update({k: "" for k in fields if k not in row})
            row["error"] = f"{type(exc).__name__}: {exc}"
        rows.append(row)

    if args.format == "csv":
        w = csv.DictWriter(out, fieldnames=fields)
        w.writeheader()
        for row in rows:
            w.writerow(row)
        sys.stdout.write(out.getvalue())
    else:
        print(json.dumps({"command": "table", "rep": args.rep, "g": args.g,
                          "results": rows}, sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, g=args.g, n=args.n, tol=args.tol, seed=args.seed)
    print(json.dumps(report, sort_keys=True))
    return 0 if report["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cswave",
        description="Hyperbolic Calogero-Sutherland wave functions: evaluation, "
                    "tabulation and verification suites.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--g", type=float, default=2.0, help="coupling constant (default 2)")
        sp.add_argument("--tol", type=float, default=None,
                        help="target relative tolerance (default 1e-8 for n<=2, 1e-4 for n=3)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--kmax", type=int, default=None,
                        help="series truncation degree (default: automatic shell rule)")

    pe = sub.add_parser("eval", help="evaluate one wave function value")
    common(pe)
    pe.add_argument("--rep", choices=_REPS, required=True)
    pe.add_argument("--lambda", dest="lam", required=True,
                    help="comma separated spectral parameters, complex as re:im")
    pe.add_argument("--x", default=None, help="comma separated positions (default zeros)")
    pe.set_defaults(func=cmd_eval)

    pt = sub.add_parser("table", help="tabulate over a grid")
    common(pt)
    pt.add_argument("--rep", choices=_REPS + ("duality",), required=True)
    pt.add_argument("--lambda", dest="lam", required=True)
    pt.add_argument("--x", default=None)
    pt.add_argument("--grid", action="append", default=[],
                    help="axis spec name=lo:hi:count (repeatable); axes are "
                         "lambda1..lambdaN and x1..xN")
    pt.set_defaults(func=cmd_table)

    pv = sub.add_parser("verify", help="run a named verification suite")
    pv.add_argument("suite", choices=sorted(SUITES))
    pv.add_argument("--g", type=float, default=2.0)
    pv.add_argument("--n", type=int, default=2)
    pv.add_argument("--tol", type=float, default=None)
    pv.add_argument("--seed", type=int, default=0)
    pv.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (DomainError, PoleError, ZeroError, DegenerateInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NonConvergence, DepthExceeded, NonFinite, StepTooLarge) as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
