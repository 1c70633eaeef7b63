"""Command-line front end.

Subcommands: ``ml``, ``invlap``, ``solve``, ``oracle``, ``verify``.
Exit status is 0 on success, 2 for invalid input and 3 when a computation
fails to converge or becomes unstable. ``--error-json`` prints a
machine-readable error document to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings

import numpy as np

from . import errors
from .rdsolve import SCHEMA_VERSION, Grid, InitialCondition, KQuadrature
from .specfun import SeriesControl

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_COMPUTE = 3

_INPUT_ERRORS = (errors.ValidationError, errors.ResolutionError, errors.DegenerateRootsError)
_COMPUTE_ERRORS = (errors.ConvergenceFailure, errors.InstabilityDetected,
                   errors.InsufficientResolution, errors.OverflowSignal)


# --------------------------------------------------------------------------
# Parsing helpers
# --------------------------------------------------------------------------

def parse_nodes(text: str) -> np.ndarray:
    """``start:stop:step`` (stop included when hit) or a comma list."""
    text = text.strip()
    try:
        if ":" in text:
            parts = [float(p) for p in text.split(":")]
            if len(parts) != 3:
                raise ValueError
            start, stop, step = parts
            if not (step > 0 and stop >= start):
                raise errors.ValidationError(f"range {text!r} needs step > 0 and stop >= start")
            n = int(math.floor((stop - start) / step + 1e-9)) + 1
            return start + step * np.arange(n)
        return np.array([float(p) for p in text.split(",") if p.strip()])
    except ValueError:
        raise errors.ValidationError(f"cannot parse node list {text!r}") from None


def parse_complex_list(text: str) -> np.ndarray:
    try:
        return np.array([complex(p.strip().replace(" ", "")) for p in text.split(",") if p.strip()])
    except ValueError:
        raise errors.ValidationError(f"cannot parse complex list {text!r}") from None


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _fmt_c(v: complex) -> str:
    return _fmt(v.real) if v.imag == 0 else f"{_fmt(v.real)}{'+' if v.imag >= 0 else '-'}{_fmt(abs(v.imag))}j"


def _control(args) -> SeriesControl:
    return SeriesControl(rel_tol=args.rel_tol, abs_tol=args.abs_tol, max_terms=args.max_terms)


def _output_path(path: str | None) -> str | None:
    if path is None or path == "-":
        return None
    base = os.environ.get("FRACWAVE_OUTPUT_DIR")
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        path = os.path.join(base, path)
    return path


def _emit(text: str, path: str | None):
    """Single write point for every artifact."""
    path = _output_path(path)
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_ml(args) -> int:
    from .specfun import ml_batch, series_terms

    ctl = _control(args)
    z = parse_complex_list(args.z)
    if args.dump_terms:
        if z.size != 1:
            raise errors.ValidationError("--dump-terms takes a single z")
        lines = ["n,term,partial_sum\n"]
        for n, term, part in series_terms(args.alpha, args.beta, args.gamma, z[0], ctl):
            lines.append(f"{n},{_fmt_c(term)},{_fmt_c(part)}\n")
        _emit("".join(lines), args.output)
        return EXIT_OK
    res = ml_batch(args.alpha, args.beta, args.gamma, z, ctl)
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION,
               "orders": {"alpha": args.alpha, "beta": args.beta, "gamma": args.gamma},
               "results": [{"z": [float(zi.real), float(zi.imag)],
                            "value": [float(r.value.real), float(r.value.imag)],
                            "est_error": r.est_error, "terms_used": r.terms_used, "regime": r.regime}
                           for zi, r in zip(z, (res[i] for i in range(len(res))))]}
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.output)
    elif args.format == "csv":
        rows = ["z,value,est_error,terms_used,regime\n"]
        for i, zi in enumerate(z):
            r = res[i]
            rows.append(f"{_fmt_c(zi)},{_fmt_c(r.value)},{_fmt(r.est_error)},{r.terms_used},{r.regime}\n")
        _emit("".join(rows), args.output)
    else:
        _emit("".join(_fmt_c(res[i].value) + "\n" for i in range(len(res))), args.output)
    return EXIT_OK


def cmd_invlap(args) -> int:
    from . import laplace as L

    ctl = _control(args)
    ts = parse_nodes(args.t)
    f = args.formula
    if f in "ABC":
        if args.beta is None:
            raise errors.ValidationError(f"formula {f} needs --beta")
        p = L.ABKernelParams(args.alpha, args.beta, args.a, args.b)
        fn = {"A": L.inv_formula_A, "B": L.inv_formula_B, "C": L.inv_formula_C}[f]
        evaluate = lambda t: fn(p, t, ctl)
        al, be = args.alpha, args.beta
        num = {"A": lambda s: s ** (al - 1), "B": lambda s: s ** (be - 1), "C": lambda s: 1.0}[f]
        F = lambda s: num(s) / (s**al + args.a * s**be + args.b)
    else:
        fn = L.inv_formula_D if f == "D" else L.inv_formula_E
        evaluate = lambda t: fn(args.alpha, args.a, args.b, t, ctl)
        al = args.alpha
        if f == "D":
            F = lambda s: (s ** (2 * al - 1) + args.a * s ** (al - 1)) / (s ** (2 * al) + args.a * s**al + args.b)
        else:
            F = lambda s: 1.0 / (s ** (2 * al) + args.a * s**al + args.b)
    header = "t,value,talbot\n" if args.oracle else "t,value\n"
    rows = [header]
    for t in ts:
        line = f"{_fmt(t)},{_fmt(evaluate(t))}"
        if args.oracle:
            line += f",{_fmt(L.inverse_laplace_numeric(F, t, shift=args.shift))}"
        rows.append(line + "\n")
    _emit("".join(rows), args.output)
    return EXIT_OK


def _initial_condition(args) -> InitialCondition:
    return InitialCondition.gaussian(args.sigma) if args.sigma else InitialCondition.delta()


def _source(args):
    from .presets import gaussian_source

    if not args.source:
        return None
    try:
        kind, amp, width = args.source.split(":")
        if kind != "gaussian":
            raise ValueError
        return gaussian_source(float(amp), float(width))
    except ValueError:
        raise errors.ValidationError("--source must read gaussian:AMPLITUDE:WIDTH") from None


def _preset(args):
    from .presets import get_preset

    pre = get_preset(args.preset)
    return pre.with_overrides(alpha=args.alpha, beta=args.beta, a=args.a, nu=args.nu, xi=args.xi,
                              gamma_space=args.gamma_space)


def _write_profile(prof, args):
    if args.format == "json":
        _emit(prof.to_json(), args.output)
    else:
        _emit(prof.to_csv(), args.output)
        if args.meta:
            _emit(prof.to_json(), args.meta)


def cmd_solve(args) -> int:
    from .presets import run_preset

    pre = _preset(args)
    grid = Grid(parse_nodes(args.x), parse_nodes(args.t))
    kq = KQuadrature(k_max=args.k_max, adaptive=not args.fixed_k, tail_tol=args.tail_tol,
                     k_cap=max(args.k_cap, args.k_max))
    prof = run_preset(pre, grid, _initial_condition(args), _source(args), kq, _control(args),
                      workers=args.workers)
    _write_profile(prof, args)
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .oracle import FDGrid, fd_solve

    pre = _preset(args)
    ts = parse_nodes(args.t)
    g = FDGrid.for_final_time(args.x_min, args.x_max, args.nx, float(ts.max()), args.nt)
    prof = fd_solve(pre.params(), _initial_condition(args), _source(args), g, t_out=ts, scheme=args.scheme)
    prof.meta["preset"] = pre.name
    _write_profile(prof, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import CHECKS, run_checks

    if args.suite == "all":
        numbers = sorted(CHECKS)
    else:
        try:
            numbers = [int(p) for p in args.suite.split(",")]
        except ValueError:
            raise errors.ValidationError(f"--suite takes 'all' or a comma list of numbers, got {args.suite!r}") from None
        bad = [n for n in numbers if n not in CHECKS]
        if bad:
            raise errors.ValidationError(f"unknown checks {bad}; available {sorted(CHECKS)}")
    results = run_checks(numbers)
    for r in results:
        print(r.line(), flush=True)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    if args.report:
        doc = {"schema_version": SCHEMA_VERSION,
               "checks": [{"number": r.number, "name": r.name, "passed": r.passed, "error": r.error,
                           "threshold": r.threshold, "seconds": r.seconds, "detail": r.detail}
                          for r in results]}
        _emit(json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n", args.report)
    return EXIT_OK if passed == len(results) else EXIT_FAIL


# --------------------------------------------------------------------------
# Argument parser
# --------------------------------------------------------------------------

def _add_control(p):
    p.add_argument("--rel-tol", type=float, default=1e-12)
    p.add_argument("--abs-tol", type=float, default=1e-15)
    p.add_argument("--max-terms", type=int, default=500)


def _add_physics(p):
    p.add_argument("--preset", default="theorem",
                   choices=["theorem", "corollary1", "corollary2", "telegraph", "telegraph-xi0"])
    p.add_argument("--alpha", type=float, help="time order (half order for doubled presets)")
    p.add_argument("--beta", type=float, help="second time order (theorem presets only)")
    p.add_argument("--gamma-space", type=float, help="space order in (0, 2]")
    p.add_argument("--a", type=float)
    p.add_argument("--nu", type=float)
    p.add_argument("--xi", type=float)
    p.add_argument("--sigma", type=float, default=None, help="Gaussian mollifier width for the delta IC")
    p.add_argument("--source", default=None, help="gaussian:AMPLITUDE:WIDTH, constant in time")
    p.add_argument("--t", required=True, help="time nodes, start:stop:step or comma list")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", default=None, help="file path; relative paths go under FRACWAVE_OUTPUT_DIR")
    p.add_argument("--meta", default=None, help="also write the JSON meta document here")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fracwave", description=__doc__.splitlines()[0])
    ap.add_argument("--error-json", action="store_true", help="print errors as JSON on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ml", help="Mittag-Leffler / Prabhakar function values")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--z", required=True, help="comma list of real or complex arguments, e.g. 1,-2+1j")
    p.add_argument("--dump-terms", action="store_true", help="print the Taylor terms for one z")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.add_argument("--output", default=None)
    _add_control(p)
    p.set_defaults(func=cmd_ml)

    p = sub.add_parser("invlap", help="closed-form inverse Laplace formulas A-E")
    p.add_argument("--formula", choices=list("ABCDE"), required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--oracle", action="store_true", help="add a Talbot inversion column")
    p.add_argument("--shift", type=float, default=0.0, help="Talbot contour shift for growing transforms")
    p.add_argument("--output", default=None)
    _add_control(p)
    p.set_defaults(func=cmd_invlap)

    p = sub.add_parser("solve", help="analytic solution profile N(x, t)")
    _add_physics(p)
    p.add_argument("--x", required=True, help="space nodes, start:stop:step or comma list")
    p.add_argument("--k-max", type=float, default=16.0, help="starting k cut-off")
    p.add_argument("--k-cap", type=float, default=4096.0)
    p.add_argument("--fixed-k", action="store_true", help="do not grow k_max adaptively")
    p.add_argument("--tail-tol", type=float, default=1e-9)
    p.add_argument("--workers", type=int, default=1)
    _add_control(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="finite-difference reference profile")
    _add_physics(p)
    p.add_argument("--x-min", type=float, default=-10.0)
    p.add_argument("--x-max", type=float, default=10.0)
    p.add_argument("--nx", type=int, default=256)
    p.add_argument("--nt", type=int, default=2048)
    p.add_argument("--scheme", choices=["bdf2", "gl"], default="bdf2")
    _add_control(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--suite", default="all", help="'all' or a comma list of check numbers")
    p.add_argument("--report", default=None, help="write a JSON report here")
    p.set_defaults(func=cmd_verify)
    return ap


def _report_error(exc: Exception, code: int, as_json: bool):
    if as_json:
        doc = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
        sys.stderr.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        sys.stderr.write(f"fracwave: {type(exc).__name__}: {exc}\n")


_VALUE_FLAGS = ("--x", "--t", "--z")


def _join_negative_values(argv):
    """Rewrite ``--x -5:5:0.05`` as ``--x=-5:5:0.05`` so argparse does not read it as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = ap.parse_args(_join_negative_values(argv))
    with warnings.catch_warnings():
        warnings.simplefilter("default")
        try:
            return args.func(args)
        except _INPUT_ERRORS as exc:
            _report_error(exc, EXIT_INPUT, args.error_json)
            return EXIT_INPUT
        except _COMPUTE_ERRORS as exc:
            _report_error(exc, EXIT_COMPUTE, args.error_json)
            return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
