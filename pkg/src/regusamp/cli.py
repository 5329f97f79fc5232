"""Command-line front end.

Subcommands:
    reconstruct  evaluate the localized reconstruction from a sample CSV
    bounds       print the error constants for a configuration
    experiment   run an experiment plan or a checked-in preset, write CSV
    selftest     fast invariant suite

stdout carries machine-parseable CSV only; diagnostics go to stderr.  Exit
codes are stable API: 0 ok, 1 selftest failure, 2 usage, 3 missing sample
range, 4 bound violation, 5 I/O error.  REGUSAMP_SEED overrides the plan
seed for ``experiment``.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import bounds as bounds_mod
from . import harness, specfun
from .kernel import KernelEval, ft_psi, ft_psi_quadrature, sinc
from .reconstruct import (
    IndexOutOfRange,
    TestFunction,
    TestFunctionKind,
    load_samples,
    reconstruct_at,
    sample,
)
from .windows import SamplingConfig, WindowKind, WindowSpec, default_params

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_USAGE = 2
EXIT_DATA_RANGE = 3
EXIT_BOUND = 4
EXIT_IO = 5


def _parse_fraction(text: str) -> float:
    return float(Fraction(text)) if "/" in text else float(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regusamp",
        description="Regularized Shannon sampling with localized sampling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_cfg_flags(p):
        p.add_argument("--N", type=int, required=True, help="bandwidth scale (samples/unit)")
        p.add_argument("--lambda", dest="lam", type=_parse_fraction, required=True,
                       help="oversampling parameter >= 0; N*(1+lambda) must be integer")
        p.add_argument("--tau", type=_parse_fraction, required=True,
                       help="bandwidth fraction in (0, 1/2); accepts fractions like 1/3")
        p.add_argument("--window", choices=[k.value for k in WindowKind], required=True)
        p.add_argument("--sigma", type=float, help="Gaussian width override")
        p.add_argument("--s", type=int, help="B-spline half-order override")
        p.add_argument("--beta", type=float, help="sinh shape override")

    rec = sub.add_parser("reconstruct", help="evaluate the reconstruction at points")
    add_cfg_flags(rec)
    rec.add_argument("--m", type=int, required=True, help="truncation parameter (2m samples/point)")
    rec.add_argument("--samples", required=True, help="CSV with header index,value")
    grp = rec.add_mutually_exclusive_group(required=True)
    grp.add_argument("--at", type=float, help="single evaluation point t")
    grp.add_argument("--grid", help="a,b,count for an inclusive equidistant grid")

    bnd = sub.add_parser("bounds", help="print error constants")
    add_cfg_flags(bnd)
    bnd.add_argument("--m", required=True, help="truncation parameter or comma list, e.g. 2,3,4")
    bnd.add_argument("--eps", type=float, default=1e-3, help="noise bound for robustness columns")

    exp = sub.add_parser("experiment", help="run an experiment plan")
    src = exp.add_mutually_exclusive_group(required=True)
    src.add_argument("--plan", help="plan file (blocks separated by --- lines)")
    src.add_argument("--preset", choices=harness.PRESETS, help="checked-in figure grid")
    exp.add_argument("--out", required=True, help="output CSV path")
    exp.add_argument("--jobs", type=int, default=harness.default_jobs(),
                     help="parallel workers over configuration cells")

    sub.add_parser("selftest", help="fast invariant suite")
    return parser


def _window_from_flags(args, cfg: SamplingConfig) -> WindowSpec:
    kind = WindowKind(args.window)
    overrides = {
        WindowKind.GAUSS: ("--sigma", args.sigma),
        WindowKind.BSPLINE: ("--s", args.s),
        WindowKind.SINH: ("--beta", args.beta),
    }
    for k, (flag, val) in overrides.items():
        if val is not None and kind is not k:
            raise ValueError(f"{flag} does not apply to the {kind.value} window")
    if kind is WindowKind.RECT:
        return WindowSpec(kind)
    if kind is WindowKind.GAUSS:
        if args.sigma is not None:
            return WindowSpec(kind, sigma=args.sigma)
        w = default_params(kind, cfg)
        print(f"using default sigma = {w.sigma:.17g}", file=sys.stderr)
        return w
    if kind is WindowKind.BSPLINE:
        if args.s is not None:
            return WindowSpec(kind, s=args.s)
        w = default_params(kind, cfg)
        print(f"using default s = {w.s}", file=sys.stderr)
        return w
    if args.beta is not None:
        return WindowSpec(kind, beta=args.beta)
    w = default_params(kind, cfg)
    print(f"using default beta = {w.beta:.17g}", file=sys.stderr)
    return w


def _cmd_reconstruct(args) -> int:
    cfg = SamplingConfig(args.N, args.lam, args.tau, args.m)
    w = _window_from_flags(args, cfg)
    try:
        ss = load_samples(args.samples, cfg)
    except OSError as exc:
        print(f"cannot read samples: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.at is not None:
        points = [args.at]
    else:
        try:
            a_s, b_s, n_s = args.grid.split(",")
            a, b, count = float(a_s), float(b_s), int(n_s)
        except ValueError:
            print("--grid expects a,b,count", file=sys.stderr)
            return EXIT_USAGE
        points = np.linspace(a, b, count)
    print("t,value")
    for t in points:
        try:
            val = reconstruct_at(ss, w, float(t))
        except IndexOutOfRange as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_DATA_RANGE
        print(f"{t:.17g},{val:.17g}")
    return EXIT_OK


def _cmd_bounds(args) -> int:
    m_values = [int(x) for x in str(args.m).split(",")]
    print("window,m,tau,lambda,e1,e2,closed_form,robust_generic,robust_specialized,eta_max")
    for m in m_values:
        cfg = SamplingConfig(args.N, args.lam, args.tau, m)
        w = _window_from_flags(args, cfg)
        rep = bounds_mod.compute_report(w, cfg, eps=args.eps)
        rb = bounds_mod.robustness_bound(w, cfg, args.eps)
        closed = f"{rep.closed_form:.17g}" if rep.closed_form is not None else "NA"
        special = f"{rb.specialized:.17g}" if rb.specialized is not None else "NA"
        print(
            f"{w.kind.value},{m},{cfg.tau:.17g},{cfg.lam:.17g},{rep.e1:.17g},"
            f"{rep.e2:.17g},{closed},{rb.generic:.17g},{special},{rep.eta_max:.17g}"
        )
    return EXIT_OK


def _cmd_experiment(args) -> int:
    seed_env = os.environ.get("REGUSAMP_SEED")
    seed = int(seed_env) if seed_env else None
    try:
        if args.preset:
            plans = harness.load_preset(args.preset, seed=seed)
        else:
            plans = harness.load_plans(args.plan)
            if seed is not None:
                from dataclasses import replace

                plans = [replace(p, seed=seed) for p in plans]
    except OSError as exc:
        print(f"cannot read plan: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        report = harness.run_plans(plans, jobs=max(1, args.jobs))
    except harness.BoundViolation as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return EXIT_BOUND
    try:
        harness.emit_csv(report, args.out)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(report.rows)} rows to {args.out}", file=sys.stderr)
    return EXIT_OK


def _cmd_selftest(_args) -> int:
    checks: list[tuple[str, bool]] = []

    def check(name, ok):
        checks.append((name, bool(ok)))

    from fractions import Fraction as F

    check("M_2(0) = 1", specfun.m2s_at_zero(1) == F(1))
    check("M_4(0) = 2/3", specfun.m2s_at_zero(2) == F(2, 3))
    check("M_6(0) = 11/20", specfun.m2s_at_zero(3) == F(11, 20))
    check("M_10(0) = 15619/36288", specfun.m2s_at_zero(5) == F(15619, 36288))
    check(
        "M_6(0) = E(5,2)/5!",
        F(specfun.eulerian_number(5, 3), math.factorial(5)) == F(11, 20),
    )
    check(
        "M_{2s}(0) matches recurrence, s=1..8",
        all(
            abs(float(specfun.m2s_at_zero(s)) - specfun.cardinal_bspline(2 * s, 0.0)) <= 1e-13
            for s in range(1, 9)
        ),
    )
    check("erf(1)", abs(specfun.erf(1.0) - 0.8427007929497149) <= 1e-15)
    x = 1e-6
    check(
        "J1 leading series at 1e-6",
        abs(specfun.bessel_j1(x) / x - 0.5) <= 1e-10,
    )
    check("sinc(0) = 1", sinc(0.0) == 1.0)
    check("sinc(pi) ~ 0", abs(sinc(math.pi)) <= 1e-16)

    cfg = SamplingConfig(32, 1.0, 1 / 3, 4)
    f = TestFunction(TestFunctionKind.SINC_BAND, delta=cfg.delta)
    ss = sample(f, cfg, -cfg.L - cfg.m, cfg.L + cfg.m)
    interp_ok = True
    for kind in WindowKind:
        w = default_params(kind, cfg)
        for ell in (-5, 0, 7):
            got = reconstruct_at(ss, w, ell / cfg.L)
            want = float(f(ell / cfg.L))
            interp_ok &= got == want
    check("interpolation property on the grid", interp_ok)

    ft_ok = True
    for kind in (WindowKind.GAUSS, WindowKind.BSPLINE, WindowKind.SINH):
        w = default_params(kind, cfg)
        k = KernelEval(w, cfg)
        v = 0.37 * cfg.L
        ft_ok &= abs(ft_psi(k, v) - ft_psi_quadrature(k, v)) <= 1e-8
    check("psi transform matches quadrature", ft_ok)

    width = max(len(name) for name, _ in checks)
    failed = 0
    for name, ok in checks:
        status = "ok" if ok else "FAIL"
        print(f"{name:<{width}}  {status}", file=sys.stderr)
        failed += not ok
    print(f"selftest,{len(checks) - failed},{failed}")
    return EXIT_OK if failed == 0 else EXIT_SELFTEST


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "reconstruct":
            return _cmd_reconstruct(args)
        if args.command == "bounds":
            return _cmd_bounds(args)
        if args.command == "experiment":
            return _cmd_experiment(args)
        return _cmd_selftest(args)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
