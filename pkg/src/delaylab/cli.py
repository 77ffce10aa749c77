"""Command-line front end.

Every subcommand writes CSV (to ``--output`` or stdout) and can render a PNG
of the same data with ``--figure``.  Exit status: 0 success, 1 invalid
arguments or parameters, 2 numerical failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from . import __version__
from .dde import StepMethod
from .econ import InterestScenario, policy_check, simulate_scenario
from .errors import NumericalError, ParameterError
from .exact import TABLE_TIMES, ExactSolution, error_table
from .logistic import simulate_canonical, to_physical, wright_from_canonical
from .regime import THRESHOLDS, SimConfig, classify_a, hopf_boundary_search, predict_regime
from .report import parse_number, write_csv

EXIT_OK, EXIT_PARAM, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3


class UsageError(ParameterError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _number(text):
    try:
        return parse_number(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or ratio: {text!r}")


def _positive(text):
    value = _number(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {text!r}")
    return value


def _count(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _method(text):
    try:
        return StepMethod.parse(text)
    except ValueError:
        choices = ", ".join(m.value for m in StepMethod)
        raise argparse.ArgumentTypeError(f"unknown method {text!r} (choose from {choices})")


METHOD_HELP = (
    "stepping scheme: euler (forward Euler), rk4 (classical RK4, Hermite-interpolated delayed "
    "stages) or rk4-held (RK4 with the delayed term held at the step's starting node, which "
    "reproduces the published Table A-2 simulation column)"
)


def _common(p, method_default=StepMethod.EULER, figure=True):
    p.add_argument("-o", "--output", default="-", help="CSV destination (default: stdout)")
    if figure:
        p.add_argument("--figure", metavar="PNG", help="also render the data as a figure to this path")
    if method_default is not None:
        p.add_argument("--method", type=_method, default=method_default, help=METHOD_HELP)


def build_parser():
    parser = _Parser(
        prog="delaylab",
        description="Delay logistic equation and interest/inflation model: simulate, verify, classify.",
        epilog="Numeric flags accept decimals (0.001953125) or exact ratios (1/512).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser(
        "simulate-canonical",
        help="integrate z' = a z - z z(t-1) from the exponential initial function",
        description=(
            "Integrate the canonical delay logistic equation from beta*exp((a-beta)t). "
            "Reproduces Figures 2-1 (a=0.35, beta=0.2), 2-2 (a=1) and 2-3 (a=1.5, 1.6, beta=0.12), "
            "and the Table A-2 run (a=1.57, beta=0.785, horizon 3). "
            "Columns: time,z,dz_dt (time,y,dy_dt with --wright; time,i,di_dt with --t0)."
        ),
    )
    p.add_argument("--a", type=_positive, required=True, help="growth-delay product a > 0")
    p.add_argument("--beta", type=_positive, help="initial value beta > 0 (default a/2)")
    p.add_argument("--dt", type=_positive, default=1 / 512, help="time step dividing 1 (default 1/512)")
    p.add_argument("--horizon", type=_positive, default=3.0, help="simulated time, >= 1 (default 3)")
    p.add_argument("--every", type=_count, default=1, help="emit every Nth node (default 1)")
    form = p.add_mutually_exclusive_group()
    form.add_argument("--wright", action="store_true", help="emit Wright form y = z/a")
    form.add_argument("--t0", type=_positive, help="emit physical units: times*t0, values/t0")
    _common(p)
    p.set_defaults(func=cmd_simulate_canonical)

    p = sub.add_parser(
        "simulate-econ",
        help="integrate the long-rate equation with constant nominal and short rates",
        description=(
            "Integrate i' = A(i - w) - i(t - t0)(i - w) from the history psi + w and report inflation A - i. "
            "Reproduces Figures 3-1..3-3 (w = 0) and 3-4/3-5 (w > 0; A=0.12, t0=14, beta=0.02). "
            "Rates are per month, times in months. Columns: time_months,time_years,interest_percent,"
            "inflation_percent."
        ),
    )
    p.add_argument("--A", dest="A", type=_positive, required=True, help="nominal long rate per month")
    p.add_argument("--w", type=_number, default=0.0, help="actual short rate per month, 0 <= w < A")
    p.add_argument("--t0", type=_positive, default=14.0, help="delay in months (default 14)")
    p.add_argument("--beta", type=_positive, default=0.02, help="initial-function parameter (default 0.02)")
    p.add_argument("--horizon", type=_positive, default=1800.0, help="months (default 1800)")
    p.add_argument("--dt", type=_positive, help="months per step dividing t0 (default t0/512)")
    p.add_argument("--every", type=_count, default=1, help="emit every Nth node (default 1)")
    _common(p)
    p.set_defaults(func=cmd_simulate_econ)

    p = sub.add_parser(
        "exact-compare",
        help="compare simulation against the closed-form solution on [0, 3] (Table A-2)",
        description=(
            "Run a=..., beta=a/2 and tabulate closed form vs simulation for each --dt. "
            "With --a 1.57 --dt 1/512 --dt 1/1024 this reproduces Table A-2. "
            "One dt: columns time,z_actual,z_simulated,delta; several: one block of "
            "z_actual@dt,z_simulated@dt,delta@dt per dt."
        ),
    )
    p.add_argument("--a", type=_positive, default=1.57, help="growth-delay product (default 1.57)")
    p.add_argument("--dt", action="append", help="time step, repeatable (default 1/512 and 1/1024)")
    p.add_argument("--times", nargs="+", type=_number, help="sample times in [0, 3] (default 0, 0.25, ..., 3)")
    _common(p, method_default=StepMethod.RK4_HELD)
    p.set_defaults(func=cmd_exact_compare)

    p = sub.add_parser(
        "hopf-scan",
        help="bisect for the damped/sustained boundary in a (Figure A-1)",
        description=(
            "Bisect on the empirical regime between a damped lo and a sustained hi. "
            "Reproduces the Figure A-1 boundary test (transition between a=1.568 and 1.570). "
            "Columns: lo,hi,estimate,evaluations; with --trace one row per probe: a,empirical,mean_peak_ratio."
        ),
    )
    p.add_argument("--lo", type=_positive, default=1.50)
    p.add_argument("--hi", type=_positive, default=1.65)
    p.add_argument("--tol", type=_positive, default=0.002, help="bracket width to stop at (default 0.002)")
    p.add_argument("--dt", type=_positive, default=1 / 512)
    p.add_argument("--horizon", type=_positive, default=300.0, help="delay units per probe (default 300)")
    p.add_argument("--beta", type=_positive, default=0.12)
    p.add_argument("--trace", action="store_true", help="emit every bisection probe")
    p.add_argument("--jobs", type=_count, default=1, help="probe the two bracket ends concurrently if > 1")
    _common(p)
    p.set_defaults(func=cmd_hopf_scan)

    p = sub.add_parser(
        "regime-report",
        help="predicted vs empirical regime over a list of a values (Figures 2-1..2-3)",
        description=(
            "Classify runs for each a and compare with the 1/e and 1.5706 thresholds. "
            "Reproduces the regime claims of Figures 2-1..2-3. "
            "Columns: a,predicted,empirical,envelope_ratio,terminal_deviation."
        ),
    )
    p.add_argument("--a", nargs="+", type=_positive, required=True, help="values of a")
    p.add_argument("--beta", type=_positive, default=0.12)
    p.add_argument("--dt", type=_positive, default=1 / 512)
    p.add_argument("--horizon", type=_positive, default=300.0)
    p.add_argument("--jobs", type=_count, default=1, help="worker processes for the sweep")
    _common(p)
    p.set_defaults(func=cmd_regime_report)

    p = sub.add_parser(
        "policy-check",
        help="stability test (A - w) t0 <= 1/e for given rates",
        description=(
            "Report whether holding rates A and w with delay t0 risks oscillation "
            "(orderly when (A - w) t0 <= 1/e). w may be negative here. Columns: A,w,t0,product,verdict."
        ),
    )
    p.add_argument("--A", dest="A", type=_number, required=True)
    p.add_argument("--w", type=_number, default=0.0)
    p.add_argument("--t0", type=_positive, required=True)
    _common(p, method_default=None, figure=False)
    p.set_defaults(func=cmd_policy_check)
    return parser


def cmd_simulate_canonical(args):
    beta = args.beta if args.beta is not None else args.a / 2
    traj = simulate_canonical(args.a, beta, dt=args.dt, horizon=args.horizon, method=args.method)
    label, header = "z", ("time", "z", "dz_dt")
    out = traj
    if args.wright:
        out = wright_from_canonical(traj, args.a)
        label, header = "y", ("time", "y", "dy_dt")
    elif args.t0 is not None:
        out = to_physical(traj, args.t0)
        label, header = "i", ("time", "i", "di_dt")
    rows = zip(out.times, out.values, out.derivs)
    write_csv(header, _every(rows, args.every), args.output)
    if args.figure:
        from .plots import plot_trajectory

        eq = {"z": args.a, "y": 1.0, "i": args.a / args.t0 if args.t0 else None}[label]
        plot_trajectory(out, args.figure, label=label, equilibrium=eq, title=f"a = {args.a:g}, beta = {beta:g}")


def cmd_simulate_econ(args):
    scn = InterestScenario(
        A=args.A, w=args.w, t0=args.t0, beta=args.beta, horizon=args.horizon, dt=args.dt, method=args.method
    )
    econ = simulate_scenario(scn)
    write_csv(econ.header, _every(econ.records(), args.every), args.output)
    if args.figure:
        from .plots import plot_econ

        plot_econ(econ, args.figure, title=f"A = {args.A:g}, w = {args.w:g}, t0 = {args.t0:g}")


def cmd_exact_compare(args):
    labels = args.dt or ["1/512", "1/1024"]
    steps = []
    for label in labels:
        try:
            steps.append((label, _positive(label)))
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"--dt: {exc}")
    times = args.times or list(TABLE_TIMES)
    tables = [(label, error_table(args.method, dt, args.a, times)) for label, dt in steps]
    if len(tables) == 1:
        tab = tables[0][1]
        write_csv(tab.header, tab.records(), args.output)
    else:
        header = ["time"]
        for label, _ in tables:
            header += [f"z_actual@{label}", f"z_simulated@{label}", f"delta@{label}"]
        blocks = [list(tab.records()) for _, tab in tables]
        rows = []
        for k, t in enumerate(times):
            row = [t]
            for block in blocks:
                row += block[k][1:]
            rows.append(row)
        write_csv(header, rows, args.output)
    if args.figure:
        from .plots import plot_error_tables

        plot_error_tables(tables, ExactSolution(args.a), args.figure, title=f"a = {args.a:g}, beta = a/2")


def cmd_hopf_scan(args):
    config = SimConfig(dt=args.dt, horizon=args.horizon, beta=args.beta, method=args.method)
    result = hopf_boundary_search(args.lo, args.hi, args.tol, config, concurrent=args.jobs > 1)
    if args.trace:
        rows = []
        for a, _ in result.evaluations:
            analysis = classify_a(a, config)
            rows.append((a, analysis.verdict, analysis.mean_peak_ratio))
        write_csv(("a", "empirical", "mean_peak_ratio"), rows, args.output)
    else:
        write_csv(
            ("lo", "hi", "estimate", "evaluations"),
            [(result.lo, result.hi, result.estimate, len(result.evaluations))],
            args.output,
        )
    print(f"a* = {result.estimate:.6f} in [{result.lo:.6f}, {result.hi:.6f}]", file=sys.stderr)
    if args.figure:
        from .plots import plot_hopf

        plot_hopf(result.evaluations, result.estimate, args.figure)


def cmd_regime_report(args):
    config = SimConfig(dt=args.dt, horizon=args.horizon, beta=args.beta, method=args.method)
    work = partial(classify_a, config=config)
    if args.jobs > 1 and len(args.a) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            analyses = list(pool.map(work, args.a))
    else:
        analyses = [work(a) for a in args.a]
    rows = [
        (a, predict_regime(a), an.verdict, an.envelope_ratio, an.terminal_deviation)
        for a, an in zip(args.a, analyses)
    ]
    write_csv(("a", "predicted", "empirical", "envelope_ratio", "terminal_deviation"), rows, args.output)
    if args.figure:
        from .plots import plot_regime_report

        plot_regime_report(
            args.a,
            [an.mean_peak_ratio for an in analyses],
            [r[1].value for r in rows],
            [r[2].value for r in rows],
            args.figure,
            thresholds=THRESHOLDS,
        )


def cmd_policy_check(args):
    verdict = policy_check(args.A, args.w, args.t0)
    write_csv(("A", "w", "t0", "product", "verdict"), [(args.A, args.w, args.t0, verdict.product, verdict.verdict)], args.output)


def _every(rows, stride):
    for k, row in enumerate(rows):
        if k % stride == 0:
            yield row


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except SystemExit as exc:
        # --help / --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
