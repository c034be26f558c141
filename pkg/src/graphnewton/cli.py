"""Command-line interface.

``graphnewton solve`` runs the inversion-free solver on a covariance or
sample CSV and writes the solution matrix and a JSONL trace.
``graphnewton report`` renders figures and a summary table from a trace.

Exit codes: 0 converged, 2 iteration cap reached, 1 runtime error,
64 bad usage, 74 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import io as gio
from .fpgm import FpgmConfig
from .graphlearn import GraphProblem, solve, sparsify

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ITERATION_CAP = 2
EXIT_USAGE = 64
EXIT_IO = 74

# Inner-solve presets: exact, and the inexact(k) variants
VARIANT_PRESETS = {
    "exact": (1e-6, 1000),
    "inexact:5": (1e-4, 5),
    "inexact:10": (1e-5, 10),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems exit 64, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _variant_preset(spec: str) -> tuple[float, int]:
    if spec in VARIANT_PRESETS:
        return VARIANT_PRESETS[spec]
    if spec.startswith("inexact:"):
        try:
            k = int(spec.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad variant {spec!r}")
        if k < 1:
            raise ValueError(f"bad variant {spec!r}")
        return (1e-4 if k <= 5 else 1e-5, k)
    raise ValueError(f"unknown variant {spec!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphnewton")
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="run the solver on a covariance or sample CSV")
    src = ps.add_mutually_exclusive_group(required=True)
    src.add_argument("--covariance", metavar="PATH", help="p x p covariance CSV")
    src.add_argument("--samples", metavar="PATH", help="m x p sample CSV")
    ps.add_argument("--rho", type=float, required=True, help="l1 weight (> 0)")
    ps.add_argument("--eps", type=float, default=1e-6, help="outer stopping tolerance")
    ps.add_argument("--variant", default="exact", help="exact | inexact:K")
    ps.add_argument("--inner-eps", type=float, default=None, help="override inner tolerance")
    ps.add_argument("--inner-kmax", type=int, default=None, help="override inner iteration cap")
    ps.add_argument("--max-iters", type=int, default=200, help="outer iteration cap")
    ps.add_argument("--theta0", metavar="PATH", default=None, help="optional CSV initializer")
    ps.add_argument("--sparsify", type=float, default=None, metavar="T",
                    help="zero off-diagonals below T in the written solution")
    ps.add_argument("--diagnostics", action="store_true",
                    help="record the objective in the trace (uses a factorization)")
    ps.add_argument("--out", metavar="PATH", default=None, help="solution CSV path")
    ps.add_argument("--trace", metavar="PATH", default=None, help="trace JSONL path")
    ps.add_argument("--unbiased", action="store_true",
                    help="use 1/(m-1) instead of 1/m for the covariance")

    pr = sub.add_parser("report", help="render figures and a summary from a trace")
    pr.add_argument("--trace", metavar="PATH", required=True, help="trace JSONL path")
    pr.add_argument("--outdir", metavar="DIR", required=True, help="output directory")
    return parser


def _run_solve(args: argparse.Namespace) -> int:
    if args.rho <= 0.0:
        print("graphnewton: error: --rho must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        inner_eps, inner_kmax = _variant_preset(args.variant)
    except ValueError as exc:
        print(f"graphnewton: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.inner_eps is not None:
        inner_eps = args.inner_eps
    if args.inner_kmax is not None:
        inner_kmax = args.inner_kmax

    if args.covariance:
        data = gio.load_matrix_csv(args.covariance, kind="covariance")
        sigma_hat = data.values
    else:
        data = gio.load_matrix_csv(args.samples, kind="samples")
        sigma_hat = gio.empirical_covariance(data, unbiased=args.unbiased)
    theta0 = None
    if args.theta0:
        theta0 = gio.load_matrix_csv(args.theta0, kind="covariance").values

    prob = GraphProblem(sigma_hat=sigma_hat, rho=args.rho)
    result = solve(
        prob,
        theta0=theta0,
        eps=args.eps,
        max_iters=args.max_iters,
        inner=FpgmConfig(inner_eps=inner_eps, k_max=inner_kmax),
        diagnostics=args.diagnostics,
    )
    theta = result.theta
    if args.sparsify is not None:
        theta = sparsify(theta, args.sparsify)
    if args.out:
        gio.write_matrix_csv(args.out, theta)
    if args.trace:
        gio.write_trace_jsonl(args.trace, result.trace)
    last = result.trace[-1]
    print(
        f"{result.reason}: {len(result.trace)} iterations, "
        f"lambda={last.lam:.3e}, alpha={last.alpha:.6f}"
    )
    return EXIT_OK if result.reason == "converged" else EXIT_ITERATION_CAP


def _run_report(args: argparse.Namespace) -> int:
    from .report import render_report  # matplotlib import stays off the solve path

    trace = gio.read_trace_jsonl(args.trace)
    if not trace:
        print("graphnewton: error: empty trace", file=sys.stderr)
        return EXIT_ERROR
    for path in render_report(trace, args.outdir):
        print(path)
    return EXIT_OK


def run_cli(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "solve":
            return _run_solve(args)
        return _run_report(args)
    except (OSError, gio.CsvFormatError) as exc:
        print(f"graphnewton: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # solver/config failures
        print(f"graphnewton: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
