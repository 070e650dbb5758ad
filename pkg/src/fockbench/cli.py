"""Command-line interface.

Examples:
    fockbench fig fig5 --out fig5.csv
    fockbench fig fig1 --order 2 --order 3 --grid 51 --format json
    fockbench state ltcs --alpha 3.1623 --order 5 --out ltcs.txt
    fockbench protocol --alpha 3.1623 --steps 3 --lambda-t 1e-3 --k 1 --exact
    fockbench check closed-forms
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings
from pathlib import Path

from fockbench import checks, fock, jc, metrics, states, sweeps

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOLERANCE = 2

FAMILIES = ("coherent", "utcs", "ltcs", "pacs", "dpacs", "bernoulli", "bdisp")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_alpha(text: str) -> complex:
    """Parse ``3``, ``-1.5``, ``1+2i``, ``0.5-0.2j`` or ``2i`` as a complex number."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r} as a complex amplitude") from None


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def _pos_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("expected a positive number")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fockbench", description="Truncated and photon-added coherent state numerics.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("fig", help="reproduce a figure as a data table")
    f.add_argument("figure", choices=sorted(sweeps.FIGURES))
    f.add_argument("--alpha", type=parse_alpha, help="coherent amplitude (fig7 ignores it)")
    f.add_argument("--order", "-N", type=_nonneg_int, action="append",
                   help="curve order; repeat for several curves, or the sweep limit for fig2/5/6")
    f.add_argument("--grid", type=_nonneg_int, help="number of sweep points")
    f.add_argument("--alpha-max", type=_pos_float, help="upper |alpha| for fig7")
    f.add_argument("--tail-tol", type=_pos_float, help="neglected probability per state")
    f.add_argument("--out", type=Path)
    f.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("state", help="build a state, dump it and print its diagnostics")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("--alpha", type=parse_alpha, default=0j)
    s.add_argument("--order", "-N", type=_nonneg_int, default=0)
    s.add_argument("--k", type=float, default=0.0)
    s.add_argument("--tail-tol", type=_pos_float, default=sweeps.FIG_TAIL_TOL)
    s.add_argument("--out", type=Path)

    r = sub.add_parser("protocol", help="simulate sequential atoms with ground-state post-selection")
    r.add_argument("--alpha", type=parse_alpha, default=complex(math.sqrt(10)))
    r.add_argument("--steps", type=int, default=1)
    r.add_argument("--lambda-t", type=float, default=1e-3)
    r.add_argument("--k", type=float, default=1.0)
    r.add_argument("--exact", action="store_true", help="exact doublet rotation instead of first order")

    c = sub.add_parser("check", help="run a numerical cross-check suite")
    c.add_argument("suite", choices=sorted(checks.SUITES))
    c.add_argument("--order", "-N", type=_nonneg_int, default=0, help="LTCS order for the identity suite")
    return p


def _fig_overrides(args) -> dict:
    fig = args.figure
    ov = {"tail_tol": args.tail_tol}
    if args.alpha is not None:
        if fig == "fig7":
            raise UsageError("fig7 sweeps |alpha|; use --alpha-max instead of --alpha")
        ov["alpha"] = args.alpha
    if args.alpha_max is not None:
        if fig != "fig7":
            raise UsageError("--alpha-max only applies to fig7")
        ov["alpha_max"] = args.alpha_max
    if args.order:
        if fig in ("fig2", "fig5", "fig6"):
            if len(args.order) != 1:
                raise UsageError(f"{fig} takes a single --order (the largest cutoff)")
            ov["n_max"] = args.order[0]
        else:
            if fig == "fig1" and min(args.order) < 1:
                raise UsageError("fig1 orders must be >= 1")
            if fig == "fig7" and min(args.order) < 1:
                raise UsageError("fig7 orders must be >= 1")
            ov["orders"] = tuple(args.order)
    if args.grid is not None:
        if fig in ("fig2", "fig5", "fig6"):
            raise UsageError(f"{fig} has no grid; use --order to set the sweep range")
        if args.grid < (2 if fig in ("fig1", "fig7") else 1):
            raise UsageError("grid too small")
        ov["grid"] = args.grid
    return ov


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def cmd_fig(args) -> int:
    table = sweeps.cmd_fig(args.figure, **_fig_overrides(args))
    _emit(table.to_csv() if args.format == "csv" else table.to_json(), args.out)
    return EXIT_OK


def build_state(family: str, alpha: complex, order: int, k: float, tail_tol: float) -> fock.FockVector:
    if family == "coherent":
        return states.coherent(alpha, tail_tol=tail_tol)
    if family == "utcs":
        return states.utcs(alpha, order, tail_tol=tail_tol)
    if family == "ltcs":
        return states.ltcs(alpha, order, tail_tol=tail_tol)
    if family == "pacs":
        if order < 1:
            raise UsageError("pacs needs --order >= 1")
        return states.pacs(alpha, order, tail_tol=tail_tol)
    if family == "dpacs":
        if order < 1:
            raise UsageError("dpacs needs --order >= 1")
        return states.deformed_pacs(alpha, order, k, tail_tol=tail_tol)
    if family == "bernoulli":
        return states.bernoulli_approx(alpha, order)
    if family == "bdisp":
        return states.b_displaced_vacuum(alpha, k, tail_tol=tail_tol)
    raise UsageError(f"unknown family {family!r}")


def cmd_state(args) -> int:
    s = build_state(args.family, args.alpha, args.order, args.k, args.tail_tol)
    if args.out is not None:
        fock.save(s, args.out)
    m = fock.ladder_moments(s)
    q = metrics.quadrature_stats(s)
    try:
        mq = f"{metrics.mandel_q(s):.12g}"
    except ValueError:
        mq = "undefined"
    print(f"family: {args.family}")
    print(f"cutoff: {s.cutoff}")
    print(f"norm: {s.norm():.12g}")
    print(f"mean_n: {m.mean_n:.12g}")
    print(f"var_x: {q.var_x:.12g}")
    print(f"var_p: {q.var_p:.12g}")
    print(f"mandel_q: {mq}")
    return EXIT_OK


def cmd_protocol(args) -> int:
    if args.steps < 1:
        raise UsageError("--steps must be >= 1")
    with warnings.catch_warnings():
        warnings.simplefilter("default")
        rep = jc.run_protocol(args.alpha, args.steps, args.lambda_t, args.k, exact=args.exact)
    print(f"steps: {args.steps}")
    print(f"final_cutoff: {rep.final_field.cutoff}")
    print("per_step_success_prob: " + " ".join(f"{p:.12g}" for p in rep.per_step_success_prob))
    print(f"cumulative_success_prob: {rep.cumulative_success_prob:.12g}")
    print(f"fidelity_vs_analytic: {rep.fidelity_vs_analytic:.15g}")
    print(f"infidelity_vs_analytic: {rep.infidelity_vs_analytic:.6e}")
    return EXIT_OK


def cmd_check(args) -> int:
    suite = checks.SUITES[args.suite]
    result = suite(order=args.order) if args.suite == "identity" else suite()
    print(result.report())
    return EXIT_OK if result.passed else EXIT_TOLERANCE


COMMANDS = {"fig": cmd_fig, "state": cmd_state, "protocol": cmd_protocol, "check": cmd_check}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, jc.NothingToPostselectError, ValueError, KeyError, TypeError) as exc:
        print(f"fockbench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
