"""Command-line front end.

Subcommands: equilibrium (closed-form optimum), verify (unilateral
deviation check at the integer optimum), sweep (population grid to
CSV/SVG), coalition (Shapley, additivity, constant-sum, core).

Numeric flags accept exact rationals ("1/700") as well as decimals.
Exit codes: 0 success, 1 usage or parse failure, 2 degenerate payoff
ratio, 3 an improving deviation was found. Set QUORUMGAMES_ASCII=1 to
keep all output strictly ASCII.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .coalition import (
    CoreStatus,
    cbg_game,
    core_check,
    is_additive,
    is_constant_sum,
    load_game_file,
    shapley_cbg,
    shapley_general,
)
from .equilibrium import (
    DeviationDirection,
    PayoffSemantics,
    equilibrium_counts,
    integer_equilibrium_point,
    verify_nash,
)
from .errors import (
    ArityGuard,
    ConfigError,
    DegenerateRatio,
    InvalidPayoff,
    MixedAxisError,
    QuorumGameError,
)
from .game_core import PayoffConfig, to_fraction
from .sweep import SweepConfig, emit_plot, format_decimal, run_sweep, write_csv

MAX_ORACLE = 10_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as exit code 1, not 2."""

    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _ascii_mode() -> bool:
    return bool(os.environ.get("QUORUMGAMES_ASCII"))


def _arrow() -> str:
    return "->" if _ascii_mode() else "→"


def _fmt(value) -> str:
    """Exact rational plus a 10-digit decimal reading."""
    if value is None:
        return "undefined"
    if value.denominator == 1:
        return str(value)
    return f"{value} (~{format_decimal(value)})"


def _dec(value) -> str:
    return "n/a" if value is None else format_decimal(value)


def _require_nonneg(name: str, value: Fraction) -> Fraction:
    if value < 0:
        raise UsageError(f"{name} must be >= 0, got {value}")
    return value


def _require_count(name: str, value: Fraction) -> int:
    _require_nonneg(name, value)
    if value.denominator != 1:
        raise UsageError(f"{name} must be an integer count, got {value}")
    return int(value)


def _payoffs(args) -> PayoffConfig:
    try:
        return PayoffConfig(args.pn, args.pf)
    except ValueError as exc:
        raise UsageError(str(exc))


def _add_payoff_flags(sub):
    sub.add_argument("--pn", type=_rational, default=Fraction(100_000),
                     help="honest-side prize pool (default 100000)")
    sub.add_argument("--pf", type=_rational, default=Fraction(70_000_000),
                     help="deviating-side prize pool (default 70000000)")


def cmd_equilibrium(args) -> int:
    c = _require_nonneg("--c", args.c)
    t = _require_nonneg("--t", args.t)
    payoffs = _payoffs(args)
    point = equilibrium_counts(c, t, payoffs)
    discrepancy = None
    if point.pr_g_direct is not None and point.pr_g_paper is not None:
        discrepancy = abs(point.pr_g_direct - point.pr_g_paper)

    print(f"c = {_fmt(c)}")
    print(f"t = {_fmt(t)}")
    print(f"p_n = {_fmt(payoffs.p_n)}")
    print(f"p_f = {_fmt(payoffs.p_f)}")
    print(f"gamma = {_fmt(payoffs.gamma)}")
    print(f"g_star = {_fmt(point.g_star)}")
    print(f"b_star = {_fmt(point.b_star)}")
    print(f"pr_yes_direct = {_fmt(point.pr_g_direct)}")
    print(f"pr_yes_paper = {_fmt(point.pr_g_paper)}")
    print(f"discrepancy = {_fmt(discrepancy)}")
    if point.citizens_cover_quorum:
        print(
            "warning: g_star < 0; citizens alone satisfy the quorum "
            "(simulations clamp this to 0)"
        )
    if args.report:
        lines = [
            f"c={c}",
            f"t={t}",
            f"p_n={payoffs.p_n}",
            f"p_f={payoffs.p_f}",
            f"gamma={payoffs.gamma}",
            f"g_star={point.g_star}",
            f"b_star={point.b_star}",
            f"pr_yes_direct={point.pr_g_direct}",
            f"pr_yes_paper={point.pr_g_paper}",
            f"discrepancy={discrepancy}",
            f"citizens_cover_quorum={point.citizens_cover_quorum}",
        ]
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"report written to {args.report}")
    return 0


_DIRECTION_NAMES = {
    DeviationDirection.BAD_TO_GOOD: ("bad", "good"),
    DeviationDirection.GOOD_TO_BAD: ("good", "bad"),
}


def cmd_verify(args) -> int:
    c = _require_count("--c", args.c)
    t = _require_count("--t", args.t)
    payoffs = _payoffs(args)
    semantics = PayoffSemantics(args.semantics)
    g, b = integer_equilibrium_point(c, t, payoffs)
    reports = verify_nash(c, t, payoffs, semantics)

    print(f"semantics: {semantics.value}")
    print(f"point: c={c} t={t} g={g} b={b}")
    print(f"{'deviation':<12} {'pre':>16} {'post':>16} {'consensus':>10} {'improving':>10}")
    for report in reports:
        frm, to = _DIRECTION_NAMES[report.direction]
        name = f"{frm}{_arrow()}{to}"
        if not report.feasible:
            print(f"{name:<12} {'n/a':>16} {'n/a':>16} {'-':>10} {'no':>10}")
            continue
        consensus = "broken" if report.consensus_broken else "holds"
        improving = "yes" if report.improving else "no"
        print(
            f"{name:<12} {_dec(report.pre_payoff):>16} {_dec(report.post_payoff):>16} "
            f"{consensus:>10} {improving:>10}"
        )
    if any(r.improving for r in reports):
        print("result: improving unilateral deviation found")
        return 3
    print("result: no improving unilateral deviation")
    return 0


def cmd_sweep(args) -> int:
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    try:
        config = SweepConfig(
            n=args.n,
            p_n=args.pn,
            p_f=args.pf,
            citizen_fractions=_grid_from_args(args, "c"),
            terrorist_fractions=_grid_from_args(args, "t"),
            csv_path=args.out,
            plot_path=args.plot,
        )
        rows = run_sweep(config)
        write_csv(rows, args.out)
    except ConfigError as exc:
        raise UsageError(str(exc))
    pairs = len(config.citizen_fractions) * len(config.terrorist_fractions)
    print(f"wrote {len(rows)} rows to {args.out}")
    print(f"skipped {pairs - len(rows)} pairs with fractions summing past 1")
    if args.plot:
        emit_plot(rows, args.axis, args.plot)
        print(f"plot written to {args.plot}")
    return 0


def _grid_from_args(args, prefix: str):
    from .sweep import fraction_grid

    start = getattr(args, f"{prefix}_start")
    stop = getattr(args, f"{prefix}_stop")
    step = getattr(args, f"{prefix}_step")
    for name, value in ((f"--{prefix}-start", start), (f"--{prefix}-stop", stop)):
        if not 0 <= value <= 1:
            raise UsageError(f"{name} must lie in [0, 1], got {value}")
    grid = fraction_grid(start, stop, step)
    if not grid:
        raise UsageError(f"--{prefix}-start past --{prefix}-stop leaves an empty grid")
    return grid


def _coalition_members(mask: int, n: int) -> str:
    return "{" + ",".join(str(i) for i in range(n) if mask >> i & 1) + "}"


def cmd_coalition(args) -> int:
    if args.game:
        game = load_game_file(args.game)
        print(f"game: {args.game} (n = {game.n})")
    else:
        if args.p is None:
            raise UsageError("pass --p (with optional --n) or --game FILE")
        if args.p <= 0:
            raise UsageError(f"--p must be positive, got {args.p}")
        game = cbg_game(args.p, args.n)
        print(f"game: majority game with p = {args.p}, n = {game.n}")

    shap = shapley_general(game)
    print(f"shapley = ({', '.join(str(v) for v in shap)})")
    print(f"shapley total = {shap.total}   v(grand) = {game.grand_value}")
    if not args.game and game.n == 3:
        shortcut = shapley_cbg(args.p)
        print(f"shapley (3-player shortcut) = ({', '.join(str(v) for v in shortcut)})")

    additivity = is_additive(game)
    if additivity.additive:
        print("additive: yes")
    else:
        s_mask, u_mask = additivity.witness
        s_txt = _coalition_members(s_mask, game.n)
        u_txt = _coalition_members(u_mask, game.n)
        print(
            f"additive: no   counterexample: v({s_txt} | {u_txt}) = "
            f"{game.table[s_mask | u_mask]} but v({s_txt}) + v({u_txt}) = "
            f"{game.table[s_mask] + game.table[u_mask]}"
        )
    print(f"constant_sum: {'yes' if is_constant_sum(game) else 'no'}")

    if game.n > 10:
        print("core: not computed (n > 10 exceeds the exact-elimination guard)")
        return 0
    result = core_check(game)
    if result.status is CoreStatus.NON_EMPTY:
        print(f"core: non-empty   witness = ({', '.join(str(v) for v in result.witness)})")
    else:
        print("core: empty")
        print("certificate (positive combination with contradictory total):")
        for cons, mult in result.certificate.terms:
            print(f"  {mult} x [{cons.label}]")
        print(f"  combined: 0 <= {result.certificate.residual}  (contradiction)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="quorumgames",
        description="Voting-game analysis for quorum-based permissioned ledgers.",
    )
    sub = parser.add_subparsers(dest="command")

    p_eq = sub.add_parser("equilibrium", help="closed-form optimal adventurer counts")
    p_eq.add_argument("--c", type=_rational, default=Fraction(0), help="citizen count")
    p_eq.add_argument("--t", type=_rational, default=Fraction(0), help="terrorist count")
    _add_payoff_flags(p_eq)
    p_eq.add_argument("--report", help="also write a key=value report file")
    p_eq.set_defaults(handler=cmd_equilibrium)

    p_ver = sub.add_parser("verify", help="check unilateral deviations at the optimum")
    p_ver.add_argument("--c", type=_rational, default=Fraction(0), help="citizen count")
    p_ver.add_argument("--t", type=_rational, default=Fraction(0), help="terrorist count")
    _add_payoff_flags(p_ver)
    p_ver.add_argument(
        "--semantics",
        choices=[s.value for s in PayoffSemantics],
        default=PayoffSemantics.PROOF_CONSISTENT.value,
        help="payoff reading used to price deviations",
    )
    p_ver.set_defaults(handler=cmd_verify)

    p_sw = sub.add_parser("sweep", help="grid sweep to CSV (and optional SVG)")
    p_sw.add_argument("--n", type=int, default=10_000, help="total nodes")
    _add_payoff_flags(p_sw)
    p_sw.add_argument("--c-start", type=_rational, default=Fraction(0))
    p_sw.add_argument("--c-stop", type=_rational, default=Fraction(19, 20))
    p_sw.add_argument("--c-step", type=_rational, default=Fraction(1, 20))
    p_sw.add_argument("--t-start", type=_rational, default=Fraction(0))
    p_sw.add_argument("--t-stop", type=_rational, default=Fraction(3, 10))
    p_sw.add_argument("--t-step", type=_rational, default=Fraction(1, 20))
    p_sw.add_argument("--out", default="sweep.csv", help="CSV output path")
    p_sw.add_argument("--plot", help="also write an SVG chart to this path")
    p_sw.add_argument(
        "--axis",
        choices=["c_frac", "t_frac"],
        default="c_frac",
        help="x axis for the plot (the other axis must be fixed)",
    )
    p_sw.set_defaults(handler=cmd_sweep)

    p_co = sub.add_parser("coalition", help="Shapley, additivity, constant-sum, core")
    p_co.add_argument("--p", type=_rational, help="majority-game payoff pool")
    p_co.add_argument("--n", type=int, default=3, help="player count (default 3)")
    p_co.add_argument("--game", help="load a bitmask,value game file instead")
    p_co.set_defaults(handler=cmd_coalition)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    if not getattr(args, "handler", None):
        parser.print_help(sys.stderr)
        return 1
    try:
        return args.handler(args)
    except DegenerateRatio as exc:
        print(f"degenerate configuration: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ConfigError, MixedAxisError, InvalidPayoff, ArityGuard) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, QuorumGameError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
