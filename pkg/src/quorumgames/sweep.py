"""Grid evaluation of the equilibrium over population mixes.

Sweeps citizen and terrorist fractions of a fixed-size network (10,000
nodes by default, prize pools 100,000 / 70,000,000), evaluating the
closed-form optimum at each feasible pair. Output is a CSV with a pinned
schema plus an optional SVG chart. Everything is computed in exact
rationals and formatted deterministically, so identical configs produce
byte-identical files.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .equilibrium import equilibrium_counts
from .errors import ConfigError, MixedAxisError
from .game_core import PayoffConfig, RationalLike, to_fraction

logger = logging.getLogger(__name__)

CSV_HEADER = "c_frac,t_frac,c,t,g_star,b_star,pr_g_direct,pr_g_paper,feasible"

DEFAULT_NODES = 10_000
DEFAULT_P_N = Fraction(100_000)
DEFAULT_P_F = Fraction(70_000_000)


def fraction_grid(
    start: RationalLike, stop: RationalLike, step: RationalLike
) -> tuple[Fraction, ...]:
    """Inclusive arithmetic grid in exact rationals."""
    start = to_fraction(start)
    stop = to_fraction(stop)
    step = to_fraction(step)
    if step <= 0:
        raise ConfigError(f"grid step must be positive, got {step}")
    values = []
    v = start
    while v <= stop:
        values.append(v)
        v += step
    return tuple(values)


def _default_c_grid() -> tuple[Fraction, ...]:
    return fraction_grid(0, Fraction(19, 20), Fraction(1, 20))


def _default_t_grid() -> tuple[Fraction, ...]:
    return fraction_grid(0, Fraction(3, 10), Fraction(1, 20))


def round_half_up(x: Fraction) -> int:
    """Nearest integer with halves rounded up; stated for reproducibility."""
    return int((x + Fraction(1, 2)).__floor__())


@dataclass(frozen=True)
class SweepConfig:
    n: int
    p_n: Fraction
    p_f: Fraction
    citizen_fractions: tuple[Fraction, ...]
    terrorist_fractions: tuple[Fraction, ...]
    csv_path: Optional[str] = None
    plot_path: Optional[str] = None

    def __init__(
        self,
        n: int = DEFAULT_NODES,
        p_n: RationalLike = DEFAULT_P_N,
        p_f: RationalLike = DEFAULT_P_F,
        citizen_fractions: Optional[Iterable[RationalLike]] = None,
        terrorist_fractions: Optional[Iterable[RationalLike]] = None,
        csv_path: Optional[str] = None,
        plot_path: Optional[str] = None,
    ):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "p_n", to_fraction(p_n))
        object.__setattr__(self, "p_f", to_fraction(p_f))
        c_grid = (
            _default_c_grid()
            if citizen_fractions is None
            else tuple(to_fraction(f) for f in citizen_fractions)
        )
        t_grid = (
            _default_t_grid()
            if terrorist_fractions is None
            else tuple(to_fraction(f) for f in terrorist_fractions)
        )
        object.__setattr__(self, "citizen_fractions", c_grid)
        object.__setattr__(self, "terrorist_fractions", t_grid)
        object.__setattr__(self, "csv_path", csv_path)
        object.__setattr__(self, "plot_path", plot_path)


@dataclass(frozen=True)
class SweepRow:
    """One grid point. g_star is clamped at zero for simulation use; the
    raw closed-form value (possibly negative) stays in g_star_raw and
    feasible records whether clamping was needed."""

    c_frac: Fraction
    t_frac: Fraction
    c: int
    t: int
    g_star: Fraction
    b_star: Fraction
    pr_g_direct: Optional[Fraction]
    pr_g_paper: Optional[Fraction]
    feasible: bool
    g_star_raw: Fraction
    warnings: tuple[str, ...] = ()


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """Evaluate the grid row-major (citizen outer, terrorist inner).

    Pairs whose fractions sum past 1 are skipped and logged. Raises
    ConfigError for an empty grid or a non-positive node count and
    DegenerateRatio when p_n / p_f >= 1/2.
    """
    if not isinstance(config.n, int) or config.n < 1:
        raise ConfigError(f"node count must be a positive integer, got {config.n}")
    if not config.citizen_fractions or not config.terrorist_fractions:
        raise ConfigError("fraction grids must be non-empty")
    for f in (*config.citizen_fractions, *config.terrorist_fractions):
        if not 0 <= f <= 1:
            raise ConfigError(f"fractions must lie in [0, 1], got {f}")
    payoffs = PayoffConfig(config.p_n, config.p_f)
    rows = []
    for c_frac in config.citizen_fractions:
        for t_frac in config.terrorist_fractions:
            if c_frac + t_frac > 1:
                logger.info(
                    "skipping c_frac=%s t_frac=%s: fractions sum past 1",
                    c_frac,
                    t_frac,
                )
                continue
            c = round_half_up(c_frac * config.n)
            t = round_half_up(t_frac * config.n)
            point = equilibrium_counts(c, t, payoffs)
            feasible = point.g_star >= 0
            rows.append(
                SweepRow(
                    c_frac=c_frac,
                    t_frac=t_frac,
                    c=c,
                    t=t,
                    g_star=max(Fraction(0), point.g_star),
                    b_star=point.b_star,
                    pr_g_direct=point.pr_g_direct,
                    pr_g_paper=point.pr_g_paper,
                    feasible=feasible,
                    g_star_raw=point.g_star,
                    warnings=() if feasible else ("citizens_cover_quorum",),
                )
            )
    return rows


def format_decimal(value: Fraction, digits: int = 10) -> str:
    """Decimal string with at most the given significant digits (half-even)."""
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def _field(value) -> str:
    if value is None:
        return "nan"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return format_decimal(value)


def emit_csv(rows: Sequence[SweepRow]) -> bytes:
    """Render rows under the pinned header, LF line endings, UTF-8 bytes."""
    if not rows:
        raise ConfigError("no sweep rows to emit")
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(
            ",".join(
                (
                    _field(row.c_frac),
                    _field(row.t_frac),
                    _field(row.c),
                    _field(row.t),
                    _field(row.g_star),
                    _field(row.b_star),
                    _field(row.pr_g_direct),
                    _field(row.pr_g_paper),
                    _field(row.feasible),
                )
            )
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_csv(rows: Sequence[SweepRow], path) -> None:
    data = emit_csv(rows)
    with open(path, "wb") as fh:
        fh.write(data)


def emit_plot(rows: Sequence[SweepRow], axis: str, path) -> None:
    """Plot the analytic g* and b* series against one fraction axis as SVG.

    The other axis must be held at a single value across the rows, else
    MixedAxisError. Rendering is pinned for reproducibility: fixed hash
    salt, no embedded date, text kept as text elements.
    """
    if axis not in ("c_frac", "t_frac"):
        raise ValueError(f"axis must be 'c_frac' or 't_frac', got {axis!r}")
    if not rows:
        raise ConfigError("no sweep rows to plot")
    other = "t_frac" if axis == "c_frac" else "c_frac"
    other_values = {getattr(row, other) for row in rows}
    if len(other_values) > 1:
        raise MixedAxisError(
            f"plot along {axis} needs a single {other} value, found "
            f"{sorted(map(str, other_values))}"
        )

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ordered = sorted(rows, key=lambda row: getattr(row, axis))
    xs = [float(getattr(row, axis)) for row in ordered]
    g_series = [float(row.g_star_raw) for row in ordered]
    b_series = [float(row.b_star) for row in ordered]

    rc = {
        "svg.hashsalt": "quorumgames",
        "svg.fonttype": "none",
    }
    with matplotlib.rc_context(rc):
        fig, ax = plt.subplots(figsize=(8, 5))
        ax.plot(xs, g_series, marker="o", label="g*")
        ax.plot(xs, b_series, marker="s", label="b*")
        ax.set_xlabel(axis)
        ax.set_ylabel("adventurers at the optimum")
        fixed = next(iter(other_values))
        ax.set_title(f"equilibrium adventurers vs {axis} ({other}={fixed})")
        ax.legend()
        ax.grid(True, alpha=0.3)
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
