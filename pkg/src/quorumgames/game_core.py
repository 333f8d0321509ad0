"""Population and payoff model for quorum-voted permissioned ledgers.

The network has three behavior classes: citizens always vote for the
proposed block, terrorists always vote against it, and adventurers pick a
side to maximize their own payout. The side that prevails splits a fixed
pool pro rata among its members, and a PBFT-style quorum rule (honest
voters must outnumber twice the faulty voters plus one) decides whether
the ledger can make progress at all.

All arithmetic is exact: counts and payoffs are carried as
``fractions.Fraction`` so that equality and threshold predicates (the
zero-sum identity, the quorum boundary) are never corrupted by float
rounding. Floats are accepted as inputs and converted to their exact
binary value; pass strings like ``"1/700"`` or ``Fraction`` objects when a
decimal-exact value matters.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DegenerateRatio, EmptyWinningCohort

RationalLike = Union[int, float, str, Fraction]


def to_fraction(value: RationalLike) -> Fraction:
    """Convert a number to an exact Fraction.

    Strings accept both rational ("1/700") and decimal ("0.05") syntax.
    Floats convert to their exact binary value, which is usually not the
    decimal you typed; prefer strings or Fractions for boundary-exact work.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not counts or payoffs")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        try:
            return Fraction(value)
        except (OverflowError, ValueError) as exc:
            raise ValueError(f"{value!r} is not a finite number") from exc
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class CountMode(enum.Enum):
    """Whether a population holds integer head counts or analytic reals.

    Integer mode is required by the simulation-facing operations (the
    deviation checker and the brute-force oracle); real mode is for the
    closed-form equilibrium values, which are generally non-integral.
    """

    INTEGER = "integer"
    REAL = "real"


@dataclass(frozen=True)
class PayoffConfig:
    """Prize pools for the two sides of the vote.

    p_n is the total payout that the compliant (honest) side shares when it
    wins; p_f is the total payout shared by the deviating side when the
    honest side fails to win. Their ratio gamma = p_n / p_f is the
    reciprocal risk factor; equilibrium formulas additionally require
    gamma < 1/2, and configs violating that are constructible but flagged
    degenerate.
    """

    p_n: Fraction
    p_f: Fraction

    def __init__(self, p_n: RationalLike, p_f: RationalLike):
        p_n = to_fraction(p_n)
        p_f = to_fraction(p_f)
        if p_n <= 0:
            raise ValueError(f"p_n must be positive, got {p_n}")
        if p_f <= 0:
            raise ValueError(f"p_f must be positive, got {p_f}")
        object.__setattr__(self, "p_n", p_n)
        object.__setattr__(self, "p_f", p_f)

    @property
    def gamma(self) -> Fraction:
        """Reciprocal risk factor p_n / p_f, recomputed exactly."""
        return self.p_n / self.p_f

    @property
    def is_degenerate(self) -> bool:
        """True when gamma >= 1/2 and the equilibrium denominator fails."""
        return self.gamma >= Fraction(1, 2)


@dataclass(frozen=True)
class PopulationProfile:
    """Head counts per behavior class.

    c citizens (always vote yes), t terrorists (always vote no), g
    adventurers voting yes, b adventurers voting no. Counts must be
    non-negative; in INTEGER mode they must also be whole numbers.
    """

    c: Fraction
    t: Fraction
    g: Fraction
    b: Fraction
    mode: CountMode = CountMode.INTEGER

    def __init__(
        self,
        c: RationalLike,
        t: RationalLike,
        g: RationalLike,
        b: RationalLike,
        mode: CountMode = CountMode.INTEGER,
    ):
        counts = {"c": to_fraction(c), "t": to_fraction(t),
                  "g": to_fraction(g), "b": to_fraction(b)}
        for name, value in counts.items():
            if value < 0:
                raise ValueError(f"count {name} must be >= 0, got {value}")
            if mode is CountMode.INTEGER and value.denominator != 1:
                raise ValueError(
                    f"count {name}={value} is fractional; use CountMode.REAL "
                    "for analytic populations"
                )
        for name, value in counts.items():
            object.__setattr__(self, name, value)
        object.__setattr__(self, "mode", mode)

    @property
    def n(self) -> Fraction:
        """Total number of nodes."""
        return self.c + self.t + self.g + self.b

    @property
    def honest(self) -> Fraction:
        """Voters on the proposal's side (citizens plus yes-adventurers)."""
        return self.g + self.c

    @property
    def faulty(self) -> Fraction:
        """Voters against the proposal (terrorists plus no-adventurers)."""
        return self.b + self.t


@dataclass(frozen=True)
class OutcomeReport:
    """Literal per-node payout picture for one population state."""

    honest_wins: bool
    consensus_ok: bool
    u_honest: Fraction
    u_faulty: Fraction
    zero_sum_residual: Fraction


def utility_honest(profile: PopulationProfile, payoffs: PayoffConfig) -> Fraction:
    """Per-node payout of a yes-voter (citizen or yes-adventurer).

    Pays p_n / (g + c) when the honest side strictly outnumbers the faulty
    side, else 0. The all-zero profile is rejected rather than silently
    paid nothing, to surface misconfigured experiments.
    """
    if profile.n == 0:
        raise EmptyWinningCohort("all-zero population has no cohort to pay")
    if profile.honest > profile.faulty:
        return payoffs.p_n / profile.honest
    return Fraction(0)


def utility_faulty(profile: PopulationProfile, payoffs: PayoffConfig) -> Fraction:
    """Per-node payout of a no-voting adventurer.

    Pays p_f / b when the honest side does not strictly outnumber the
    faulty side (ties pay the faulty cohort), else 0. Raises if the paying
    condition holds but there is no no-voting adventurer to pay.
    """
    if profile.honest <= profile.faulty:
        if profile.b == 0:
            raise EmptyWinningCohort(
                "faulty side prevails but holds no adventurer to pay"
            )
        return payoffs.p_f / profile.b
    return Fraction(0)


def zero_sum_residual(profile: PopulationProfile, payoffs: PayoffConfig) -> Fraction:
    """c*p_n + g*p_n - b*p_f; zero exactly when the stakes balance."""
    return (profile.c + profile.g) * payoffs.p_n - profile.b * payoffs.p_f


def consensus_feasible(profile: PopulationProfile) -> bool:
    """Quorum predicate: c + g >= 1 + 2*(t + b).

    This is the borderline form of the BFT requirement that non-faulty
    nodes outnumber the faulty ones by better than two to one.
    """
    return profile.c + profile.g >= 1 + 2 * (profile.t + profile.b)


def rrf(payoffs: PayoffConfig, strict: bool = False) -> Fraction:
    """Reciprocal risk factor gamma = p_n / p_f.

    With strict=True, raises DegenerateRatio when gamma >= 1/2 (the regime
    where the equilibrium closed forms are undefined).
    """
    gamma = payoffs.gamma
    if strict and gamma >= Fraction(1, 2):
        raise DegenerateRatio(
            f"gamma = {gamma} >= 1/2; equilibrium formulas need 1 - 2*gamma > 0"
        )
    return gamma


def evaluate_outcome(profile: PopulationProfile, payoffs: PayoffConfig) -> OutcomeReport:
    """Bundle the literal per-node payouts and predicates for one state."""
    return OutcomeReport(
        honest_wins=profile.honest > profile.faulty,
        consensus_ok=consensus_feasible(profile),
        u_honest=utility_honest(profile, payoffs),
        u_faulty=utility_faulty(profile, payoffs),
        zero_sum_residual=zero_sum_residual(profile, payoffs),
    )
