"""Closed-form voting equilibrium and deviation checking.

Solving the zero-sum identity together with the quorum constraint held at
its boundary gives the minimal adventurer counts

    g* = (1 + 2t) / (1 - 2*gamma) - c
    b* = gamma * (1 + 2t) / (1 - 2*gamma)

which are real numbers in general. ``equilibrium_counts`` evaluates them
exactly. Two payoff readings exist for checking that no single adventurer
gains by switching sides:

* ``literal`` pays only the winning side of the raw head count, so a
  no-voter at a quorate state earns nothing and always gains by joining
  the paid side. This reading has no stable point at the equilibrium.
* ``proof-consistent`` pays both sides their pools while the quorum
  stands and zeroes everyone out when a deviation breaks it (the system
  "reboots"). Under this reading the equilibrium is deviation-stable.

Both are implemented; ``verify_nash`` defaults to proof-consistent and
``best_response_oracle`` brute-forces every split of a fixed adventurer
pool as an independent cross-check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DegenerateRatio, NoAdventurersNeeded
from .game_core import PayoffConfig, RationalLike, to_fraction

HALF = Fraction(1, 2)


class PayoffSemantics(enum.Enum):
    """How payouts are assigned when checking unilateral deviations."""

    LITERAL = "literal"
    PROOF_CONSISTENT = "proof-consistent"


class DeviationDirection(enum.Enum):
    BAD_TO_GOOD = "bad_to_good"
    GOOD_TO_BAD = "good_to_bad"


@dataclass(frozen=True)
class EquilibriumPoint:
    """Real-valued optimal adventurer counts plus the yes-vote probability.

    pr_g_direct is g* / (g* + b*), the ratio actually forced by the two
    closed forms. pr_g_paper is the published closed-form probability
    expression evaluated literally; the two disagree in general (see
    ``mixed_strategy``), so both are kept. Either is None when its
    denominator vanishes. citizens_cover_quorum flags g* < 0, where the
    citizens alone already satisfy the quorum and no yes-voting
    adventurer is needed.
    """

    g_star: Fraction
    b_star: Fraction
    pr_g_direct: Optional[Fraction]
    pr_g_paper: Optional[Fraction]
    citizens_cover_quorum: bool


@dataclass(frozen=True)
class MixedStrategy:
    """Lottery over an adventurer's two votes, with the alternative form."""

    pr_yes: Fraction
    pr_no: Fraction
    pr_yes_paper: Optional[Fraction]
    discrepancy: Optional[Fraction]


@dataclass(frozen=True)
class DeviationReport:
    """Effect of one adventurer unilaterally switching sides.

    feasible is False when the origin side has no member to move (then the
    payoff fields are None and improving is False). consensus_broken means
    the quorum held before the switch and fails after it.
    """

    direction: DeviationDirection
    feasible: bool
    pre_payoff: Optional[Fraction]
    post_payoff: Optional[Fraction]
    consensus_broken: bool
    improving: bool


@dataclass(frozen=True)
class SplitRecord:
    """One deviation-stable split found by the brute-force oracle."""

    g: int
    b: int
    consensus_ok: bool


def _resolve_gamma(payoffs: Optional[PayoffConfig], gamma: Optional[RationalLike]) -> Fraction:
    if (payoffs is None) == (gamma is None):
        raise TypeError("pass exactly one of payoffs= or gamma=")
    if payoffs is not None:
        g = payoffs.gamma
    else:
        g = to_fraction(gamma)
        if g < 0:
            raise ValueError(f"gamma must be >= 0, got {g}")
    if g >= HALF:
        raise DegenerateRatio(
            f"gamma = {g} >= 1/2; the closed forms need 1 - 2*gamma > 0"
        )
    return g


def equilibrium_counts(
    c: RationalLike,
    t: RationalLike,
    payoffs: Optional[PayoffConfig] = None,
    *,
    gamma: Optional[RationalLike] = None,
) -> EquilibriumPoint:
    """Evaluate the closed-form optimum exactly.

    Accepts real (non-integral) c and t. The risk factor comes either from
    a PayoffConfig or, for limit studies such as gamma = 0, directly via
    the gamma keyword. Raises DegenerateRatio when gamma >= 1/2.
    """
    c = to_fraction(c)
    t = to_fraction(t)
    if c < 0 or t < 0:
        raise ValueError(f"counts must be >= 0, got c={c}, t={t}")
    g = _resolve_gamma(payoffs, gamma)

    denom = 1 - 2 * g
    g_star = (1 + 2 * t) / denom - c
    b_star = g * (1 + 2 * t) / denom

    total = g_star + b_star
    pr_direct = g_star / total if total != 0 else None

    paper_den = 1 + g + 2 * (1 + 2 * g) * (2 * t - c)
    paper_num = 1 + 2 * t - (1 + 2 * g) * c
    pr_paper = paper_num / paper_den if paper_den != 0 else None

    return EquilibriumPoint(
        g_star=g_star,
        b_star=b_star,
        pr_g_direct=pr_direct,
        pr_g_paper=pr_paper,
        citizens_cover_quorum=g_star < 0,
    )


def mixed_strategy(
    c: RationalLike,
    t: RationalLike,
    payoffs: Optional[PayoffConfig] = None,
    *,
    gamma: Optional[RationalLike] = None,
) -> MixedStrategy:
    """Yes/no lottery at the optimum: [g*/(g*+b*) : yes, rest : no].

    Also reports the published probability expression and the absolute
    gap between the two forms. At c = 0 the direct ratio simplifies to
    1 / (1 + gamma) for every t, while the published expression retains a
    t dependence; the direct ratio is the authoritative one.
    """
    point = equilibrium_counts(c, t, payoffs, gamma=gamma)
    total = point.g_star + point.b_star
    if total <= 0:
        raise NoAdventurersNeeded(
            f"g* + b* = {total} <= 0; no adventurer participates at the optimum"
        )
    pr_yes = point.g_star / total
    discrepancy = None
    if point.pr_g_paper is not None:
        discrepancy = abs(pr_yes - point.pr_g_paper)
    return MixedStrategy(
        pr_yes=pr_yes,
        pr_no=1 - pr_yes,
        pr_yes_paper=point.pr_g_paper,
        discrepancy=discrepancy,
    )


def _quorate(c: int, t: int, g: int, b: int) -> bool:
    return c + g >= 1 + 2 * (t + b)


def _member_payoff(
    side_good: bool,
    c: int,
    t: int,
    g: int,
    b: int,
    payoffs: PayoffConfig,
    semantics: PayoffSemantics,
) -> Fraction:
    """Payout of one member of the given side; that side must be nonempty."""
    if semantics is PayoffSemantics.PROOF_CONSISTENT:
        if not _quorate(c, t, g, b):
            return Fraction(0)
        return payoffs.p_n / (g + c) if side_good else payoffs.p_f / b
    honest_wins = g + c > b + t
    if side_good:
        return payoffs.p_n / (g + c) if honest_wins else Fraction(0)
    return payoffs.p_f / b if not honest_wins else Fraction(0)


def _check_deviation(
    direction: DeviationDirection,
    c: int,
    t: int,
    g: int,
    b: int,
    payoffs: PayoffConfig,
    semantics: PayoffSemantics,
) -> DeviationReport:
    if direction is DeviationDirection.BAD_TO_GOOD:
        feasible = b >= 1
        post = (g + 1, b - 1)
        from_good = False
    else:
        feasible = g >= 1
        post = (g - 1, b + 1)
        from_good = True
    if not feasible:
        return DeviationReport(direction, False, None, None, False, False)
    pre_pay = _member_payoff(from_good, c, t, g, b, payoffs, semantics)
    post_pay = _member_payoff(not from_good, c, t, post[0], post[1], payoffs, semantics)
    broken = _quorate(c, t, g, b) and not _quorate(c, t, post[0], post[1])
    return DeviationReport(
        direction=direction,
        feasible=True,
        pre_payoff=pre_pay,
        post_payoff=post_pay,
        consensus_broken=broken,
        improving=post_pay > pre_pay,
    )


def _validate_integer_counts(c, t) -> tuple[int, int]:
    for name, value in (("c", c), ("t", t)):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"{name}={value} must be an integer count")
            value = value.numerator
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"{name} must be an integer count, got {value!r}")
        if value < 0:
            raise ValueError(f"{name} must be >= 0, got {value}")
    c = int(c)
    t = int(t)
    return c, t


def integer_equilibrium_point(c: int, t: int, payoffs: PayoffConfig) -> tuple[int, int]:
    """Smallest integer (g, b) embedding of the real optimum.

    b is the least integer at or above b* (its closed-form lower bound);
    g is then the least integer satisfying the quorum at that b without
    dropping below g*. At this point the quorum holds with zero slack
    whenever any yes-adventurer is needed at all, which is exactly what
    makes the good-to-bad switch self-defeating.
    """
    c, t = _validate_integer_counts(c, t)
    point = equilibrium_counts(c, t, payoffs)
    b = math.ceil(point.b_star)
    g = max(0, 1 + 2 * (t + b) - c, math.ceil(point.g_star))
    return g, b


def verify_nash(
    c: int,
    t: int,
    payoffs: PayoffConfig,
    semantics: PayoffSemantics = PayoffSemantics.PROOF_CONSISTENT,
) -> list[DeviationReport]:
    """Check both unilateral side-switches at the integer optimum.

    The integer point is constructed once (it does not depend on the
    semantics), then each deviation is priced under the requested payoff
    reading, so the two readings are directly comparable at the same
    state. Proof-consistent pricing yields improving=False for both;
    literal pricing exposes the improving bad-to-good switch.
    """
    g, b = integer_equilibrium_point(c, t, payoffs)
    return [
        _check_deviation(DeviationDirection.BAD_TO_GOOD, c, t, g, b, payoffs, semantics),
        _check_deviation(DeviationDirection.GOOD_TO_BAD, c, t, g, b, payoffs, semantics),
    ]


def best_response_oracle(
    c: int,
    t: int,
    a: int,
    payoffs: PayoffConfig,
    semantics: PayoffSemantics = PayoffSemantics.PROOF_CONSISTENT,
) -> tuple[SplitRecord, ...]:
    """Enumerate every split of a adventurers and keep the stable ones.

    A split (g, b) with g + b = a is stable when neither existing member's
    unit switch improves that member's payoff under the chosen semantics.
    Splits are returned in increasing g order with their quorum status.
    Ground truth for cross-checking the closed form; a is capped at 10^4.
    """
    c, t = _validate_integer_counts(c, t)
    if not isinstance(a, int) or isinstance(a, bool) or a < 0:
        raise ValueError(f"a must be a non-negative integer, got {a!r}")
    if a > 10_000:
        raise ValueError(f"a={a} exceeds the 10^4 scan cap")
    stable: list[SplitRecord] = []
    for g in range(a + 1):
        b = a - g
        reports = (
            _check_deviation(DeviationDirection.BAD_TO_GOOD, c, t, g, b, payoffs, semantics),
            _check_deviation(DeviationDirection.GOOD_TO_BAD, c, t, g, b, payoffs, semantics),
        )
        if not any(r.improving for r in reports):
            stable.append(SplitRecord(g=g, b=b, consensus_ok=_quorate(c, t, g, b)))
    return tuple(stable)
