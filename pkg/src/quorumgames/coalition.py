"""Coalitional majority game: Shapley values and core feasibility.

The characteristic function of the majority game pays the full pool p to
any coalition holding a strict majority of the n players and nothing to
the rest. Shapley values are computed two independent ways (the general
subset-weighted sum, and a three-player shortcut built from a parity
coefficient and a pivotality indicator) so each can check the other.

Core membership is a pure linear-inequality feasibility question:

    sum of x_i over S  >=  v(S)   for every coalition S
    sum of all x_i     ==  v(grand coalition)

``core_check`` decides it by Fourier-Motzkin elimination over exact
rationals, tracking how each derived inequality was combined from the
originals. A feasible system yields a concrete witness allocation; an
infeasible one yields a certificate, the positively-weighted combination
of original constraints that collapses to an arithmetic contradiction
(for the majority game: twice the efficiency bound against the three
two-player coalitions, i.e. 2p >= 3p).

Games are dense tables indexed by coalition bitmask, so the exhaustive
classification checks (additivity, constant-sum) stay trivial.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import ArityGuard, ConfigError, InvalidPayoff, UnsupportedArity
from .game_core import RationalLike, to_fraction

MAX_PLAYERS = 20
MAX_CORE_PLAYERS = 10


@dataclass(frozen=True)
class CoalitionalGame:
    """Transferable-utility game as a dense 2^n payoff table.

    table[mask] is the worth of the coalition whose members are the set
    bits of mask. The empty coalition must be worth zero and n is capped
    at 20 to keep the table in memory.
    """

    n: int
    table: tuple[Fraction, ...]

    def __init__(self, n: int, table: Sequence[RationalLike]):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValueError(f"n must be a positive integer, got {n!r}")
        if n > MAX_PLAYERS:
            raise ArityGuard(f"n={n} exceeds the {MAX_PLAYERS}-player table guard")
        values = tuple(to_fraction(v) for v in table)
        if len(values) != 1 << n:
            raise ValueError(
                f"table must list all {1 << n} coalitions, got {len(values)}"
            )
        if values[0] != 0:
            raise ValueError(f"empty coalition must be worth 0, got {values[0]}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "table", values)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def grand_value(self) -> Fraction:
        return self.table[self.full_mask]

    def value(self, mask: int) -> Fraction:
        if not 0 <= mask <= self.full_mask:
            raise ValueError(f"mask {mask} out of range for n={self.n}")
        return self.table[mask]


@dataclass(frozen=True)
class Allocation:
    """Per-player payoff vector."""

    values: tuple[Fraction, ...]

    def __init__(self, values: Sequence[RationalLike]):
        object.__setattr__(self, "values", tuple(to_fraction(v) for v in values))

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


class CoefficientForm(enum.Enum):
    """Which evaluation of the subset weighting to use."""

    FACTORIAL = "factorial"
    PARITY = "parity"


class AdditivityResult(NamedTuple):
    additive: bool
    witness: Optional[tuple[int, int]]


def cbg_game(p: RationalLike, n: int = 3) -> CoalitionalGame:
    """Majority game: v(S) = p when |S| > n/2, else 0."""
    p = to_fraction(p)
    if p <= 0:
        raise InvalidPayoff(f"payoff must be positive, got {p}")
    table = [
        p if 2 * mask.bit_count() > n else Fraction(0)
        for mask in range(1 << n)
    ]
    return CoalitionalGame(n, table)


def dummy_indicator(s: int, n: int) -> int:
    """1 when a joining player tips a size-s coalition into the majority.

    That is 1 exactly when s + 1 > n/2 and s <= n/2, which is the only way
    the marginal contribution in a majority game can be nonzero.
    """
    if not 0 <= s <= n - 1:
        raise ValueError(f"subset size s={s} must lie in [0, {n - 1}]")
    return 1 if (2 * (s + 1) > n and 2 * s <= n) else 0


def combinatorial_coefficient(
    s: int, n: int, form: CoefficientForm = CoefficientForm.FACTORIAL
) -> int:
    """Orderings weight s! * (n - s - 1)! for a subset of size s.

    The PARITY form is the three-player shortcut (2 for even s, 1 for odd
    s) and is rejected for any other n.
    """
    if not 0 <= s <= n - 1:
        raise ValueError(f"subset size s={s} must lie in [0, {n - 1}]")
    if form is CoefficientForm.PARITY:
        if n != 3:
            raise UnsupportedArity(f"parity coefficient is defined for n=3, got n={n}")
        return (0 if s % 2 else 1) + 1
    return math.factorial(s) * math.factorial(n - s - 1)


def shapley_general(game: CoalitionalGame) -> Allocation:
    """Subset-sum Shapley value, exact in rationals.

    phi_i = (1/n!) * sum over S not containing i of
            s!(n-s-1)! * (v(S + i) - v(S)).
    """
    n = game.n
    fact_n = math.factorial(n)
    weights = [math.factorial(s) * math.factorial(n - s - 1) for s in range(n)]
    phis = []
    for i in range(n):
        bit = 1 << i
        acc = Fraction(0)
        for mask in range(1 << n):
            if mask & bit:
                continue
            s = mask.bit_count()
            acc += weights[s] * (game.table[mask | bit] - game.table[mask])
        phis.append(acc / fact_n)
    return Allocation(phis)


def shapley_cbg(p: RationalLike) -> Allocation:
    """Three-player majority-game Shapley value via the shortcut form.

    phi_i = (p/6) * sum over S not containing i of parity(S) * pivotal(S).
    Only the two singleton subsets are pivotal, each with parity weight 1,
    so every player receives p/3.
    """
    p = to_fraction(p)
    if p <= 0:
        raise InvalidPayoff(f"payoff must be positive, got {p}")
    n = 3
    phis = []
    for i in range(n):
        bit = 1 << i
        acc = 0
        for mask in range(1 << n):
            if mask & bit:
                continue
            s = mask.bit_count()
            acc += combinatorial_coefficient(s, n, CoefficientForm.PARITY) * dummy_indicator(s, n)
        phis.append(p * acc / 6)
    return Allocation(phis)


def _submasks_ascending(mask: int):
    """All submasks of mask in increasing numeric order, including 0 and mask."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def is_additive(game: CoalitionalGame) -> AdditivityResult:
    """Whether disjoint coalitions always combine by plain addition.

    Scans ordered pairs of nonempty disjoint coalitions in bitmask order
    and reports the first (S, U) with v(S | U) != v(S) + v(U), if any.
    """
    full = game.full_mask
    for s_mask in range(1, full + 1):
        comp = full & ~s_mask
        for u_mask in _submasks_ascending(comp):
            if u_mask == 0:
                continue
            if game.table[s_mask | u_mask] != game.table[s_mask] + game.table[u_mask]:
                return AdditivityResult(False, (s_mask, u_mask))
    return AdditivityResult(True, None)


def is_constant_sum(game: CoalitionalGame) -> bool:
    """Whether every coalition and its complement split the grand value."""
    full = game.full_mask
    grand = game.table[full]
    return all(
        game.table[mask] + game.table[full ^ mask] == grand
        for mask in range(full + 1)
    )


# --- core feasibility -------------------------------------------------------


@dataclass(frozen=True)
class CoreConstraint:
    """One original constraint in machine form coeffs . x <= rhs.

    kind is "coalition" (a lower bound, stored negated) or "efficiency"
    (the grand-total upper bound); label renders the human orientation.
    """

    kind: str
    mask: Optional[int]
    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    label: str


class CertTerm(NamedTuple):
    constraint: CoreConstraint
    multiplier: Fraction


@dataclass(frozen=True)
class CoreCertificate:
    """Positive combination of constraints summing to 0 <= residual < 0."""

    terms: tuple[CertTerm, ...]
    residual: Fraction


class CoreStatus(enum.Enum):
    NON_EMPTY = "non-empty"
    EMPTY = "empty"


@dataclass(frozen=True)
class CoreResult:
    status: CoreStatus
    witness: Optional[Allocation]
    certificate: Optional[CoreCertificate]


def _members(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


def _coalition_label(mask: int, n: int, value: Fraction, sense: str) -> str:
    terms = " + ".join(f"x{i}" for i in _members(mask, n))
    return f"{terms} {sense} {value}"


def _core_constraints(game: CoalitionalGame) -> list[CoreConstraint]:
    n = game.n
    constraints = []
    for mask in range(1, game.full_mask + 1):
        coeffs = tuple(Fraction(-1) if mask >> i & 1 else Fraction(0) for i in range(n))
        value = game.table[mask]
        constraints.append(
            CoreConstraint(
                kind="coalition",
                mask=mask,
                coeffs=coeffs,
                rhs=-value,
                label=_coalition_label(mask, n, value, ">="),
            )
        )
    constraints.append(
        CoreConstraint(
            kind="efficiency",
            mask=game.full_mask,
            coeffs=tuple(Fraction(1) for _ in range(n)),
            rhs=game.grand_value,
            label=_coalition_label(game.full_mask, n, game.grand_value, "<="),
        )
    )
    return constraints


def _combine(
    row_pos: tuple, row_neg: tuple, k: int
) -> tuple[tuple[Fraction, ...], Fraction, dict[int, Fraction]]:
    coeffs_p, rhs_p, combo_p = row_pos
    coeffs_n, rhs_n, combo_n = row_neg
    scale_p = -coeffs_n[k]
    scale_n = coeffs_p[k]
    coeffs = tuple(scale_p * cp + scale_n * cn for cp, cn in zip(coeffs_p, coeffs_n))
    rhs = scale_p * rhs_p + scale_n * rhs_n
    combo = dict(combo_p)
    for idx, mult in combo_p.items():
        combo[idx] = mult * scale_p
    for idx, mult in combo_n.items():
        combo[idx] = combo.get(idx, Fraction(0)) + mult * scale_n
    return coeffs, rhs, combo


def _normalized_certificate(
    constraints: list[CoreConstraint], combo: dict[int, Fraction], residual: Fraction
) -> CoreCertificate:
    # scale multipliers to the smallest positive integer vector
    mults = [m for m in combo.values() if m != 0]
    scale = Fraction(
        math.lcm(*(m.denominator for m in mults)),
        math.gcd(*(m.numerator for m in mults)),
    )
    terms = tuple(
        CertTerm(constraints[idx], mult * scale)
        for idx, mult in sorted(combo.items())
        if mult != 0
    )
    return CoreCertificate(terms=terms, residual=residual * scale)


def certificate_refutes(certificate: CoreCertificate) -> bool:
    """Re-derive the contradiction from scratch: the weighted constraint
    sum must cancel every variable and leave a negative right side."""
    if not certificate.terms:
        return False
    width = len(certificate.terms[0].constraint.coeffs)
    coeffs = [Fraction(0)] * width
    rhs = Fraction(0)
    for cons, mult in certificate.terms:
        if mult <= 0:
            return False
        for j, cj in enumerate(cons.coeffs):
            coeffs[j] += mult * cj
        rhs += mult * cons.rhs
    return all(cj == 0 for cj in coeffs) and rhs < 0


def allocation_in_core(game: CoalitionalGame, allocation: Allocation) -> bool:
    """Every coalition bound met and the grand total exact."""
    if len(allocation) != game.n:
        return False
    totals = [Fraction(0)] * (game.full_mask + 1)
    for mask in range(1, game.full_mask + 1):
        low = mask & -mask
        totals[mask] = totals[mask ^ low] + allocation.values[low.bit_length() - 1]
        if totals[mask] < game.table[mask]:
            return False
    return totals[game.full_mask] == game.grand_value


def core_check(game: CoalitionalGame) -> CoreResult:
    """Decide core feasibility by exact Fourier-Motzkin elimination.

    Eliminates x0, x1, ... in order, carrying for every derived row the
    multipliers over the original constraints. The first all-zero row
    with a negative right side proves emptiness and its multipliers form
    the certificate; otherwise back-substitution through the recorded
    stages builds a witness (each variable takes its greatest remaining
    lower bound).
    """
    if game.n > MAX_CORE_PLAYERS:
        raise ArityGuard(
            f"core_check handles n <= {MAX_CORE_PLAYERS}, got n={game.n}"
        )
    constraints = _core_constraints(game)
    rows: list[tuple[tuple[Fraction, ...], Fraction, dict[int, Fraction]]] = [
        (cons.coeffs, cons.rhs, {idx: Fraction(1)})
        for idx, cons in enumerate(constraints)
    ]
    n = game.n
    stages: list[list[tuple]] = []

    def sift(candidates):
        """Drop tautologies, detect contradictions, dedupe by coefficients."""
        kept: dict[tuple, tuple] = {}
        for coeffs, rhs, combo in candidates:
            if all(cj == 0 for cj in coeffs):
                if rhs < 0:
                    return None, (combo, rhs)
                continue
            prev = kept.get(coeffs)
            if prev is None or rhs < prev[1]:
                kept[coeffs] = (coeffs, rhs, combo)
        return list(kept.values()), None

    rows, clash = sift(rows)
    if clash is not None:
        combo, rhs = clash
        return CoreResult(
            CoreStatus.EMPTY, None, _normalized_certificate(constraints, combo, rhs)
        )
    for k in range(n):
        stages.append(rows)
        pos = [r for r in rows if r[0][k] > 0]
        neg = [r for r in rows if r[0][k] < 0]
        passed = [r for r in rows if r[0][k] == 0]
        derived = [_combine(p, q, k) for p in pos for q in neg]
        rows, clash = sift(passed + derived)
        if clash is not None:
            combo, rhs = clash
            return CoreResult(
                CoreStatus.EMPTY, None, _normalized_certificate(constraints, combo, rhs)
            )

    x: list[Optional[Fraction]] = [None] * n
    for k in reversed(range(n)):
        lower: Optional[Fraction] = None
        upper: Optional[Fraction] = None
        for coeffs, rhs, _ in stages[k]:
            ck = coeffs[k]
            if ck == 0:
                continue
            residual = rhs - sum(
                (coeffs[j] * x[j] for j in range(k + 1, n)), Fraction(0)
            )
            bound = residual / ck
            if ck > 0:
                upper = bound if upper is None else min(upper, bound)
            else:
                lower = bound if lower is None else max(lower, bound)
        if lower is not None and upper is not None and lower > upper:
            raise AssertionError("elimination reported feasible but bounds cross")
        if lower is not None:
            x[k] = lower
        elif upper is not None:
            x[k] = upper
        else:
            x[k] = Fraction(0)
    witness = Allocation(x)
    if not allocation_in_core(game, witness):
        raise AssertionError("constructed witness fails a coalition bound")
    return CoreResult(CoreStatus.NON_EMPTY, witness, None)


# --- game file format -------------------------------------------------------


def parse_game_text(text: str) -> CoalitionalGame:
    """Parse the bitmask table format.

    First meaningful line is ``n=<players>``; each following line is
    ``<bitmask>,<value>`` with values in rational or decimal syntax.
    Blank lines and ``#`` comments are ignored. Every coalition must
    appear exactly once.
    """
    n: Optional[int] = None
    values: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            if not line.startswith("n="):
                raise ConfigError(f"line {lineno}: expected 'n=<players>' header")
            try:
                n = int(line[2:])
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: bad player count") from exc
            if n < 1 or n > MAX_PLAYERS:
                raise ConfigError(f"line {lineno}: n must be in [1, {MAX_PLAYERS}]")
            continue
        mask_text, sep, value_text = line.partition(",")
        if not sep:
            raise ConfigError(f"line {lineno}: expected '<bitmask>,<value>'")
        try:
            mask = int(mask_text.strip())
            value = to_fraction(value_text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"line {lineno}: malformed entry {line!r}") from exc
        if not 0 <= mask < (1 << n):
            raise ConfigError(f"line {lineno}: bitmask {mask} out of range")
        if mask in values:
            raise ConfigError(f"line {lineno}: duplicate bitmask {mask}")
        values[mask] = value
    if n is None:
        raise ConfigError("empty game file")
    missing = [m for m in range(1 << n) if m not in values]
    if missing:
        raise ConfigError(f"missing coalition entries: {missing[:5]}")
    try:
        return CoalitionalGame(n, [values[m] for m in range(1 << n)])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def dump_game_text(game: CoalitionalGame) -> str:
    lines = [f"n={game.n}"]
    lines.extend(f"{mask},{game.table[mask]}" for mask in range(1 << game.n))
    return "\n".join(lines) + "\n"


def load_game_file(path) -> CoalitionalGame:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_game_text(fh.read())
