"""Exception types shared across the package."""


class QuorumGameError(Exception):
    """Base class for all domain errors raised by this package."""


class EmptyWinningCohort(QuorumGameError):
    """A payout was requested for a cohort that has no members."""


class DegenerateRatio(QuorumGameError):
    """The risk factor is >= 1/2, so the equilibrium denominator 1 - 2*gamma
    is not positive and the closed forms are undefined."""


class NoAdventurersNeeded(QuorumGameError):
    """The equilibrium requires no adventurers at all (g* + b* <= 0), so a
    mixed strategy over their votes is undefined."""


class InfeasiblePopulation(QuorumGameError):
    """No integer adventurer split satisfies the quorum and lower-bound
    constraints for the given citizen/terrorist counts."""


class ConfigError(QuorumGameError):
    """Invalid run configuration (empty grids, zero population, malformed
    game files, and similar)."""


class MixedAxisError(QuorumGameError):
    """Plotting asked for one sweep axis while the other axis is not held
    at a single value."""


class InvalidPayoff(QuorumGameError):
    """The coalitional game payoff must be strictly positive."""


class UnsupportedArity(QuorumGameError):
    """The closed-form coefficient shortcut is only defined for 3 players."""


class ArityGuard(QuorumGameError):
    """Player count exceeds what the exact enumeration can handle."""
