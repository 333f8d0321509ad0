"""Game-theoretic analysis of quorum-voted permissioned ledgers.

Exact-rational tooling for a voting game played on a BFT-style network:
closed-form optimal adventurer counts, unilateral-deviation checking with
a brute-force oracle, population grid sweeps, and a coalitional majority
game with Shapley values and core-emptiness certificates.
"""

from .coalition import (
    AdditivityResult,
    Allocation,
    CoalitionalGame,
    CoefficientForm,
    CoreCertificate,
    CoreConstraint,
    CoreResult,
    CoreStatus,
    allocation_in_core,
    cbg_game,
    certificate_refutes,
    combinatorial_coefficient,
    core_check,
    dummy_indicator,
    dump_game_text,
    is_additive,
    is_constant_sum,
    load_game_file,
    parse_game_text,
    shapley_cbg,
    shapley_general,
)
from .equilibrium import (
    DeviationDirection,
    DeviationReport,
    EquilibriumPoint,
    MixedStrategy,
    PayoffSemantics,
    SplitRecord,
    best_response_oracle,
    equilibrium_counts,
    integer_equilibrium_point,
    mixed_strategy,
    verify_nash,
)
from .errors import (
    ArityGuard,
    ConfigError,
    DegenerateRatio,
    EmptyWinningCohort,
    InfeasiblePopulation,
    InvalidPayoff,
    MixedAxisError,
    NoAdventurersNeeded,
    QuorumGameError,
    UnsupportedArity,
)
from .game_core import (
    CountMode,
    OutcomeReport,
    PayoffConfig,
    PopulationProfile,
    consensus_feasible,
    evaluate_outcome,
    rrf,
    to_fraction,
    utility_faulty,
    utility_honest,
    zero_sum_residual,
)
from .sweep import (
    CSV_HEADER,
    SweepConfig,
    SweepRow,
    emit_csv,
    emit_plot,
    format_decimal,
    fraction_grid,
    round_half_up,
    run_sweep,
    write_csv,
)

__version__ = "0.1.0"
