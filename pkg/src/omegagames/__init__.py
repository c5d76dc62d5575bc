"""Infinite sums of combinatorial games with ordinal-indexed runs."""

from .games import (
    DOWN,
    NEG_ONE,
    ONE,
    STAR,
    UP,
    ZERO,
    Game,
    Outcome,
    Player,
    birthday,
    conway_equiv,
    integer,
    is_dicotic,
    is_impartial,
    is_number,
    leq,
    make_game,
    neg,
    nimber,
    outcome,
    persistent,
    subpositions,
    sum2,
    sum_all,
)
from .ordinals import OMEGA, Ordinal, add as ordinal_add, compare as ordinal_compare, decompose
from .delta import (
    DeltaGame,
    FiniteSpec,
    Move,
    PeriodicSpec,
    PlusGame,
    apply_move,
    finite_delta,
    has_move,
    legal_moves,
    oplus,
    pattern_equivalent,
    periodic_delta,
    phi_sum,
    summand_at,
)
from .runs import (
    CompressedRun,
    FiniteSegment,
    OmegaSegment,
    PlayResult,
    RegularSummary,
    Rule,
    limit_mover,
    maf,
    positions,
    regular_moves,
    resultant,
    validate_run,
)
from .engine import (
    BlockState,
    NextMove,
    OmegaCertificate,
    BudgetExhausted,
    PlayBudget,
    Seat,
    UniformReport,
    VerifyBudget,
    VerifyResult,
    check_uniform,
    play,
    step_or_certify,
    trace_records,
    verify_winning,
)
from .errors import (
    BudgetExceededError,
    IllegalMoveError,
    NotationError,
    OmegagamesError,
    StrategyUndefinedError,
)
from . import notation, strategies

__version__ = "0.1.0"
