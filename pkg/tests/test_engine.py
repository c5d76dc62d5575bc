"""Play execution, certification, verification."""

import pytest

from omegagames.delta import Move, finite_delta, legal_moves, oplus
from omegagames.engine import (
    BlockState,
    BudgetExhausted,
    NextMove,
    OmegaCertificate,
    PlayBudget,
    Seat,
    VerifyBudget,
    _WorkPos,
    check_uniform,
    play,
    step_or_certify,
    trace_records,
    verify_winning,
)
from omegagames.errors import BudgetExceededError, StrategyUndefinedError
from omegagames.games import NEG_ONE, ONE, STAR, ZERO, Outcome, Player, make_game, outcome, sum_all
from omegagames.notation import to_delta, to_plus
from omegagames.runs import FiniteSegment, OmegaSegment, Rule
from omegagames.strategies import (
    Strategy,
    canonical_program,
    first_option,
    mirror_same,
    open_then_mirror,
    pairing,
    solver_optimal,
    sweep_zero,
    uniform_compose,
    with_opening,
)

L, R = Player.LEFT, Player.RIGHT

FAST = VerifyBudget(play=PlayBudget(blocks=4, steps=2000),
                    adversary_head=1, adversary_period=2)


def test_star_sum_second_wins_at_omega():
    d = to_delta("(*)w")
    for first in (L, R):
        res = play(d, Rule.STANDARD, first, first_option(), sweep_zero(),
                   PlayBudget(blocks=4, steps=5000))
        # left seat holds first_option; the second player wins regardless
        assert res.winner is (first.other() if first is L else L)
    res = play(d, Rule.STANDARD, L, first_option(), sweep_zero())
    assert str(res.length) == "w*1"


def test_right_winner_family():
    d = to_delta("-1:(0)w")
    for first in (L, R):
        res = play(d, Rule.STANDARD, first, first_option(), first_option())
        assert res.winner is R


def test_regular_play_left_wins_with_exchange_discounting():
    d = to_delta("1:({-1|1})w")
    res = play(d, Rule.REGULAR, L, open_then_mirror(), first_option(),
               PlayBudget(blocks=4, steps=5000))
    assert res.winner is L
    assert str(res.length) == "w*1"


def test_finite_collapse_all_rules_agree():
    pm1 = make_game((NEG_ONE,), (ONE,))
    games = [ONE, NEG_ONE, pm1, STAR]
    d = finite_delta(games)
    runs = []
    for rule in Rule:
        origin = oplus([d]) if rule is Rule.EXTENDED else d
        res = play(origin, rule, L, solver_optimal(), solver_optimal())
        runs.append((res.winner, tuple(res.run.segments)))
    assert len({r for r in runs}) == 1
    classical = outcome(sum_all(games))
    winner = runs[0][0]
    expected = {Outcome.P: R, Outcome.N: L, Outcome.L: L, Outcome.R: R}[classical]
    assert winner is expected


def test_strategy_undefined_raises_with_player():
    d = to_delta("(*)w")
    with pytest.raises(StrategyUndefinedError) as exc:
        play(d, Rule.STANDARD, L, mirror_same(), sweep_zero())
    assert exc.value.player is L


def test_budget_exceeded_on_aperiodic_strategy():
    class Doubler(Strategy):
        name = "doubler"

        def choose(self, pos, view, player):
            target = 0
            while target in pos.overlay:
                target = 2 * target + 1
            opt = pos.summand_at(target).left[0]
            return Move(target, player, opt)

    d = to_delta("(*)w")
    with pytest.raises(BudgetExceededError) as exc:
        play(d, Rule.STANDARD, L, Doubler(), sweep_zero(),
             PlayBudget(blocks=2, steps=300))
    assert exc.value.partial_run is not None


def test_step_or_certify_yields_certificate():
    d = to_delta("(1,-1)w")
    budget = PlayBudget(blocks=2, steps=500)
    s_left, s_right = sweep_zero(), sweep_zero()
    pos = _WorkPos(d.spec, dict(d.overlay))
    state = BlockState(d, Rule.STANDARD, L, [], [], pos, L, budget)
    seen_moves = 0
    while True:
        out = step_or_certify(state, (s_left, s_right))
        if isinstance(out, NextMove):
            seen_moves += 1
            continue
        break
    assert isinstance(out, OmegaCertificate)
    assert len(out.cycle_moves) == 2
    assert out.index_shift == 2
    assert seen_moves >= 2


def test_step_or_certify_budget_exhaustion():
    class Doubler(Strategy):
        name = "doubler"

        def choose(self, pos, view, player):
            target = 0
            while target in pos.overlay:
                target = 2 * target + 1
            return Move(target, player, ZERO)

    d = to_delta("(*)w")
    budget = PlayBudget(blocks=1, steps=40)
    pos = _WorkPos(d.spec, dict(d.overlay))
    state = BlockState(d, Rule.STANDARD, L, [], [], pos, L, budget)
    out = None
    for _ in range(100):
        out = step_or_certify(state, (Doubler(), Doubler()))
        if isinstance(out, BudgetExhausted):
            break
    assert isinstance(out, BudgetExhausted)


def test_interleaved_sweep_certificate_shape():
    class SkipOne(Strategy):
        """Take the second untouched index of the mover's phase."""

        name = "skip_one"

        def choose(self, pos, view, player):
            moves = legal_moves(pos, player, canonical=True)
            if not moves:
                return None
            base = moves[-1]
            nxt = base.index + len(pos.spec.cycle)
            while nxt in pos.overlay:
                nxt += len(pos.spec.cycle)
            return Move(nxt, player, base.option)

    d = to_delta("(1,-1)w")
    res = play(d, Rule.STANDARD, L, SkipOne(), SkipOne(),
               PlayBudget(blocks=1, steps=400))
    seg = res.run.segments[0]
    assert isinstance(seg, OmegaSegment)
    assert len(seg.cycle_moves) == 2
    assert seg.index_shift == 4
    final = None


def test_verify_winning_certifies_pairing():
    d = to_delta("(1,-1)w")
    r = verify_winning(pairing(L), d, Rule.STANDARD, Seat.SECOND, L, FAST)
    assert r.certified


def test_verify_winning_refutes_greedy_first():
    d = to_delta("(*)w")
    r = verify_winning(with_opening(mirror_same()), d, Rule.STANDARD,
                       Seat.FIRST, L, FAST)
    assert r.status == "refuted"
    assert r.counter_run is not None


def test_verify_winning_empty_space_is_unknown():
    d = to_delta("(*)w")
    empty = VerifyBudget(play=PlayBudget(blocks=2, steps=200),
                         adversary_head=0, adversary_period=0,
                         include_builtins=False)
    r = verify_winning(sweep_zero(), d, Rule.STANDARD, Seat.SECOND, L, empty)
    assert r.status == "unknown"


def test_check_uniform_good_and_bad():
    single = oplus([to_delta("(*)w")])
    rep = check_uniform(sweep_zero(), single, L, FAST)
    assert rep.status == "uniform" and rep.limits_seen > 0

    class FixedClass(Strategy):
        """Always answer inside class 1, abandoning whatever is active."""

        name = "fixed_class"

        def choose(self, pos, view, player):
            for m in legal_moves(pos, player, canonical=True):
                if m.index % 2 == 1:
                    return m
            return None

    both = oplus([to_delta("(*)w"), to_delta("(*)w")])
    bad = check_uniform(FixedClass(), both, L, FAST)
    assert bad.status == "violated"
    assert bad.witness is not None


def test_check_uniform_empty_space():
    both = oplus([to_delta("(*)w"), to_delta("(*)w")])
    empty = VerifyBudget(play=PlayBudget(blocks=2, steps=200),
                         adversary_head=0, adversary_period=0,
                         include_builtins=False)
    assert check_uniform(sweep_zero(), both, L, empty).status == "unknown"


def test_extended_rule_requires_classes():
    with pytest.raises(ValueError):
        play(to_delta("(*)w"), Rule.EXTENDED, L, sweep_zero(), sweep_zero())


def test_uncertifiable_strategy_rejected_for_omega_play():
    from omegagames.strategies import random_strategy

    d = to_delta("(*)w")
    with pytest.raises(ValueError):
        play(d, Rule.STANDARD, L, random_strategy(1), sweep_zero())
    # finite families are fine
    f = finite_delta([STAR, STAR, ONE])
    res = play(f, Rule.STANDARD, L, random_strategy(1), random_strategy(2))
    assert res.winner in (L, R)


def test_trace_records_structure():
    d = to_delta("(*)w")
    res = play(d, Rule.REGULAR, L, first_option(), sweep_zero(),
               PlayBudget(blocks=4, steps=5000))
    records = trace_records(res)
    kinds = [r["type"] for r in records]
    assert kinds[0] == "move"
    assert "omega_certificate" in kinds
    assert "limit" in kinds
    assert kinds[-1] == "result"
    move0 = records[0]
    assert set(move0) == {"type", "ordinal", "player", "index", "from", "to",
                          "regular"}
    limit = next(r for r in records if r["type"] == "limit")
    assert limit["rule"] == "regular"
    assert "last_regular" in limit


def test_play_against_canonical_programs_terminates():
    d = to_delta("(1,-1)w")
    for period in [(0,), (1,), (0, 1)]:
        prog = canonical_program((), period)
        res = play(d, Rule.STANDARD, R, pairing(L), prog,
                   PlayBudget(blocks=4, steps=2000))
        assert res.winner is L


def test_composed_second_wins_extended():
    both = oplus([to_delta("(*)w"), to_delta("(*)w")])
    sigma = uniform_compose(sweep_zero(), sweep_zero())
    prog = canonical_program((), (0, 1, 1))
    res = play(both, Rule.EXTENDED, R, sigma, prog,
               PlayBudget(blocks=4, steps=5000))
    assert res.winner is L
    # the mixed-rate branch needs per-move shifts
    seg = res.run.segments[0]
    assert isinstance(seg, OmegaSegment)
    assert seg.shifts is not None or seg.index_shift > 0
