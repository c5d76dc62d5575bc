"""Indexed families: summand access, moves, merges, pattern equivalence."""

import random

import pytest

from omegagames.delta import (
    DeltaGame,
    FiniteSpec,
    Move,
    PeriodicSpec,
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
from omegagames.errors import IllegalMoveError
from omegagames.games import NEG_ONE, ONE, STAR, ZERO, Player, birthday, make_game
from omegagames.notation import to_delta

L, R = Player.LEFT, Player.RIGHT


def test_summand_at():
    d = to_delta("(1,-1)w")
    assert d.summand_at(4) is ONE
    moved = apply_move(d, Move(0, L, ZERO))
    assert moved.summand_at(0) is ZERO
    assert moved.summand_at(2) is ONE
    f = finite_delta([ONE, NEG_ONE])
    assert summand_at(f, 1) is NEG_ONE
    with pytest.raises(IndexError):
        f.summand_at(2)


def test_legal_moves_examples():
    zeros = to_delta("(0)w")
    assert legal_moves(zeros, L) == []
    d = to_delta("(1,-1)w")
    right = legal_moves(d, R)
    assert right == [Move(1, R, ZERO)]
    stars = to_delta("(*)w")
    for p in (L, R):
        assert legal_moves(stars, p) == [Move(0, p, ZERO)]


def test_legal_moves_canonical_accounts_for_overlay():
    d = to_delta("(1,-1)w")
    d = apply_move(d, Move(1, R, ZERO))
    moves = legal_moves(d, R)
    # the dead overlay entry is skipped; next phase representative moves up
    assert moves == [Move(3, R, ZERO)]


def test_apply_move_validates():
    d = to_delta("(1,-1,0)w")
    with pytest.raises(IllegalMoveError):
        apply_move(d, Move(2, L, ZERO))      # the 0 summand has no options
    with pytest.raises(IllegalMoveError):
        apply_move(d, Move(0, L, STAR))      # 1 has no option *


def test_moves_only_descend():
    d = to_delta("(1,-1)w")
    d = apply_move(d, Move(0, L, ZERO))
    assert 0 in d.overlay
    with pytest.raises(IllegalMoveError):
        apply_move(d, Move(0, L, ZERO))


def test_phi_sum_finite_plus_periodic():
    merged = phi_sum([finite_delta([ONE]), to_delta("(0)w")])
    assert isinstance(merged.spec, PeriodicSpec)
    assert merged.spec.prefix == (ONE,)
    assert merged.spec.cycle == (ZERO,)


def test_phi_sum_two_finites():
    a, b = make_game((ONE,), ()), STAR
    merged = phi_sum([finite_delta([a]), finite_delta([b])])
    assert merged.spec == FiniteSpec((a, b))


def test_oplus_five_classes_from_nested_sums():
    parts = [to_delta("(*)w") for _ in range(5)]
    nested = oplus([oplus(parts[0:2]), oplus(parts[2:4]), oplus(parts[4:5])])
    assert nested.n_classes == 5
    seen = {nested.class_of(i) for i in range(20)}
    assert seen == set(range(5))


def test_oplus_interleave_classes():
    plus = oplus([to_delta("(*)w"), to_delta("(0)w")])
    assert plus.class_of(0) == 0
    assert plus.class_of(1) == 1
    assert plus.base.summand_at(0) is STAR
    assert plus.base.summand_at(1) is ZERO
    assert plus.to_global(0, 3) == 6


def test_pattern_equivalent():
    a = to_delta("(1,-1)w")
    assert pattern_equivalent(a, a)
    assert not pattern_equivalent(a, to_delta("(1)w"))
    # two families describing the same multiset with different blocking
    assert pattern_equivalent(to_delta("(1,-1,0)w"), to_delta("0:(0,1,0,-1,0,0)w"))
    with pytest.raises(ValueError):
        pattern_equivalent(a, finite_delta([ONE]))


def test_pattern_equivalent_counts_finite_overlay():
    a = to_delta("(1,-1)w")
    b = apply_move(a, Move(0, L, ZERO))
    assert not pattern_equivalent(a, b)  # one 0 vs none


def test_depth_potential_on_random_walks():
    rng = random.Random(7)
    pm1 = make_game((NEG_ONE,), (ONE,))
    base = finite_delta([pm1, STAR, ONE, make_game((STAR,), (STAR,))])
    for _ in range(30):
        d = base
        counts = {i: 0 for i in range(4)}
        mover = rng.choice((L, R))
        while True:
            moves = legal_moves(d, mover, canonical=False, bound=4)
            if not moves:
                break
            m = rng.choice(moves)
            counts[m.index] += 1
            d = apply_move(d, m)
            mover = mover.other()
        for i, n in counts.items():
            assert n <= birthday(base.summand_at(i))


def _brute_wins(d, mover, canonical):
    n = len(d.spec.games)
    moves = legal_moves(d, mover, canonical=canonical, bound=None if canonical else n)
    for m in moves:
        if not _brute_wins(apply_move(d, m), mover.other(), canonical):
            return True
    return False


def test_canonical_reduction_soundness_brute_force():
    pm1 = make_game((NEG_ONE,), (ONE,))
    pool = [ZERO, ONE, NEG_ONE, STAR, pm1]
    rng = random.Random(3)
    for _ in range(25):
        games = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
        d = finite_delta(games)
        for mover in (L, R):
            assert _brute_wins(d, mover, True) == _brute_wins(d, mover, False)


def test_has_move_matches_enumeration():
    for text in ("(0)w", "(1,-1)w", "-1:(0)w", "(*)w"):
        d = to_delta(text)
        for p in (L, R):
            assert has_move(d, p) == bool(legal_moves(d, p))


def test_overlay_is_immutable_view():
    d = to_delta("(*)w")
    e = apply_move(d, Move(0, L, ZERO))
    assert d.overlay == {} and e.overlay == {0: ZERO}
    with pytest.raises(AttributeError):
        d.spec = None
