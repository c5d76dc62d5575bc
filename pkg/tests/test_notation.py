"""Parser, printer and elaboration round trips."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegagames import notation
from omegagames.errors import NotationError
from omegagames.games import NEG_ONE, ONE, STAR, UP, ZERO, integer, neg, nimber
from omegagames.notation import (
    BracesExpr,
    DeltaSpecExpr,
    IntLit,
    NamedLit,
    NimberLit,
    parse_delta,
    parse_game,
    parse_oplus,
    to_delta,
    to_game,
    to_plus,
)


def test_parse_up():
    expr = parse_game("{0|*}")
    assert expr == BracesExpr((IntLit(0),), (NimberLit(1),))
    assert to_game(expr) is UP


def test_parse_empty_braces():
    assert to_game("{|}") is ZERO


def test_parse_nested():
    g = to_game("{0|{1|-1}}")
    assert g.left == (ZERO,)
    (r,) = g.right
    assert r.left == (ONE,) and r.right == (NEG_ONE,)


def test_parse_named_and_nimbers():
    assert to_game("^") is UP
    assert to_game("v") is neg(UP)
    assert to_game("*") is STAR
    assert to_game("*3") is nimber(3)
    assert to_game("*0") is ZERO
    assert to_game("-4") is integer(-4)


def test_parse_delta_forms():
    expr = parse_delta("(1,-1)w")
    assert expr == DeltaSpecExpr((), (IntLit(1), IntLit(-1)))
    expr = parse_delta("-1 : (0)w")
    assert expr == DeltaSpecExpr((IntLit(-1),), (IntLit(0),))
    expr = parse_delta("1,-1")
    assert expr == DeltaSpecExpr((IntLit(1), IntLit(-1)), None)
    # comma may stand where the cycle starts
    assert parse_delta("1,(0)w") == DeltaSpecExpr((IntLit(1),), (IntLit(0),))


def test_parse_oplus():
    expr = parse_oplus("1,(0)w & (*)w")
    assert len(expr.blocks) == 2
    plus = to_plus(expr)
    assert plus.n_classes == 2


def test_parse_errors_carry_position():
    with pytest.raises(NotationError):
        parse_game("{0|")
    with pytest.raises(NotationError):
        parse_game("{0,|}")
    with pytest.raises(NotationError):
        parse_delta("()w")
    with pytest.raises(NotationError):
        parse_delta("(1,2)")      # missing the w suffix
    with pytest.raises(NotationError):
        parse_game("q")
    try:
        parse_game("{0|&}")
    except NotationError as e:
        assert e.pos is not None


def test_format_round_trip_examples():
    assert notation.format(parse_game("{0|*}")) == "{0|*}"
    assert notation.format(parse_delta("(1,-1)w")) == "(1,-1)w"
    assert notation.format(IntLit(2)) == "2"
    assert notation.format(notation.game_to_expr(integer(2))) == "2"
    assert notation.format(notation.game_to_expr(UP)) == "^"
    assert notation.format(notation.game_to_expr(nimber(2))) == "*2"


def test_elaboration_determinism():
    assert to_game("{0|0}") is to_game("  { 0 | 0 } ")
    a = to_delta("(1,-1)w")
    b = to_delta("(1,-1)w")
    assert a.spec == b.spec


def test_negative_integers_elaborate_via_neg():
    for n in range(1, 6):
        assert to_game(str(-n)) is neg(to_game(str(n)))


def game_exprs(depth=2):
    base = st.one_of(
        st.integers(-3, 3).map(IntLit),
        st.integers(0, 3).map(NimberLit),
        st.sampled_from(["^", "v"]).map(NamedLit),
    )
    return st.recursive(
        base,
        lambda ch: st.builds(
            BracesExpr,
            st.lists(ch, max_size=2).map(tuple),
            st.lists(ch, max_size=2).map(tuple),
        ),
        max_leaves=6,
    )


@given(game_exprs())
@settings(max_examples=80, deadline=None)
def test_game_expr_round_trip(expr):
    text = notation.format(expr)
    assert parse_game(text) == expr


@given(
    st.lists(game_exprs(), max_size=3).map(tuple),
    st.one_of(st.none(), st.lists(game_exprs(), min_size=1, max_size=3).map(tuple)),
)
@settings(max_examples=50, deadline=None)
def test_delta_expr_round_trip(prefix, cycle):
    expr = DeltaSpecExpr(prefix, cycle)
    if not prefix and cycle is None:
        return
    text = notation.format(expr)
    assert parse_delta(text) == expr


def test_render_position():
    d = to_delta("(1,-1)w")
    assert notation.render_position(d, 6) == "1-1+1-1+1-1+..."
    f = to_delta("1,-1")
    assert notation.render_position(f, 6) == "1-1"
