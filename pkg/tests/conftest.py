import pytest
from hypothesis import strategies as st

from omegagames.games import NEG_ONE, ONE, STAR, UP, ZERO, make_game


def games_strategy(max_leaves: int = 10):
    """Random small game forms; leaves are 0."""
    return st.recursive(
        st.just(ZERO),
        lambda children: st.builds(
            make_game,
            st.lists(children, max_size=2).map(tuple),
            st.lists(children, max_size=2).map(tuple),
        ),
        max_leaves=max_leaves,
    )


@pytest.fixture
def named_pool():
    pm1 = make_game((NEG_ONE,), (ONE,))
    return {"zero": ZERO, "one": ONE, "neg_one": NEG_ONE, "star": STAR,
            "up": UP, "pm1": pm1}
