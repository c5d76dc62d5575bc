"""Ordinal arithmetic below w^w."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegagames import ordinals
from omegagames.ordinals import OMEGA, Ordinal, add, compare, decompose, from_int, omega_times


def test_compare_examples():
    assert compare(OMEGA, from_int(3)) == 1
    assert compare(add(OMEGA, from_int(1)), add(OMEGA, from_int(1))) == 0
    assert compare(omega_times(2), add(OMEGA, from_int(5))) == 1


def test_add_examples():
    assert add(from_int(3), OMEGA) == OMEGA
    assert add(OMEGA, from_int(3)) == Ordinal(((1, 1),), 3)
    assert add(Ordinal(((1, 2),), 1), OMEGA) == omega_times(3)


def test_decompose_examples():
    assert decompose(Ordinal(((1, 2),), 3)) == (omega_times(2), 3)
    assert decompose(from_int(0)) == (from_int(0), 0)
    lim, n = decompose(OMEGA)
    assert lim == OMEGA and n == 0 and OMEGA.is_limit


def test_formatting():
    assert str(Ordinal(((2, 3), (1, 1)), 4)) == "w^2*3+w*1+4"
    assert str(from_int(0)) == "0"
    assert str(from_int(7)) == "7"
    assert str(OMEGA) == "w*1"


def test_exponent_cap_validated():
    with pytest.raises(ValueError):
        Ordinal(((5, 1),), 0)
    with pytest.raises(ValueError):
        Ordinal(((1, 1), (2, 1)), 0)   # ascending exponents
    with pytest.raises(ValueError):
        Ordinal(((1, 0),), 0)


def small_ordinals():
    terms = st.lists(
        st.tuples(st.integers(1, 3), st.integers(1, 4)), max_size=3
    ).map(lambda ts: tuple(sorted({e: c for e, c in ts}.items(), reverse=True)))
    return st.builds(Ordinal, terms, st.integers(0, 9))


@given(small_ordinals(), small_ordinals(), small_ordinals())
@settings(max_examples=120, deadline=None)
def test_add_associative(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))


@given(small_ordinals(), small_ordinals())
@settings(max_examples=120, deadline=None)
def test_compare_total_order(a, b):
    assert compare(a, b) == -compare(b, a)
    assert (a < b) == (compare(a, b) == -1)


@given(small_ordinals(), small_ordinals(), small_ordinals())
@settings(max_examples=120, deadline=None)
def test_right_monotone(a, b, c):
    if compare(b, c) == -1:
        assert compare(add(a, b), add(a, c)) == -1


@given(small_ordinals(), st.integers(0, 20))
@settings(max_examples=100, deadline=None)
def test_decompose_round_trip(lam, n):
    limit_part, _ = decompose(lam)
    total = add(limit_part, from_int(n))
    assert decompose(total) == (limit_part, n)
