"""Finite partizan combinatorial games under normal play.

Game forms are extensionally interned: two games with equal option *sets*
are the same object, so isomorphism is object identity.  The intern table,
negation/sum caches and the outcome memo are append-only dicts published
under a lock; games are immutable after construction, so everything here is
safe to call from concurrent tasks.

No canonical-form simplification is ever performed: several operations
(persistence in particular) are sensitive to the form, not just the value.
"""

from __future__ import annotations

import threading
from enum import Enum
from typing import Iterable, Optional


class Player(Enum):
    LEFT = "L"
    RIGHT = "R"

    def other(self) -> "Player":
        return Player.RIGHT if self is Player.LEFT else Player.LEFT

    def __str__(self) -> str:
        return self.value


class Outcome(Enum):
    """Winner classification: N first player, P second, L Left, R Right."""

    N = "N"
    P = "P"
    L = "L"
    R = "R"

    def __str__(self) -> str:
        return self.value


class Game:
    """An interned game form.

    ``left`` and ``right`` are tuples of option games in a canonical
    structural order, so "first option" is well defined and reproducible
    regardless of construction order.
    """

    __slots__ = ("left", "right", "uid")

    left: tuple["Game", ...]
    right: tuple["Game", ...]
    uid: int

    def __repr__(self) -> str:
        return _render(self, depth=4)

    def __hash__(self) -> int:
        return self.uid

    def __eq__(self, other) -> bool:
        return self is other


def _render(g: Game, depth: int) -> str:
    if not g.left and not g.right:
        return "0"
    if depth <= 0:
        return "{...}"
    ls = ",".join(_render(o, depth - 1) for o in g.left)
    rs = ",".join(_render(o, depth - 1) for o in g.right)
    return "{" + ls + "|" + rs + "}"


_lock = threading.Lock()
_table: dict[tuple[frozenset, frozenset], Game] = {}
_sort_keys: dict[int, tuple] = {}
_birthdays: dict[int, int] = {}
_neg_cache: dict[int, Game] = {}
_sum_cache: dict[tuple[int, int], Game] = {}
_wins_cache: dict[tuple[int, Player], bool] = {}
_pred_cache: dict[tuple[str, int], bool] = {}
_maxmoves_cache: dict[tuple[int, Player], int] = {}


def make_game(left: Iterable[Game] = (), right: Iterable[Game] = ()) -> Game:
    """Intern and return the game with the given Left and Right option sets."""
    lset = {g.uid: g for g in left}
    rset = {g.uid: g for g in right}
    key = (frozenset(lset), frozenset(rset))
    g = _table.get(key)
    if g is not None:
        return g
    with _lock:
        g = _table.get(key)
        if g is not None:
            return g
        lt = tuple(sorted(lset.values(), key=lambda o: _sort_keys[o.uid]))
        rt = tuple(sorted(rset.values(), key=lambda o: _sort_keys[o.uid]))
        g = object.__new__(Game)
        g.left = lt
        g.right = rt
        g.uid = len(_sort_keys)
        bday = 1 + max((_birthdays[o.uid] for o in lt + rt), default=-1)
        _birthdays[g.uid] = bday
        _sort_keys[g.uid] = (
            bday,
            tuple(_sort_keys[o.uid] for o in lt),
            tuple(_sort_keys[o.uid] for o in rt),
        )
        # publish last: other threads only ever see fully built games
        _table[key] = g
        return g


def options(g: Game, p: Player) -> tuple[Game, ...]:
    return g.left if p is Player.LEFT else g.right


def birthday(g: Game) -> int:
    """Height of the option tree: 0 for the empty game, else 1 + max over options."""
    return _birthdays[g.uid]


def sort_key(g: Game) -> tuple:
    return _sort_keys[g.uid]


ZERO = make_game()
STAR = make_game((ZERO,), (ZERO,))
ONE = make_game((ZERO,), ())
NEG_ONE = make_game((), (ZERO,))
UP = make_game((ZERO,), (STAR,))
DOWN = make_game((STAR,), (ZERO,))

_int_cache: dict[int, Game] = {0: ZERO, 1: ONE, -1: NEG_ONE}
_nimber_cache: dict[int, Game] = {0: ZERO, 1: STAR}


def integer(n: int) -> Game:
    """The integer game: n = {n-1 | } for n > 0, negatives by symmetry."""
    g = _int_cache.get(n)
    if g is not None:
        return g
    if n > 0:
        g = make_game((integer(n - 1),), ())
    else:
        g = make_game((), (integer(n + 1),))
    _int_cache[n] = g
    return g


def nimber(k: int) -> Game:
    """*k = {0, *, ..., *(k-1) | same}; *0 is 0 and *1 is *."""
    if k < 0:
        raise ValueError("nimber order must be nonnegative")
    g = _nimber_cache.get(k)
    if g is None:
        opts = tuple(nimber(j) for j in range(k))
        g = make_game(opts, opts)
        _nimber_cache[k] = g
    return g


def neg(g: Game) -> Game:
    """Recursively exchange Left and Right options."""
    r = _neg_cache.get(g.uid)
    if r is None:
        r = make_game(tuple(neg(o) for o in g.right), tuple(neg(o) for o in g.left))
        _neg_cache[g.uid] = r
        _neg_cache[r.uid] = g
    return r


def sum2(g: Game, h: Game) -> Game:
    """Disjunctive sum of two forms."""
    r = _sum_cache.get((g.uid, h.uid))
    if r is None:
        lt = [sum2(o, h) for o in g.left] + [sum2(g, o) for o in h.left]
        rt = [sum2(o, h) for o in g.right] + [sum2(g, o) for o in h.right]
        r = make_game(lt, rt)
        _sum_cache[(g.uid, h.uid)] = r
        _sum_cache[(h.uid, g.uid)] = r
    return r


def sum_all(games: Iterable[Game]) -> Game:
    total = ZERO
    for g in games:
        total = sum2(total, g)
    return total


def _wins_moving(g: Game, p: Player) -> bool:
    """Does p, moving first in g, win under normal play?"""
    key = (g.uid, p)
    r = _wins_cache.get(key)
    if r is None:
        q = p.other()
        r = any(not _wins_moving(o, q) for o in options(g, p))
        _wins_cache[key] = r
    return r


def outcome(g: Game) -> Outcome:
    lwin = _wins_moving(g, Player.LEFT)
    rwin = _wins_moving(g, Player.RIGHT)
    if lwin and rwin:
        return Outcome.N
    if lwin:
        return Outcome.L
    if rwin:
        return Outcome.R
    return Outcome.P


def leq(g: Game, h: Game) -> bool:
    """g <= h in value order: Left weakly prefers h (h - g is >= 0)."""
    return outcome(sum2(h, neg(g))) in (Outcome.P, Outcome.L)


def conway_equiv(g: Game, h: Game) -> bool:
    """Equal values: g - h is a second-winner game."""
    return outcome(sum2(g, neg(h))) is Outcome.P


def is_number(g: Game) -> bool:
    """All options are numbers and every left option is strictly below every right one."""
    key = ("num", g.uid)
    r = _pred_cache.get(key)
    if r is None:
        r = all(is_number(o) for o in g.left + g.right) and all(
            leq(l, rr) and not leq(rr, l) for l in g.left for rr in g.right
        )
        _pred_cache[key] = r
    return r


def is_impartial(g: Game) -> bool:
    key = ("imp", g.uid)
    r = _pred_cache.get(key)
    if r is None:
        r = g.left == g.right and all(is_impartial(o) for o in g.left)
        _pred_cache[key] = r
    return r


def is_dicotic(g: Game) -> bool:
    """Every subposition other than 0 offers a move to both players."""
    key = ("dic", g.uid)
    r = _pred_cache.get(key)
    if r is None:
        if g is ZERO:
            r = True
        else:
            r = bool(g.left) and bool(g.right) and all(
                is_dicotic(o) for o in g.left + g.right
            )
        _pred_cache[key] = r
    return r


def persistent(g: Game, p: Player) -> bool:
    """p keeps a move available after any finite run of consecutive opponent moves.

    For Left: Left has an option in g, and recursively in every position
    reached by Right moves alone.  Form-sensitive; see the examples in the
    test suite for games that are positive in value yet not persistent.
    """
    key = ("per" + p.value, g.uid)
    r = _pred_cache.get(key)
    if r is None:
        mine = options(g, p)
        r = bool(mine) and all(persistent(o, p) for o in options(g, p.other()))
        _pred_cache[key] = r
    return r


def subpositions(g: Game) -> list[Game]:
    """All subpositions of g, including g itself."""
    seen: dict[int, Game] = {}
    stack = [g]
    while stack:
        cur = stack.pop()
        if cur.uid in seen:
            continue
        seen[cur.uid] = cur
        stack.extend(cur.left)
        stack.extend(cur.right)
    return list(seen.values())


def winning_move(g: Game, p: Player) -> Optional[Game]:
    """A p-option keeping the win for p (opponent to move loses), if any."""
    for o in options(g, p):
        if not _wins_moving(o, p.other()):
            return o
    return None


def max_moves_by(g: Game, p: Player) -> int:
    """Largest number of p-moves along any move sequence through g.

    Bounds how often a summand of form g can be played on by p over a whole
    run; used to size reply reserves.
    """
    key = (g.uid, p)
    r = _maxmoves_cache.get(key)
    if r is None:
        best = 0
        for o in options(g, p):
            best = max(best, 1 + max_moves_by(o, p))
        for o in options(g, p.other()):
            best = max(best, max_moves_by(o, p))
        _maxmoves_cache[key] = r = best
    return r


def as_integer(g: Game) -> Optional[int]:
    """The n with g literally equal to the integer form n, if any."""
    if g is ZERO:
        return 0
    if not g.right and len(g.left) == 1:
        n = as_integer(g.left[0])
        if n is not None and n >= 0:
            return n + 1
    if not g.left and len(g.right) == 1:
        n = as_integer(g.right[0])
        if n is not None and n <= 0:
            return n - 1
    return None


def as_nimber(g: Game) -> Optional[int]:
    """The k with g literally equal to the nimber form *k, if any."""
    if g.left != g.right:
        return None
    k = len(g.left)
    return k if g is nimber(k) else None
