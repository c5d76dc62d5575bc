"""Deterministic partial choice functions over indexed sums.

A Strategy owns no mutable per-play state: everything it needs is derived
from the position and the run view, so replays are exact and the engine can
normalise a strategy's relevant history under index shifts when certifying
w-blocks (the ``signature_fragment`` hook).  Strategies whose behaviour
cannot be normalised (scripts, RNG, simulation wrappers) are flagged
``certifiable = False`` and are rejected for w-block play.

All built-ins break ties by least index and by the canonical option order.
"""

from __future__ import annotations

import random as _random
from typing import Callable, Optional, Sequence

from .delta import (
    DeltaGame,
    FiniteSpec,
    Move,
    PeriodicSpec,
    PlusGame,
    legal_moves,
    spec_at,
)
from .games import (
    ZERO,
    Game,
    Player,
    is_number,
    leq,
    max_moves_by,
    options,
    outcome,
    Outcome,
    persistent,
    sum_all,
    winning_move,
)


class Strategy:
    name = "strategy"
    certifiable = True

    def fresh(self, origin, player: Player) -> "Strategy":
        """Per-play instance, after validating origin-dependent preconditions."""
        return self

    def choose(self, pos, view, player: Player) -> Optional[Move]:
        raise NotImplementedError

    def signature_fragment(self, pos, view, player: Player, ctx):
        return ()

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


def _first_option(g: Game, p: Player) -> Optional[Game]:
    opts = options(g, p)
    return opts[0] if opts else None


# ---------------------------------------------------------------------------
# Baselines
# ---------------------------------------------------------------------------

class FirstOption(Strategy):
    name = "first_option"

    def choose(self, pos, view, player):
        moves = legal_moves(pos, player, canonical=True)
        return moves[0] if moves else None


def first_option() -> Strategy:
    return FirstOption()


class SweepZero(Strategy):
    """Move on the least-index nonzero summand, taking the first option.

    The canonical Second-player answer on impartial or dicotic sums: every
    summand is turned to 0 within w steps, so First faces the limit stage
    with nothing left.
    """

    name = "sweep_zero"

    def _least_nonzero(self, pos) -> Optional[int]:
        best = None
        for i, g in pos.overlay.items():
            if g is not ZERO and (best is None or i < best):
                best = i
        spec = pos.spec
        if isinstance(spec, FiniteSpec):
            for i, g in enumerate(spec.games):
                if best is not None and i >= best:
                    break
                if i not in pos.overlay and g is not ZERO:
                    best = i
                    break
            return best
        p, c = len(spec.prefix), len(spec.cycle)
        for i, g in enumerate(spec.prefix):
            if best is not None and i >= best:
                return best
            if i not in pos.overlay and g is not ZERO:
                return i
        for ph in range(c):
            if spec.cycle[ph] is ZERO:
                continue
            i = p + ph
            while i in pos.overlay:
                i += c
            if best is None or i < best:
                best = i
        return best

    def choose(self, pos, view, player):
        i = self._least_nonzero(pos)
        if i is None:
            return None
        opt = _first_option(pos.summand_at(i), player)
        return Move(i, player, opt) if opt is not None else None


def sweep_zero() -> Strategy:
    return SweepZero()


class MirrorSame(Strategy):
    """Reply on the summand the opponent has just played, first option."""

    name = "mirror_same"

    def choose(self, pos, view, player):
        last = view.last_move()
        if last is None or last.player is player:
            return None
        opt = _first_option(pos.summand_at(last.index), player)
        return Move(last.index, player, opt) if opt is not None else None


def mirror_same() -> Strategy:
    return MirrorSame()


class WithOpening(Strategy):
    """Defer to main; when there is nothing to reply to, open with the first
    canonical move (used to play reply-shaped strategies from the First seat)."""

    def __init__(self, main: Strategy):
        self.main = main
        self.name = f"open+{main.name}"
        self.certifiable = main.certifiable

    def fresh(self, origin, player):
        inner = self.main.fresh(origin, player)
        return WithOpening(inner) if inner is not self.main else self

    def choose(self, pos, view, player):
        last = view.last_move()
        if last is None or last.player is player:
            moves = legal_moves(pos, player, canonical=True)
            return moves[0] if moves else None
        return self.main.choose(pos, view, player)

    def signature_fragment(self, pos, view, player, ctx):
        return self.main.signature_fragment(pos, view, player, ctx)


def with_opening(main: Strategy) -> Strategy:
    return WithOpening(main)


def open_then_mirror() -> Strategy:
    return with_opening(mirror_same())


class Scripted(Strategy):
    """Replay an explicit move list; illegal entries fail at their turn."""

    name = "scripted"
    certifiable = False

    def __init__(self, moves: Sequence[Move]):
        self.moves = tuple(moves)

    def choose(self, pos, view, player):
        n = view.block_count_by(player)
        if n >= len(self.moves):
            return None
        return self.moves[n]


def scripted(moves: Sequence[Move]) -> Strategy:
    return Scripted(moves)


class RandomChoice(Strategy):
    """Uniform choice among canonical moves; reproducible from the seed."""

    certifiable = False

    def __init__(self, seed: int):
        self.seed = seed
        self.name = f"random:{seed}"
        self._rng = _random.Random(seed)

    def fresh(self, origin, player):
        return RandomChoice(self.seed)

    def choose(self, pos, view, player):
        moves = legal_moves(pos, player, canonical=True)
        if not moves:
            return None
        return moves[self._rng.randrange(len(moves))]


def random_strategy(seed: int) -> Strategy:
    return RandomChoice(seed)


class SolverOptimal(Strategy):
    """Classical play on finite families: a winning move when one exists."""

    name = "solver_optimal"

    def fresh(self, origin, player):
        base = origin.base if isinstance(origin, PlusGame) else origin
        if not base.is_finite:
            raise ValueError("solver_optimal needs a finite index set")
        return self

    def choose(self, pos, view, player):
        n = len(pos.spec.games)
        moves = legal_moves(pos, player, canonical=False, bound=n)
        if not moves:
            return None
        mine = player.value
        for m in moves:
            total = sum_all(
                m.option if i == m.index else pos.summand_at(i) for i in range(n)
            )
            if outcome(total).value in ("P", mine):
                return m
        return moves[0]


def solver_optimal() -> Strategy:
    return SolverOptimal()


class CanonicalProgram(Strategy):
    """An eventually periodic schedule of picks from the canonical move list.

    Selector k at a turn means the k-th entry of the current canonical list
    (mod its length); the schedule follows the owner's move count within the
    current block.  These programs are the bounded adversary space of the
    verifier: they can reorder and interleave, but never skip over the least
    untouched index of a phase.
    """

    def __init__(self, head: tuple[int, ...], period: tuple[int, ...]):
        self.head = tuple(head)
        self.period = tuple(period)
        self.name = f"prog:{','.join(map(str, head)) or '-'}/{','.join(map(str, period))}"

    def _selector(self, n: int) -> int:
        if n < len(self.head):
            return self.head[n]
        return self.period[(n - len(self.head)) % len(self.period)]

    def choose(self, pos, view, player):
        moves = legal_moves(pos, player, canonical=True)
        if not moves:
            return None
        return moves[self._selector(view.block_count_by(player)) % len(moves)]

    def signature_fragment(self, pos, view, player, ctx):
        n = view.block_count_by(player)
        if n < len(self.head):
            return ("head", n)
        return ("cycle", (n - len(self.head)) % len(self.period))


def canonical_program(head, period) -> Strategy:
    return CanonicalProgram(tuple(head), tuple(period))


# ---------------------------------------------------------------------------
# Reply reserves: the pairing strategy
# ---------------------------------------------------------------------------

class Allocator:
    """Maps an opponent move index to its reserved reply indices."""

    def reserve(self, index: int) -> Sequence[int]:
        raise NotImplementedError

    def validate(self, origin_spec, player: Player) -> None:
        pass


class ExplicitAllocator(Allocator):
    """Finite table of reserves; rejected if the sets overlap."""

    def __init__(self, table: dict[int, Sequence[int]]):
        seen: set[int] = set()
        for idx, reserve in table.items():
            s = set(reserve)
            if s & seen:
                raise ValueError(f"reserved sets overlap at {sorted(s & seen)}")
            seen |= s
        self.table = {k: tuple(v) for k, v in table.items()}

    def reserve(self, index: int) -> Sequence[int]:
        return self.table.get(index, ())


class ProgressionAllocator(Allocator):
    """Disjoint blocks of the persistent pool, one per opponent-movable index.

    The pool is every index whose spec summand stays movable for the owner
    after any consecutive opponent moves; reserve blocks advance in lockstep
    with the opponent-movable indices, so replies track the frontier and
    certified runs shift uniformly.  Block size is the largest number of
    moves the opponent can ever spend on a single spec summand, which bounds
    how often one reserve can be queried.
    """

    def __init__(self, spec: PeriodicSpec, player: Player,
                 pool_phase: Optional[int] = None, pool_step: Optional[int] = None):
        self.spec = spec
        self.player = player
        p, c = len(spec.prefix), len(spec.cycle)
        opp = player.other()
        if pool_phase is not None:
            step = pool_step or c
            pool_prefix: list[int] = []
            pool_phases = [ph for ph in range(c) if (ph - pool_phase) % step == 0]
            for ph in pool_phases:
                if not persistent(spec.cycle[ph], player):
                    raise ValueError(
                        f"pool phase {ph} is not {player}-persistent"
                    )
        else:
            pool_prefix = [
                i for i, g in enumerate(spec.prefix) if persistent(g, player)
            ]
            pool_phases = [
                ph for ph, g in enumerate(spec.cycle) if persistent(g, player)
            ]
        if not pool_phases:
            raise ValueError(
                f"no {player}-persistent summand recurs in the cycle; "
                "reply reserves would be finite"
            )
        self.pool_prefix = pool_prefix
        self.pool_phases = pool_phases
        self.query_prefix = [
            i for i, g in enumerate(spec.prefix) if max_moves_by(g, opp) > 0
        ]
        self.query_phases = [
            ph for ph, g in enumerate(spec.cycle) if max_moves_by(g, opp) > 0
        ]
        games = set(spec.prefix) | set(spec.cycle)
        self.block = max([max_moves_by(g, opp) for g in games] + [1])

    def _pool_index(self, rank: int) -> int:
        if rank < len(self.pool_prefix):
            return self.pool_prefix[rank]
        rank -= len(self.pool_prefix)
        k, j = divmod(rank, len(self.pool_phases))
        return len(self.spec.prefix) + k * len(self.spec.cycle) + self.pool_phases[j]

    def _query_rank(self, index: int) -> int:
        p, c = len(self.spec.prefix), len(self.spec.cycle)
        if index < p:
            return self.query_prefix.index(index)
        ph = (index - p) % c
        k = (index - p) // c
        return (
            len(self.query_prefix)
            + k * len(self.query_phases)
            + self.query_phases.index(ph)
        )

    def reserve(self, index: int) -> Sequence[int]:
        r = self._query_rank(index)
        return [self._pool_index(r * self.block + j) for j in range(self.block)]


class Pairing(Strategy):
    """Answer every opponent move on summand l inside l's reserved indices.

    Each reply takes the first reserved index the owner has not already
    used; the summand there carries at most the opponent's moves, and is
    persistent, so the owner always has an option on it.
    """

    def __init__(self, player: Player, allocator: Optional[Allocator] = None,
                 pool_phase: Optional[int] = None, pool_step: Optional[int] = None):
        self.player = player
        self.allocator = allocator
        self.pool_phase = pool_phase
        self.pool_step = pool_step
        self.name = f"pairing:{player.value}"

    def fresh(self, origin, player):
        if player is not self.player:
            raise ValueError(f"{self.name} was built for {self.player}")
        if self.allocator is not None:
            return self
        base = origin.base if isinstance(origin, PlusGame) else origin
        if not isinstance(base.spec, PeriodicSpec):
            raise ValueError("pairing needs an ultimately periodic family")
        alloc = ProgressionAllocator(base.spec, player,
                                     self.pool_phase, self.pool_step)
        bound = Pairing(player, alloc)
        bound.name = self.name
        return bound

    def choose(self, pos, view, player):
        last = view.last_move()
        if last is None or last.player is player:
            return None
        for e in self.allocator.reserve(last.index):
            if not view.has_move_by(player, e):
                opt = _first_option(pos.summand_at(e), player)
                if opt is None:
                    return None
                return Move(e, player, opt)
        return None

    def signature_fragment(self, pos, view, player, ctx):
        # reserves the action has left behind cannot be queried inside a
        # certified repetition (any move down there would fail the shifted
        # ghost replay), so only window-relative usage matters
        used = []
        for i in pos.overlay:
            if view.has_move_by(player, i):
                tag = ctx.rel(i)
                if tag[0] != "abs":
                    used.append(tag)
        return tuple(sorted(used))


def pairing(player: Player, allocator: Optional[Allocator] = None, **kw) -> Strategy:
    return Pairing(player, allocator, kw.get("pool_phase"), kw.get("pool_step"))


class ExhaustPositive(Strategy):
    """Wrap main; chase a mirroring opponent down the same number summand.

    When the opponent answers on the number the owner just played, continue
    on that number until the opponent has no move there; otherwise defer.
    Numbers only shrink for the opponent, so the chase always terminates.
    """

    def __init__(self, main: Strategy, player: Optional[Player] = None):
        self.main = main
        self.player = player
        self.name = f"exhaust+{main.name}"
        self.certifiable = main.certifiable
        self._spec = None

    def fresh(self, origin, player):
        base = origin.base if isinstance(origin, PlusGame) else origin
        if not isinstance(base.spec, PeriodicSpec):
            raise ValueError("exhaust_positive needs an ultimately periodic family")
        good = [g for g in base.spec.cycle if self._is_good_number(g, player)]
        if not good:
            side = "positive" if player is Player.LEFT else "negative"
            raise ValueError(f"no strictly {side} number recurs in the cycle")
        inner = self.main.fresh(origin, player)
        bound = ExhaustPositive(inner, player)
        bound._spec = base.spec
        return bound

    @staticmethod
    def _is_good_number(g: Game, player: Player) -> bool:
        if not is_number(g):
            return False
        if player is Player.LEFT:
            return leq(ZERO, g) and not leq(g, ZERO)
        return leq(g, ZERO) and not leq(ZERO, g)

    def choose(self, pos, view, player):
        last = view.last_move()
        mine = view.last_move_by(player)
        if (
            last is not None
            and mine is not None
            and last.player is not player
            and last.index == mine.index
            and self._is_good_number(spec_at(self._spec, last.index), player)
        ):
            opt = _first_option(pos.summand_at(last.index), player)
            if opt is not None:
                return Move(last.index, player, opt)
        return self.main.choose(pos, view, player)

    def signature_fragment(self, pos, view, player, ctx):
        mine = view.last_move_by(player)
        rel = ctx.rel(mine.index) if mine is not None else None
        return (rel, self.main.signature_fragment(pos, view, player, ctx))


def exhaust_positive(main: Strategy) -> Strategy:
    return ExhaustPositive(main)


# ---------------------------------------------------------------------------
# Quotients by second-winner summands
# ---------------------------------------------------------------------------

def _restricted_spec(cur_spec, to_global, affine_start: int, block: int, stride: int):
    """Restrict the current spec to a sub-family enumerated by ``to_global``.

    The enumeration must be eventually affine: for local l >= affine_start,
    to_global(l + block) = to_global(l) + stride.  Limit positions rebuild
    the ambient spec, so component views recompute their local spec from
    whatever the position currently carries.
    """
    from math import gcd as _gcd

    if isinstance(cur_spec, FiniteSpec):
        games = []
        l = 0
        n = len(cur_spec.games)
        while True:
            g = to_global(l)
            if g >= n:
                break
            games.append(cur_spec.games[g])
            l += 1
        return FiniteSpec(tuple(games))
    p, c = len(cur_spec.prefix), len(cur_spec.cycle)
    l0 = affine_start
    while to_global(l0) < p:
        l0 += block
    local_cycle = block * (c // _gcd(stride, c))
    prefix = tuple(spec_at(cur_spec, to_global(l)) for l in range(l0))
    cycle = tuple(spec_at(cur_spec, to_global(l0 + j)) for j in range(local_cycle))
    for j in range(local_cycle):
        if spec_at(cur_spec, to_global(l0 + local_cycle + j)) is not cycle[j]:
            raise ValueError("sub-family is not periodic in the current spec")
    return PeriodicSpec(prefix, cycle)


class IndexSelector:
    """A set of indices given explicitly and/or as cycle phases of the origin."""

    def __init__(self, indices=(), phases=()):
        self.indices = frozenset(indices)
        self.phases = frozenset(phases)

    def contains(self, i: int, prefix_len: int, cycle_len: int) -> bool:
        if i in self.indices:
            return True
        return i >= prefix_len and (i - prefix_len) % cycle_len in self.phases


def _local_ctx(sub: DeltaGame, window: int):
    from .runs import SigContext

    spec = sub.spec
    if isinstance(spec, FiniteSpec):
        return SigContext(len(spec.games), 1, window, (len(spec.games),))
    p, c = len(spec.prefix), len(spec.cycle)
    fr = []
    for ph in range(c):
        i = p + ph
        while i in sub.overlay:
            i += c
        fr.append(i)
    return SigContext(p, c, window, tuple(fr))


class _SubView:
    """A run view translated into a component's local indices."""

    def __init__(self, inner, to_global: Callable[[int], int],
                 to_local: Callable[[int], Optional[int]]):
        self._inner = inner
        self._to_global = to_global
        self._to_local = to_local

    def last_move(self):
        for m in reversed(self._inner._block):
            local = self._to_local(m.index)
            if local is not None:
                return Move(local, m.player, m.option)
        return None

    def last_move_by(self, player):
        for m in reversed(self._inner._block):
            if m.player is player:
                local = self._to_local(m.index)
                if local is not None:
                    return Move(local, m.player, m.option)
        return None

    def block_count_by(self, player):
        return sum(
            1 for m in self._inner._block
            if m.player is player and self._to_local(m.index) is not None
        )

    def has_move_by(self, player, index):
        return self._inner.has_move_by(player, self._to_global(index))

    def moves_by_in_window(self, player, lo, hi):
        touched = set()
        for i in range(lo, hi):
            if self._inner.has_move_by(player, self._to_global(i)):
                touched.add(i)
        return frozenset(touched)


class LiftOverZeros(Strategy):
    """Play main on the complement; answer moves on J locally.

    Every J summand is a second-winner game, so the solver-derived reply
    keeps it a previous-player win; main never sees those exchanges.
    """

    def __init__(self, main: Strategy, zeros: IndexSelector,
                 responder: Optional[Callable[[Game, Player], Optional[Game]]] = None):
        self.main = main
        self.zeros = zeros
        self.responder = responder or winning_move
        self.name = f"lift+{main.name}"
        self.certifiable = main.certifiable
        self._dims = None
        self._comp = None

    def fresh(self, origin, player):
        base = origin.base if isinstance(origin, PlusGame) else origin
        spec = base.spec
        if isinstance(spec, PeriodicSpec):
            p, c = len(spec.prefix), len(spec.cycle)
        else:
            p, c = len(spec.games), 1
        for i, g in enumerate(spec.prefix if isinstance(spec, PeriodicSpec) else spec.games):
            if self.zeros.contains(i, p, c) and outcome(g) is not Outcome.P:
                raise ValueError(f"summand at {i} is not a second-winner game")
        if isinstance(spec, PeriodicSpec):
            for ph in self.zeros.phases:
                if outcome(spec.cycle[ph]) is not Outcome.P:
                    raise ValueError(f"cycle phase {ph} is not a second-winner game")
        comp = _complement_map(spec, self.zeros)
        inner = self.main.fresh(_origin_for(comp, base), player)
        bound = LiftOverZeros(inner, self.zeros, self.responder)
        bound._dims = (p, c)
        bound._comp = comp
        bound._keep_pre = len(comp[0].games) if isinstance(comp[0], FiniteSpec) \
            else len(comp[0].prefix)
        bound._q = 1 if isinstance(comp[0], FiniteSpec) else len(comp[0].cycle)
        bound._spec_cache = (None, None)
        return bound

    def _local_pos(self, pos):
        _, to_global, to_local = self._comp
        if self._spec_cache[0] != id(pos.spec):
            if isinstance(pos.spec, FiniteSpec):
                sub_spec = _restricted_spec(pos.spec, to_global, 0, 1, 1)
            else:
                sub_spec = _restricted_spec(
                    pos.spec, to_global, self._keep_pre, self._q, self._dims[1]
                )
            self._spec_cache = (id(pos.spec), sub_spec)
        overlay = {}
        for i, g in pos.overlay.items():
            local = to_local(i)
            if local is not None:
                overlay[local] = g
        return DeltaGame(self._spec_cache[1], overlay)

    def choose(self, pos, view, player):
        p, c = self._dims
        last = view.last_move()
        if last is not None and last.player is not player and \
                self.zeros.contains(last.index, p, c):
            g = pos.summand_at(last.index)
            reply = self.responder(g, player)
            return Move(last.index, player, reply) if reply is not None else None
        spec, to_global, to_local = self._comp
        sub = self._local_pos(pos)
        subview = _SubView(view, to_global, to_local)
        mv = self.main.choose(sub, subview, player)
        if mv is None:
            return None
        return Move(to_global(mv.index), player, mv.option)

    def signature_fragment(self, pos, view, player, ctx):
        _, to_global, to_local = self._comp
        sub = self._local_pos(pos)
        subview = _SubView(view, to_global, to_local)
        lctx = _local_ctx(sub, ctx.window)
        return ("lift", self.main.signature_fragment(sub, subview, player, lctx))


def _origin_for(comp, base) -> DeltaGame:
    return DeltaGame(comp[0])


def _complement_map(spec, zeros: IndexSelector):
    """(complement spec, local->global, global->local or None)."""
    if isinstance(spec, FiniteSpec):
        keep = [i for i in range(len(spec.games))
                if not zeros.contains(i, len(spec.games), 1)]
        sub = FiniteSpec(tuple(spec.games[i] for i in keep))
        back = {g: l for l, g in enumerate(keep)}
        return sub, (lambda l: keep[l]), (lambda g: back.get(g))
    p, c = len(spec.prefix), len(spec.cycle)
    keep_pre = [i for i in range(p) if not zeros.contains(i, p, c)]
    keep_ph = [ph for ph in range(c) if ph not in zeros.phases]
    if not keep_ph:
        raise ValueError("the complement must keep at least one cycle phase")
    sub = PeriodicSpec(
        tuple(spec.prefix[i] for i in keep_pre),
        tuple(spec.cycle[ph] for ph in keep_ph),
    )
    back_pre = {g: l for l, g in enumerate(keep_pre)}
    q = len(keep_ph)

    def to_global(l: int) -> int:
        if l < len(keep_pre):
            return keep_pre[l]
        t = l - len(keep_pre)
        k, j = divmod(t, q)
        return p + k * c + keep_ph[j]

    def to_local(g: int) -> Optional[int]:
        if g < p:
            return back_pre.get(g)
        ph = (g - p) % c
        if ph not in keep_ph:
            return None
        k = (g - p) // c
        return len(keep_pre) + k * q + keep_ph.index(ph)

    return sub, to_global, to_local


class ProjectOverZeros(Strategy):
    """Drive a full-family strategy from the complement family.

    Moves main would spend on J are played out against a simulated
    second-winner responder; only complement moves surface.  Keeps
    simulated state, so it is not certifiable for w-blocks.
    """

    certifiable = False

    def __init__(self, main: Strategy, full_origin: DeltaGame, zeros: IndexSelector,
                 responder=None):
        self.main = main
        self.full_origin = full_origin
        self.zeros = zeros
        self.responder = responder or winning_move
        self.name = f"project+{main.name}"

    def fresh(self, origin, player):
        inst = ProjectOverZeros(self.main.fresh(self.full_origin, player),
                                self.full_origin, self.zeros, self.responder)
        inst._sim: dict[int, Game] = {}
        inst._full_moves: list[Move] = []
        inst._consumed = 0
        return inst

    def choose(self, pos, view, player):
        spec = self.full_origin.spec
        if isinstance(spec, PeriodicSpec):
            p, c = len(spec.prefix), len(spec.cycle)
        else:
            p, c = len(spec.games), 1
        _, to_global, _ = _complement_map(spec, self.zeros)
        block = view._block
        for m in block[self._consumed:]:
            self._full_moves.append(Move(to_global(m.index), m.player, m.option))
        self._consumed = len(block)

        full_overlay = dict(self._sim)
        for i, g in pos.overlay.items():
            full_overlay[to_global(i)] = g
        fview = _ListView(self._full_moves)
        for _ in range(10_000):
            fpos = DeltaGame(spec, full_overlay)
            mv = self.main.choose(fpos, fview, player)
            if mv is None:
                return None
            if not self.zeros.contains(mv.index, p, c):
                # surfaces as a complement move
                _, _, to_local = _complement_map(spec, self.zeros)
                self._full_moves.append(mv)
                self._consumed += 1  # our own surfaced move will come back
                return Move(to_local(mv.index), player, mv.option)
            self._sim[mv.index] = mv.option
            full_overlay[mv.index] = mv.option
            self._full_moves.append(mv)
            reply = self.responder(mv.option, player.other())
            if reply is None:
                raise ValueError("simulated responder has no reply on a J summand")
            self._sim[mv.index] = reply
            full_overlay[mv.index] = reply
            self._full_moves.append(Move(mv.index, player.other(), reply))
        return None


class _ListView:
    def __init__(self, moves: list):
        self._block = moves

    def last_move(self):
        return self._block[-1] if self._block else None

    def last_move_by(self, player):
        for m in reversed(self._block):
            if m.player is player:
                return m
        return None

    def block_count_by(self, player):
        return sum(1 for m in self._block if m.player is player)

    def has_move_by(self, player, index):
        return any(m.player is player and m.index == index for m in self._block)

    def moves_by_in_window(self, player, lo, hi):
        return frozenset(
            m.index for m in self._block
            if m.player is player and lo <= m.index < hi
        )


def lift_over_zeros(main: Strategy, zero_indices: IndexSelector,
                    responders=None) -> Strategy:
    return LiftOverZeros(main, zero_indices, responders)


def project_certified_run(run, zeros: IndexSelector):
    """Delete every move on the zero set and relabel onto the complement.

    A lifted strategy's winning run, with the local exchanges removed, is a
    legal (not necessarily alternating) winning run of the inner strategy;
    this builds that run so it can be replayed and checked.
    """
    from math import lcm as _lcm

    from .runs import CompressedRun, FiniteSegment, OmegaSegment

    base = run.base_origin()
    spec = base.spec
    if isinstance(spec, FiniteSpec):
        p, c = len(spec.games), 1
        q = None
    else:
        p, c = len(spec.prefix), len(spec.cycle)
        q = c - len([ph for ph in range(c) if ph in zeros.phases])
    comp_spec, to_global, to_local = _complement_map(spec, zeros)

    def drop(moves):
        return tuple(
            Move(to_local(m.index), m.player, m.option)
            for m in moves if not zeros.contains(m.index, p, c)
        )

    segs = []
    for seg in run.segments:
        if isinstance(seg, FiniteSegment):
            segs.append(FiniteSegment(drop(seg.moves)))
            continue
        head = drop(seg.head)
        kept = [
            (Move(to_local(m.index), m.player, m.option),
             seg.shift_of(k) // c * q)
            for k, m in enumerate(seg.cycle_moves)
            if not zeros.contains(m.index, p, c)
        ]
        if not kept:
            segs.append(FiniteSegment(head))
            continue
        shifts = tuple(s for _, s in kept)
        pattern = _lcm(*shifts)
        segs.append(OmegaSegment(
            head, tuple(m for m, _ in kept), pattern,
            None if all(s == pattern for s in shifts) else shifts,
        ))
    origin = DeltaGame(comp_spec)
    return CompressedRun(origin, run.rule, run.first, tuple(segs))


def project_over_zeros(main: Strategy, full_origin: DeltaGame,
                       zero_indices: IndexSelector, responders=None) -> Strategy:
    return ProjectOverZeros(main, full_origin, zero_indices, responders)


# ---------------------------------------------------------------------------
# Composition across class partitions
# ---------------------------------------------------------------------------

class UniformCompose(Strategy):
    """Answer each adversary move inside the class it fell in.

    Both component strategies are expected to be uniform Seconds on their
    components: then the adversary stays first at every limit of the sum.
    """

    def __init__(self, components: Sequence[Strategy]):
        self.components = list(components)
        self.name = "compose(" + ",".join(s.name for s in self.components) + ")"
        self.certifiable = all(s.certifiable for s in self.components)
        self._plus = None
        self._spec_cache: dict = {}

    def fresh(self, origin, player):
        if not isinstance(origin, PlusGame):
            raise ValueError("uniform_compose needs a class partition")
        if origin.n_classes != len(self.components):
            raise ValueError(
                f"{origin.n_classes} classes but {len(self.components)} strategies"
            )
        bound = UniformCompose([
            s.fresh(part, player) for s, part in zip(self.components, origin.parts)
        ])
        bound._plus = origin
        bound._spec_cache = {}
        return bound

    def _component_ctx(self, c: int, pos, view):
        plus = self._plus

        def to_global(local: int) -> int:
            return plus.to_global(c, local)

        def to_local(g: int) -> Optional[int]:
            pc, local = plus.layout.part_of(g)
            return local if pc == c else None

        # the ambient spec is rebuilt at limits, so restrict it afresh
        cache_key = id(pos.spec)
        if self._spec_cache.get(c, (None,))[0] != cache_key:
            params = plus.layout.affine_params(c)
            if params is None:
                size = plus.layout.part_size(c)
                sub_spec = FiniteSpec(tuple(
                    spec_at(pos.spec, to_global(l)) for l in range(size)
                ))
            else:
                start, block, stride = params
                sub_spec = _restricted_spec(pos.spec, to_global, start, block, stride)
            self._spec_cache[c] = (cache_key, sub_spec)
        sub_spec = self._spec_cache[c][1]
        overlay = {}
        for i, g in pos.overlay.items():
            local = to_local(i)
            if local is not None:
                overlay[local] = g
        sub = DeltaGame(sub_spec, overlay)
        return sub, _SubView(view, to_global, to_local), to_global

    def choose(self, pos, view, player):
        last = view.last_move()
        if last is None or last.player is player:
            return None
        c = self._plus.class_of(last.index)
        sub, subview, to_global = self._component_ctx(c, pos, view)
        mv = self.components[c].choose(sub, subview, player)
        if mv is None:
            return None
        return Move(to_global(mv.index), player, mv.option)

    def signature_fragment(self, pos, view, player, ctx):
        frags = []
        for c, s in enumerate(self.components):
            sub, subview, _ = self._component_ctx(c, pos, view)
            lctx = _local_ctx(sub, ctx.window)
            frags.append(s.signature_fragment(sub, subview, player, lctx))
        return tuple(frags)


def uniform_compose(s1: Strategy, s2: Strategy, *rest: Strategy) -> Strategy:
    return UniformCompose([s1, s2, *rest])


# ---------------------------------------------------------------------------
# CLI-facing registry
# ---------------------------------------------------------------------------

def strategy_from_spec(text: str, player: Player) -> Strategy:
    """Build a strategy from a command-line spec like "pairing:pool_phase=0"."""
    name, _, params_text = text.partition(":")
    params: dict[str, int] = {}
    if params_text:
        for item in params_text.split(","):
            k, _, v = item.partition("=")
            if not v:
                raise ValueError(f"malformed strategy parameter {item!r}")
            params[k.strip()] = int(v)
    if name in ("first_option", "first"):
        return first_option()
    if name in ("sweep_zero", "sweep"):
        return sweep_zero()
    if name == "mirror":
        return mirror_same()
    if name == "open_mirror":
        return open_then_mirror()
    if name == "pairing":
        kw = {}
        if "phase" in params:
            kw["pool_phase"] = params["phase"]
        if "step" in params:
            kw["pool_step"] = params["step"]
        return pairing(player, **kw)
    if name == "exhaust_pairing":
        kw = {}
        if "phase" in params:
            kw["pool_phase"] = params["phase"]
        if "step" in params:
            kw["pool_step"] = params["step"]
        return exhaust_positive(pairing(player, **kw))
    if name == "solver_optimal":
        return solver_optimal()
    if name == "random":
        return random_strategy(params.get("seed", 0))
    raise ValueError(f"unknown strategy {name!r}")
