"""Play execution: finite steps, certified w-blocks, winners, verification.

A play alternates movers inside a block.  On infinite index sets the engine
watches for shift-periodicity: once the state near the untouched-tail
frontier (window of overlay, least untouched index per phase, mover, last
move, both strategies' shift-normalised fragments) recurs with the frontier
advanced by a multiple of the cycle length, the block is certified as an
w-segment, the limit position is computed in closed form, and the
applicable limit-turn rule picks the next mover.  Certification is verified
empirically by simulating extra periods before being accepted; strategies
unable to normalise under index shifts are rejected for w-block play.

A play ends when the mover has no legal move; the other player wins.
Budgets bound the number of blocks and the uncertified steps per block.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from math import lcm
from typing import Optional, Sequence, Union

from . import ordinals
from .delta import (
    DeltaGame,
    FiniteSpec,
    Move,
    PeriodicSpec,
    PlusGame,
    has_move,
    legal_moves,
    spec_at,
)
from .errors import BudgetExceededError, IllegalMoveError, StrategyUndefinedError
from .games import Player, options
from .runs import (
    CompressedRun,
    FiniteSegment,
    OmegaSegment,
    PlayResult,
    Rule,
    RunView,
    SigContext,
    _settle_omega,
    limit_mover,
    move_regular_flags,
    regular_moves,
)


@dataclass
class PlayBudget:
    blocks: int = 8
    steps: int = 10_000
    window: Optional[int] = None      # signature window; default 2x cycle length
    verify_periods: int = 1


class Seat(Enum):
    FIRST = "first"
    SECOND = "second"


class _WorkPos:
    """Mutable engine position presenting the DeltaGame read interface."""

    __slots__ = ("spec", "overlay")

    def __init__(self, spec, overlay):
        self.spec = spec
        self.overlay = overlay

    def summand_at(self, i: int):
        g = self.overlay.get(i)
        return g if g is not None else spec_at(self.spec, i)

    @property
    def is_finite(self) -> bool:
        return isinstance(self.spec, FiniteSpec)

    def frontier(self) -> int:
        return max(self.overlay) + 1 if self.overlay else 0

    def snapshot(self) -> DeltaGame:
        return DeltaGame(self.spec, dict(self.overlay))

    def clone(self) -> "_WorkPos":
        return _WorkPos(self.spec, dict(self.overlay))


@dataclass(frozen=True)
class NextMove:
    move: Move


@dataclass(frozen=True)
class OmegaCertificate:
    head: tuple[Move, ...]
    cycle_moves: tuple[Move, ...]
    index_shift: int
    shifts: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class BudgetExhausted:
    steps: int


class BlockState:
    """One block of a play: the position, mover, and periodicity history."""

    def __init__(self, origin, rule, first, segments, block_moves, pos, mover,
                 budget: PlayBudget):
        self.origin = origin
        self.rule = rule
        self.first = first
        self.segments = segments
        self.view = RunView(origin, rule, first, segments, block_moves)
        self.moves = block_moves
        self.pos = pos
        self.mover = mover
        self.budget = budget
        self.steps = 0
        self.history: dict = {}
        if isinstance(pos.spec, PeriodicSpec):
            self.cycle_len = len(pos.spec.cycle)
            # short cycles still need room for the whole live zone of a
            # reply pattern, so the window never drops below 16
            self.window = budget.window or max(2 * self.cycle_len, 16)
        else:
            self.cycle_len = 0
            self.window = 0

    # -- signatures ------------------------------------------------------

    def _signature(self, s_left, s_right):
        """The shift-normalised state, plus the per-phase frontiers.

        Every phase cluster is described relative to its own least-untouched
        frontier, so streams sweeping different phases at different speeds
        still produce recurring signatures; live summands the action has
        left behind are pinned by absolute index (a certified repetition
        never moves them, which the ghost replay enforces).
        """
        spec = self.pos.spec
        overlay = self.pos.overlay
        if not overlay:
            return None
        p, c = len(spec.prefix), len(spec.cycle)
        max_touched = [None] * c
        for i in overlay:
            if i >= p:
                ph = (i - p) % c
                if max_touched[ph] is None or i > max_touched[ph]:
                    max_touched[ph] = i
        least_untouched = []
        for ph in range(c):
            i = p + ph
            while i in overlay:
                i += c
            least_untouched.append(i)
        # a phase's stream anchor is where its moves happen, not where its
        # first hole sits: holes can be abandoned forever
        anchors = tuple(
            max_touched[ph] + c if max_touched[ph] is not None
            else least_untouched[ph]
            for ph in range(c)
        )
        ctx = SigContext(p, c, self.window, anchors)
        prefix_state = tuple(self.pos.summand_at(i).uid for i in range(p))
        rel_items = []
        frozen = []
        for i, g in overlay.items():
            if i < p:
                continue
            tag = ctx.rel(i)
            if tag[0] == "abs":
                if g.left or g.right:
                    frozen.append((i, g.uid))
            else:
                rel_items.append((tag, g.uid))
        rel_items.sort()
        frozen.sort()
        lus_sig = tuple(ctx.rel(i) for i in least_untouched)
        order = tuple(sorted(range(c), key=lambda ph: (anchors[ph], ph)))
        gaps = tuple(
            min(anchors[b] - anchors[a], 2 * self.window + 1)
            for a, b in zip(order, order[1:])
        )
        lm = self.view.last_move()
        lsig = None if lm is None else (ctx.rel(lm.index), lm.player.value,
                                        lm.option.uid)
        frag = (
            s_left.signature_fragment(self.pos, self.view, Player.LEFT, ctx),
            s_right.signature_fragment(self.pos, self.view, Player.RIGHT, ctx),
        )
        sig = (prefix_state, tuple(rel_items), tuple(frozen), lus_sig, order,
               gaps, self.mover.value, lsig, frag)
        return sig, anchors

    def _move_shifts(self, cycle, deltas):
        p, c = len(self.pos.spec.prefix), self.cycle_len
        shifts = []
        for m in cycle:
            if m.index < p:
                return None      # prefix moves cannot repeat shifted
            d = deltas[(m.index - p) % c]
            if d <= 0:
                return None      # a stream that does not advance re-touches
            shifts.append(d)
        return shifts

    # -- stepping --------------------------------------------------------

    def _strategy_move(self, pos, view, mover, s_left, s_right) -> Move:
        strat = s_left if mover is Player.LEFT else s_right
        mv = strat.choose(pos, view, mover)
        if mv is None:
            raise StrategyUndefinedError(
                f"strategy {strat.name!r} for {mover} returned no move",
                partial_run=self.view.snapshot_run(),
                player=mover,
            )
        if mv.player is not mover:
            raise IllegalMoveError(f"strategy moved for {mv.player}, not {mover}")
        cur = pos.summand_at(mv.index)
        if mv.option not in options(cur, mover):
            raise IllegalMoveError(
                f"strategy {strat.name!r} chose illegal move {mv} (summand {cur!r})"
            )
        return mv

    def _ghost_verify(self, cycle, shifts, s_left, s_right) -> bool:
        gpos = self.pos.clone()
        gmoves = list(self.moves)
        gview = RunView(self.origin, self.rule, self.first, self.segments, gmoves)
        gmover = self.mover
        for rep in range(1, self.budget.verify_periods + 1):
            for base, shift in zip(cycle, shifts):
                expected = Move(base.index + rep * shift, base.player, base.option)
                if not has_move(gpos, gmover):
                    return False
                try:
                    mv = self._strategy_move(gpos, gview, gmover, s_left, s_right)
                except (StrategyUndefinedError, IllegalMoveError):
                    return False
                if mv != expected:
                    return False
                gpos.overlay[mv.index] = mv.option
                gmoves.append(mv)
                gmover = gmover.other()
        return True

    def step(self, s_left, s_right) -> Union[NextMove, OmegaCertificate, BudgetExhausted]:
        """Advance one move, or certify the block as an w-segment.

        The mover must have a legal move (the caller checks for stuck
        positions, which end the play).
        """
        if self.steps >= self.budget.steps:
            return BudgetExhausted(self.steps)
        mv = self._strategy_move(self.pos, self.view, self.mover, s_left, s_right)
        self.pos.overlay[mv.index] = mv.option
        self.moves.append(mv)
        self.mover = self.mover.other()
        self.steps += 1
        if self.cycle_len:
            result = self._signature(s_left, s_right)
            if result is not None:
                sig, fr = result
                prev = self.history.get(sig)
                if prev is None:
                    self.history[sig] = (len(self.moves), fr)
                else:
                    n0, fr0 = prev
                    deltas = [a - b for a, b in zip(fr, fr0)]
                    if all(d >= 0 for d in deltas) and any(d > 0 for d in deltas):
                        cycle = tuple(self.moves[n0:])
                        shifts = self._move_shifts(cycle, deltas)
                        if shifts is not None and self._ghost_verify(
                                cycle, shifts, s_left, s_right):
                            pattern = lcm(*shifts)
                            uniform = all(s == pattern for s in shifts)
                            return OmegaCertificate(
                                tuple(self.moves[:n0]), cycle, pattern,
                                None if uniform else tuple(shifts),
                            )
                    self.history[sig] = (len(self.moves), fr)
        return NextMove(mv)


def step_or_certify(state: BlockState, strategies, budget=None):
    """One engine step: the next move, an w-certificate, or budget exhaustion."""
    s_left, s_right = strategies
    if budget is not None:
        state.budget = budget
    return state.step(s_left, s_right)


def start_block(origin, rule, first, segments, pos, mover, budget) -> BlockState:
    return BlockState(origin, rule, first, list(segments), [], pos, mover, budget)


def play(origin, rule: Rule, first: Player, left, right,
         budget: Optional[PlayBudget] = None,
         allow_uncertified: bool = False) -> PlayResult:
    """Run a full play; raises on exhausted budgets or broken strategies.

    Strategies without shift-normalisable behaviour are rejected on
    infinite index sets (their blocks could never be certified); pass
    ``allow_uncertified`` to run them anyway for bounded replays.
    """
    budget = budget or PlayBudget()
    if rule is Rule.EXTENDED and not isinstance(origin, PlusGame):
        raise ValueError("extended play needs a PlusGame origin")
    base = origin.base if isinstance(origin, PlusGame) else origin
    s_left = left.fresh(origin, Player.LEFT)
    s_right = right.fresh(origin, Player.RIGHT)
    if not base.is_finite and not allow_uncertified:
        for s in (s_left, s_right):
            if not s.certifiable:
                raise ValueError(
                    f"strategy {s.name!r} has no shift-normalisable state; "
                    "it is only usable on finite index sets"
                )
    segments: list = []
    block_moves: list = []
    pos = _WorkPos(base.spec, dict(base.overlay))
    mover = first
    for _ in range(budget.blocks):
        state = BlockState(origin, rule, first, segments, block_moves, pos,
                           mover, budget)
        certificate = None
        while True:
            if not has_move(pos, state.mover):
                if block_moves:
                    segments.append(FiniteSegment(tuple(block_moves)))
                run = CompressedRun(origin, rule, first, tuple(segments))
                return PlayResult(state.mover.other(), run, run.length())
            outcome = state.step(s_left, s_right)
            if isinstance(outcome, BudgetExhausted):
                if block_moves:
                    segments.append(FiniteSegment(tuple(block_moves)))
                run = CompressedRun(origin, rule, first, tuple(segments))
                raise BudgetExceededError(
                    f"no certificate within {budget.steps} steps", partial_run=run
                )
            if isinstance(outcome, OmegaCertificate):
                certificate = outcome
                break
        seg = OmegaSegment(certificate.head, certificate.cycle_moves,
                           certificate.index_shift, certificate.shifts)
        segments.append(seg)
        block_moves.clear()
        # limit position and the rule's limit mover
        run_so_far = CompressedRun(origin, rule, first, tuple(segments))
        start = _block_start(base, segments[:-1])
        new_spec, new_overlay = _settle_omega(start[0], dict(start[1]), seg)
        pos = _WorkPos(new_spec, new_overlay)
        mover = limit_mover(rule, run_so_far)
    run = CompressedRun(origin, rule, first, tuple(segments))
    raise BudgetExceededError(
        f"play not settled within {budget.blocks} w-blocks", partial_run=run
    )


def _block_start(base: DeltaGame, prior_segments):
    from .runs import apply_segment

    spec, overlay = base.spec, dict(base.overlay)
    for seg in prior_segments:
        spec, overlay = apply_segment(spec, overlay, seg)
    return spec, overlay


# ---------------------------------------------------------------------------
# Trace records (line-delimited JSON friendly dicts)
# ---------------------------------------------------------------------------

def trace_records(result: PlayResult) -> list[dict]:
    """One record per explicit move, per certificate, per block boundary."""
    run = result.run
    base = run.base_origin()
    records: list[dict] = []
    spec, overlay = base.spec, dict(base.overlay)
    starts = run.segment_starts()
    flags = move_regular_flags(run)

    def emit_move(seg_idx, key, m, offset_ordinal):
        nonlocal spec, overlay
        frm = overlay.get(m.index)
        if frm is None:
            frm = spec_at(spec, m.index)
        records.append({
            "type": "move",
            "ordinal": str(offset_ordinal),
            "player": m.player.value,
            "index": m.index,
            "from": repr(frm),
            "to": repr(m.option),
            "regular": flags[(seg_idx, key)],
        })
        overlay[m.index] = m.option

    for s, seg in enumerate(run.segments):
        start = starts[s]
        if isinstance(seg, FiniteSegment):
            for k, m in enumerate(seg.moves):
                emit_move(s, (0, 0, k), m, ordinals.add(start, ordinals.from_int(k)))
            continue
        for k, m in enumerate(seg.head):
            emit_move(s, (0, 0, k), m, ordinals.add(start, ordinals.from_int(k)))
        for k, m in enumerate(seg.cycle_moves):
            off = len(seg.head) + k
            emit_move(s, (1, 0, k), m, ordinals.add(start, ordinals.from_int(off)))
        records.append({
            "type": "omega_certificate",
            "cycle_moves": [
                {"index": m.index, "player": m.player.value, "to": repr(m.option)}
                for m in seg.cycle_moves
            ],
            "index_shift": seg.index_shift,
            "repetitions": "w",
        })
        prefix_run = CompressedRun(run.origin, run.rule, run.first,
                                   run.segments[: s + 1])
        boundary = ordinals.add(start, ordinals.OMEGA)
        record = {
            "type": "limit",
            "limit_ordinal": str(boundary),
            "rule": run.rule.value,
            "mover": limit_mover(run.rule, prefix_run).value,
        }
        if run.rule is Rule.EXTENDED:
            from .runs import _active_classes

            record["active_classes"] = sorted(_active_classes(prefix_run))
        if run.rule is Rule.REGULAR:
            summary = regular_moves(prefix_run)
            record["last_regular"] = (
                None if summary.last_regular is None
                else {"ordinal": str(summary.last_regular[0]),
                      "player": summary.last_regular[1].value}
            )
            record["regular_cofinal"] = summary.cofinal
        records.append(record)
        spec, overlay = _settle_omega(spec, overlay, seg)
    records.append({
        "type": "result",
        "winner": result.winner.value,
        "length": str(result.length),
    })
    return records


# ---------------------------------------------------------------------------
# Bounded adversarial verification
# ---------------------------------------------------------------------------

@dataclass
class VerifyBudget:
    play: PlayBudget = field(default_factory=PlayBudget)
    adversary_head: int = 3
    adversary_period: int = 3
    selectors: int = 3
    include_builtins: bool = True


@dataclass
class VerifyResult:
    status: str                      # "certified" | "refuted" | "unknown"
    counter_run: Optional[CompressedRun] = None
    explored: int = 0
    budget_hits: int = 0
    note: str = ""

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def _primitive(period: tuple[int, ...]) -> bool:
    n = len(period)
    for d in range(1, n):
        if n % d == 0 and period == period[:d] * (n // d):
            return False
    return True


def _selector_programs(head_max: int, period_max: int, selectors: int):
    from .strategies import canonical_program

    for plen in range(1, period_max + 1):
        for period in itertools.product(range(selectors), repeat=plen):
            if not _primitive(period):
                continue
            for hlen in range(head_max + 1):
                for head in itertools.product(range(selectors), repeat=hlen):
                    yield canonical_program(head, period)


def adversary_suite(budgets: VerifyBudget):
    """The adversary space: canonical-move programs plus deterministic built-ins."""
    if budgets.adversary_period <= 0:
        return []
    suite = list(_selector_programs(budgets.adversary_head,
                                    budgets.adversary_period,
                                    budgets.selectors))
    if budgets.include_builtins:
        from .strategies import mirror_same, sweep_zero

        suite.extend([sweep_zero(), mirror_same()])
    return suite


def _seated(sigma, adversary, player: Player):
    if player is Player.LEFT:
        return sigma, adversary
    return adversary, sigma


def verify_winning(sigma, origin, rule: Rule, seat: Seat, player: Player,
                   budgets: Optional[VerifyBudget] = None,
                   collect: Optional[list] = None) -> VerifyResult:
    """Certify sigma against every adversary in the bounded space.

    Certified means sigma won every explored branch; a branch where the
    adversary's own partial function breaks counts as a win for sigma.  Any
    branch exhausting the play budget makes the result Unknown; a lost
    branch (or sigma's own choice function breaking) refutes, returning the
    counter run.
    """
    budgets = budgets or VerifyBudget()
    adversaries = adversary_suite(budgets)
    if not adversaries:
        return VerifyResult("unknown", note="empty adversary space")
    first = player if seat is Seat.FIRST else player.other()
    unknown = 0
    explored = 0
    for adv in adversaries:
        left, right = _seated(sigma, adv, player)
        explored += 1
        try:
            result = play(origin, rule, first, left, right, budgets.play)
        except BudgetExceededError:
            unknown += 1
            continue
        except StrategyUndefinedError as e:
            if getattr(e, "player", None) is not player:
                continue        # the adversary broke; sigma never lost
            return VerifyResult("refuted", counter_run=e.partial_run,
                                explored=explored,
                                note="sigma's choice function was undefined")
        if result.winner is not player:
            return VerifyResult("refuted", counter_run=result.run,
                                explored=explored)
        if collect is not None:
            collect.append((adv.name, result))
    if unknown:
        return VerifyResult("unknown", explored=explored, budget_hits=unknown)
    return VerifyResult("certified", explored=explored)


@dataclass
class UniformReport:
    status: str                      # "uniform" | "violated" | "unknown"
    witness: Optional[CompressedRun] = None
    limits_seen: int = 0


def check_uniform(sigma, origin: PlusGame, player: Player,
                  budgets: Optional[VerifyBudget] = None) -> UniformReport:
    """Is sigma, playing Second, ever the first to move at a limit stage?

    Explores the adversary space under extended play and inspects each
    block boundary of every run (complete or budget-cut).
    """
    budgets = budgets or VerifyBudget()
    if not isinstance(origin, PlusGame):
        raise ValueError("uniformity is a property of extended play on class sums")
    adversaries = adversary_suite(budgets)
    if not adversaries:
        return UniformReport("unknown")
    limits = 0
    for adv in adversaries:
        left, right = _seated(sigma, adv, player)
        try:
            result = play(origin, Rule.EXTENDED, player.other(), left, right,
                          budgets.play)
            run = result.run
        except BudgetExceededError as e:
            run = e.partial_run
        except StrategyUndefinedError as e:
            # sigma breaking right at a limit is usually the violation itself
            run = e.partial_run
            if run is None:
                continue
        for s, seg in enumerate(run.segments):
            if isinstance(seg, OmegaSegment):
                prefix_run = CompressedRun(run.origin, run.rule, run.first,
                                           run.segments[: s + 1])
                limits += 1
                if limit_mover(Rule.EXTENDED, prefix_run) is player:
                    return UniformReport("violated", witness=run,
                                         limits_seen=limits)
    if limits == 0:
        return UniformReport("unknown")
    return UniformReport("uniform", limits_seen=limits)
