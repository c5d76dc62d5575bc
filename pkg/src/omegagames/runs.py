"""Transfinite runs in compressed form.

A run is stored as a list of segments: explicit finite move lists, and
certified w-blocks.  An OmegaSegment(head, cycle_moves, index_shift)
denotes the w-sequence obtained by playing head and then repeating
cycle_moves forever with every index advanced by index_shift per
repetition; the certificate guarantees the repetition stays legal and
touches each summand finitely often, so the limit position is well defined
(every summand is eventually constant).

This module also implements the three limit-turn conventions:

* standard  - the play's First player moves at every limit;
* extended  - the first player ever to move on a class that receives moves
              cofinally below the limit moves (requires a class partition);
* regular   - exchange tails are discounted: a move is regular when it lies
              outside the maximal even-length alternating suffix of its own
              summand's induced run, and the mover at a limit is determined
              by the last regular move (First if there is none).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Optional, Union

from . import ordinals
from .delta import (
    DeltaGame,
    FiniteSpec,
    Move,
    PeriodicSpec,
    PlusGame,
    spec_at,
)
from .errors import IllegalMoveError, OmegagamesError
from .games import Game, Player, options
from .ordinals import Ordinal


class Rule(Enum):
    STANDARD = "standard"
    EXTENDED = "extended"
    REGULAR = "regular"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class FiniteSegment:
    moves: tuple[Move, ...]


@dataclass(frozen=True)
class OmegaSegment:
    head: tuple[Move, ...]
    cycle_moves: tuple[Move, ...]
    index_shift: int
    shifts: Optional[tuple[int, ...]] = None
    # shifts[k] is the per-repetition index advance of cycle_moves[k];
    # omitted, every move advances by index_shift.  index_shift is the
    # period of the limit pattern (the lcm of the per-move shifts), so
    # mixed-rate interleavings (streams sweeping different phases at
    # different speeds) stay representable.

    def __post_init__(self):
        if self.index_shift <= 0:
            raise ValueError("index_shift must be positive")
        if not self.cycle_moves:
            raise ValueError("cycle_moves must be nonempty")
        if self.shifts is not None:
            if len(self.shifts) != len(self.cycle_moves):
                raise ValueError("one shift per cycle move")
            for s in self.shifts:
                if s <= 0 or self.index_shift % s != 0:
                    raise ValueError("shifts must divide the pattern period")

    def shift_of(self, k: int) -> int:
        return self.shifts[k] if self.shifts is not None else self.index_shift


Segment = Union[FiniteSegment, OmegaSegment]


@dataclass(frozen=True)
class CompressedRun:
    origin: Union[DeltaGame, PlusGame]
    rule: Rule
    first: Player
    segments: tuple[Segment, ...] = ()

    def base_origin(self) -> DeltaGame:
        return self.origin.base if isinstance(self.origin, PlusGame) else self.origin

    def classes(self) -> Optional[PlusGame]:
        return self.origin if isinstance(self.origin, PlusGame) else None

    def length(self) -> Ordinal:
        total = ordinals.ZERO
        for seg in self.segments:
            if isinstance(seg, FiniteSegment):
                total = ordinals.add(total, ordinals.from_int(len(seg.moves)))
            else:
                total = ordinals.add(total, ordinals.OMEGA)
        return total

    def segment_starts(self) -> list[Ordinal]:
        starts = []
        total = ordinals.ZERO
        for seg in self.segments:
            starts.append(total)
            if isinstance(seg, FiniteSegment):
                total = ordinals.add(total, ordinals.from_int(len(seg.moves)))
            else:
                total = ordinals.add(total, ordinals.OMEGA)
        return starts


@dataclass(frozen=True)
class PlayResult:
    winner: Player
    run: CompressedRun
    length: Ordinal


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------

class RunInvariantError(OmegagamesError):
    pass


def _apply_finite(spec, overlay: dict, moves) -> None:
    for m in moves:
        cur = overlay.get(m.index)
        if cur is None:
            cur = spec_at(spec, m.index)
        if m.option not in options(cur, m.player):
            raise IllegalMoveError(
                f"move {m} illegal: summand at {m.index} is {cur!r}"
            )
        overlay[m.index] = m.option


def _last_touch(seg: OmegaSegment, i: int):
    """The temporally last move of seg on index i, or None."""
    last = None
    for m in seg.head:
        if m.index == i:
            last = m
    best = None
    for k, m in enumerate(seg.cycle_moves):
        s = seg.shift_of(k)
        if i >= m.index and (i - m.index) % s == 0:
            r = (i - m.index) // s
            if best is None or (r, k) > best[0]:
                best = ((r, k), m)
    if best is not None:
        return best[1]
    return last


def _settle_omega(spec: PeriodicSpec, overlay: dict, seg: OmegaSegment):
    """Limit position after an OmegaSegment: each summand's final value.

    The result is rebuilt as a fresh periodic spec (empty overlay): beyond a
    bound every index's fate repeats with period index_shift.
    """
    p0, c0 = len(spec.prefix), len(spec.cycle)
    shift = seg.index_shift
    for k in range(len(seg.cycle_moves)):
        if seg.shift_of(k) % c0 != 0:
            raise RunInvariantError("shifts must be multiples of the cycle length")
    bound = p0
    for m in seg.head:
        bound = max(bound, m.index + 1)
    for m in seg.cycle_moves:
        bound = max(bound, m.index + 1)
    if overlay:
        bound = max(bound, max(overlay) + 1)
    extra = bound - p0
    p_new = p0 + ((extra + shift - 1) // shift) * shift if extra > 0 else p0

    def final_at(i: int) -> Game:
        m = _last_touch(seg, i)
        if m is not None:
            return m.option
        g = overlay.get(i)
        return g if g is not None else spec_at(spec, i)

    finals = [final_at(i) for i in range(p_new + 2 * shift)]
    for j in range(shift):
        if finals[p_new + j] is not finals[p_new + shift + j]:
            raise RunInvariantError("limit position is not periodic past the prefix")
    return PeriodicSpec(tuple(finals[:p_new]), tuple(finals[p_new:p_new + shift])), {}


def apply_segment(spec, overlay: dict, seg: Segment):
    """Fold one segment into (spec, overlay); returns the new pair."""
    if isinstance(seg, FiniteSegment):
        overlay = dict(overlay)
        _apply_finite(spec, overlay, seg.moves)
        return spec, overlay
    if not isinstance(spec, PeriodicSpec):
        raise RunInvariantError("w-segments only occur on infinite index sets")
    return _settle_omega(spec, dict(overlay), seg)


def resultant(run: CompressedRun) -> DeltaGame:
    """Fold all segments over the origin.

    Finite segments replay their moves; a certified w-segment contributes
    the per-summand eventually-constant values.
    """
    base = run.base_origin()
    spec, overlay = base.spec, dict(base.overlay)
    for seg in run.segments:
        spec, overlay = apply_segment(spec, overlay, seg)
    return DeltaGame(spec, overlay)


def positions(run: CompressedRun, steps: int):
    """The first positions of the run: origin, then one per explicit move.

    Inside an w-segment the cycle repetitions are expanded on demand, so
    any finite prefix of the run can be displayed.
    """
    base = run.base_origin()
    spec, overlay = base.spec, dict(base.overlay)
    out = [DeltaGame(spec, overlay)]
    done = 0
    for seg in run.segments:
        if done >= steps:
            break
        if isinstance(seg, FiniteSegment):
            source = iter(seg.moves)
        else:
            source = _expand_omega(seg)
        for m in source:
            if done >= steps:
                break
            _apply_finite(spec, overlay, (m,))
            out.append(DeltaGame(spec, dict(overlay)))
            done += 1
        if isinstance(seg, OmegaSegment):
            break
    return out


def _expand_omega(seg: OmegaSegment):
    yield from seg.head
    r = 0
    while True:
        for k, m in enumerate(seg.cycle_moves):
            yield Move(m.index + r * seg.shift_of(k), m.player, m.option)
        r += 1


# ---------------------------------------------------------------------------
# maf: the maximal even-length strictly alternating suffix
# ---------------------------------------------------------------------------

def _as_player(x) -> Player:
    if isinstance(x, Player):
        return x
    return Player.LEFT if str(x).upper() == "L" else Player.RIGHT


def maf(moves) -> int:
    """Length of the longest even-length strictly-alternating final segment.

    maf("LRLRLLRRLRLRL") == 6 and maf("LRLRLRLLRLRL") == 4.  On a fully
    alternating odd-length sequence such as "LRLRLRLRLRL" this yields 10;
    see the replay bundle notes for the recorded discrepancy on that case.
    """
    seq = [_as_player(m) for m in moves]
    n = len(seq)
    alt = 0
    for i in range(n - 1, -1, -1):
        if i == n - 1 or seq[i] != seq[i + 1]:
            alt += 1
        else:
            break
    return alt if alt % 2 == 0 else alt - 1


# ---------------------------------------------------------------------------
# Induced runs and regularity
# ---------------------------------------------------------------------------

def _segment_hits(seg: Segment, i: int):
    """Keys and moves of seg's moves on index i, in temporal order.

    Keys are (0, 0, k) for explicit/head moves and (1, r, k) for the k-th
    cycle move of repetition r; lexicographic order is temporal order.
    """
    out = []
    if isinstance(seg, FiniteSegment):
        for k, m in enumerate(seg.moves):
            if m.index == i:
                out.append(((0, 0, k), m))
        return out
    for k, m in enumerate(seg.head):
        if m.index == i:
            out.append(((0, 0, k), m))
    for k, m in enumerate(seg.cycle_moves):
        s = seg.shift_of(k)
        if i >= m.index and (i - m.index) % s == 0:
            r = (i - m.index) // s
            out.append(((1, r, k), m))
    out.sort()
    return out


def _induced(segments, i: int):
    """The summand's induced run across all segments: [(seg_idx, key, move)]."""
    out = []
    for s, seg in enumerate(segments):
        for key, m in _segment_hits(seg, i):
            out.append((s, key, m))
    return out


def _is_regular(segments, seg_idx: int, key, move: Move) -> bool:
    induced = _induced(segments, move.index)
    players = [m.player for (_, _, m) in induced]
    cut = len(players) - maf(players)
    pos = next(
        n for n, (s, k, _) in enumerate(induced) if s == seg_idx and k == key
    )
    return pos < cut


def _explicit_bound(run: CompressedRun) -> int:
    """Index bound below which the run's non-pattern structure lives."""
    base = run.base_origin()
    bound = len(base.spec.prefix) if isinstance(base.spec, PeriodicSpec) else 0
    if base.overlay:
        bound = max(bound, max(base.overlay) + 1)
    for seg in run.segments:
        if isinstance(seg, FiniteSegment):
            for m in seg.moves:
                bound = max(bound, m.index + 1)
        else:
            for m in seg.head:
                bound = max(bound, m.index + 1)
            for m in seg.cycle_moves:
                bound = max(bound, m.index + 1)
    return bound


def _stable_band(run: CompressedRun, seg_idx: int) -> tuple[int, int]:
    """(first repetition, period) after which seg_idx's repetitions repeat.

    A repetition's touched summands have induced runs drawn from the
    shift-periodic patterns of all w-segments once their indices clear every
    explicitly named index; interference between different shifts is
    periodic with the lcm of the shift ratios.
    """
    seg = run.segments[seg_idx]
    bound = _explicit_bound(run)
    r0 = 0
    for k, m in enumerate(seg.cycle_moves):
        s = seg.shift_of(k)
        if m.index < bound:
            r0 = max(r0, -(-(bound - m.index) // s))
    all_shifts = []
    for other in run.segments:
        if isinstance(other, OmegaSegment):
            all_shifts.extend(other.shift_of(k) for k in range(len(other.cycle_moves)))
    period = 1
    for k in range(len(seg.cycle_moves)):
        s = seg.shift_of(k)
        for s2 in all_shifts:
            period = period * (s2 // gcd(s, s2)) // gcd(period, s2 // gcd(s, s2))
    # spread of the cycle pattern, so same-segment cross hits settle too
    min_shift = min(seg.shift_of(k) for k in range(len(seg.cycle_moves)))
    spread = (
        max(m.index for m in seg.cycle_moves) - min(m.index for m in seg.cycle_moves)
    ) // min_shift + 1
    return r0 + spread, period


def _repetition_flags(run: CompressedRun, seg_idx: int, r: int) -> tuple[bool, ...]:
    seg = run.segments[seg_idx]
    flags = []
    for k, m in enumerate(seg.cycle_moves):
        shifted = Move(m.index + r * seg.shift_of(k), m.player, m.option)
        flags.append(_is_regular(run.segments, seg_idx, (1, r, k), shifted))
    return tuple(flags)


@dataclass(frozen=True)
class RegularSummary:
    last_regular: Optional[tuple[Ordinal, Player]]
    cofinal: bool


def _move_ordinal(run: CompressedRun, seg_idx: int, key) -> Ordinal:
    start = run.segment_starts()[seg_idx]
    seg = run.segments[seg_idx]
    stage, r, k = key
    if isinstance(seg, FiniteSegment) or stage == 0:
        off = k
    else:
        off = len(seg.head) + r * len(seg.cycle_moves) + k
    return ordinals.add(start, ordinals.from_int(off))


def regular_moves(run: CompressedRun) -> RegularSummary:
    """Locate the regular moves: cofinal in the run, or the last one.

    Regularity is evaluated against the induced runs as they stand at the
    current end of the run, so earlier moves can be reclassified by later
    exchanges.
    """
    segments = run.segments
    for s in range(len(segments) - 1, -1, -1):
        seg = segments[s]
        if isinstance(seg, OmegaSegment):
            r0, period = _stable_band(run, s)
            band = [_repetition_flags(run, s, r) for r in range(r0, r0 + 2 * period)]
            for j in range(period):
                if band[j] != band[j + period]:
                    raise RunInvariantError("regularity pattern failed to stabilise")
            if any(any(flags) for flags in band[:period]):
                if s == len(segments) - 1:
                    return RegularSummary(None, True)
                # w-many regular moves inside an interior block, none after:
                # the regular subsequence has no last element
                return RegularSummary(None, False)
            # nothing regular in the stable band: check the finitely many
            # earlier repetitions, then the head
            for r in range(r0 - 1, -1, -1):
                flags = _repetition_flags(run, s, r)
                for k in range(len(flags) - 1, -1, -1):
                    if flags[k]:
                        m = seg.cycle_moves[k]
                        ordpos = _move_ordinal(run, s, (1, r, k))
                        return RegularSummary((ordpos, m.player), False)
            for k in range(len(seg.head) - 1, -1, -1):
                if _is_regular(segments, s, (0, 0, k), seg.head[k]):
                    ordpos = _move_ordinal(run, s, (0, 0, k))
                    return RegularSummary((ordpos, seg.head[k].player), False)
        else:
            for k in range(len(seg.moves) - 1, -1, -1):
                if _is_regular(segments, s, (0, 0, k), seg.moves[k]):
                    ordpos = _move_ordinal(run, s, (0, 0, k))
                    return RegularSummary((ordpos, seg.moves[k].player), False)
    return RegularSummary(None, False)


def move_regular_flags(run: CompressedRun) -> dict[tuple, bool]:
    """Regularity of every explicit move, keyed by (seg_idx, key)."""
    flags = {}
    for s, seg in enumerate(run.segments):
        if isinstance(seg, FiniteSegment):
            for k, m in enumerate(seg.moves):
                flags[(s, (0, 0, k))] = _is_regular(run.segments, s, (0, 0, k), m)
        else:
            for k, m in enumerate(seg.head):
                flags[(s, (0, 0, k))] = _is_regular(run.segments, s, (0, 0, k), m)
            for k, m in enumerate(seg.cycle_moves):
                flags[(s, (1, 0, k))] = _is_regular(run.segments, s, (1, 0, k), m)
    return flags


# ---------------------------------------------------------------------------
# Limit movers
# ---------------------------------------------------------------------------

def _active_classes(run: CompressedRun) -> set[int]:
    plus = run.classes()
    seg = run.segments[-1]
    r0, _ = _stable_band(run, len(run.segments) - 1)
    b = max(len(plus.layout.infinite_order), 1)
    period = 1
    for k in range(len(seg.cycle_moves)):
        q = b // gcd(seg.shift_of(k), b) if b > 1 else 1
        period = period * q // gcd(period, q)

    def classes_at(r):
        return {
            plus.class_of(m.index + r * seg.shift_of(k))
            for k, m in enumerate(seg.cycle_moves)
        }

    active = set()
    for r in range(r0, r0 + period):
        active |= classes_at(r)
    check = set()
    for r in range(r0 + period, r0 + 2 * period):
        check |= classes_at(r)
    if check != active:
        raise RunInvariantError("class activity failed to stabilise")
    return active


def _earliest_mover_on(run: CompressedRun, classes: set[int]) -> Player:
    plus = run.classes()
    for s, seg in enumerate(run.segments):
        if isinstance(seg, FiniteSegment):
            for m in seg.moves:
                if plus.class_of(m.index) in classes:
                    return m.player
        else:
            for m in seg.head:
                if plus.class_of(m.index) in classes:
                    return m.player
            r0, period = _stable_band(run, s)
            b = max(len(plus.layout.infinite_order), 1)
            for r in range(r0 + period + b + 1):
                for k, m in enumerate(seg.cycle_moves):
                    if plus.class_of(m.index + r * seg.shift_of(k)) in classes:
                        return m.player
    raise RunInvariantError("an active class received no move")


def limit_mover(rule: Rule, run: CompressedRun) -> Player:
    """Who moves at the limit the run has just reached.

    The run's final segment must be an w-segment (the position is at a
    limit ordinal).
    """
    if not run.segments or not isinstance(run.segments[-1], OmegaSegment):
        raise ValueError("limit_mover needs a run ending in an w-segment")
    if rule is Rule.STANDARD:
        return run.first
    if rule is Rule.EXTENDED:
        if run.classes() is None:
            raise ValueError("extended play needs a class partition")
        return _earliest_mover_on(run, _active_classes(run))
    summary = regular_moves(run)
    if summary.cofinal or summary.last_regular is None:
        return run.first
    return summary.last_regular[1].other()


@dataclass(frozen=True)
class SigContext:
    """Shift-normalisation context for periodicity signatures.

    ``rel`` maps an absolute index to either a prefix tag, an offset from
    its own phase's least-untouched frontier (when within the window), or
    an absolute pin for indices the action has left behind.
    """

    prefix_len: int
    cycle_len: int
    window: int
    frontiers: tuple[int, ...]

    def rel(self, i: int):
        if i < self.prefix_len:
            return ("pre", i, 0)
        ph = (i - self.prefix_len) % self.cycle_len
        off = self.frontiers[ph] - i
        if abs(off) <= self.window:
            return ("ph", ph, off)
        return ("abs", i, 0)


# ---------------------------------------------------------------------------
# History view handed to strategies
# ---------------------------------------------------------------------------

class RunView:
    """Read access to the run so far: completed segments plus the current block.

    Strategies derive all of their state from this view and the position, so
    replaying a play is exact and the engine can normalise everything under
    index shifts when certifying w-blocks.
    """

    def __init__(self, origin, rule, first, segments: list, block_moves: list):
        self.origin = origin
        self.rule = rule
        self.first = first
        self._segments = segments
        self._block = block_moves

    @property
    def origin_base(self) -> DeltaGame:
        return self.origin.base if isinstance(self.origin, PlusGame) else self.origin

    @property
    def classes(self) -> Optional[PlusGame]:
        return self.origin if isinstance(self.origin, PlusGame) else None

    def last_move(self) -> Optional[Move]:
        return self._block[-1] if self._block else None

    def last_move_by(self, player: Player) -> Optional[Move]:
        for m in reversed(self._block):
            if m.player is player:
                return m
        return None

    def block_move_count(self) -> int:
        return len(self._block)

    def block_count_by(self, player: Player) -> int:
        return sum(1 for m in self._block if m.player is player)

    def has_move_by(self, player: Player, index: int) -> bool:
        for m in self._block:
            if m.index == index and m.player is player:
                return True
        for seg in self._segments:
            for _, m in _segment_hits(seg, index):
                if m.player is player:
                    return True
        return False

    def moves_by_in_window(self, player: Player, lo: int, hi: int) -> frozenset[int]:
        touched = set()
        for i in range(lo, hi):
            if self.has_move_by(player, i):
                touched.add(i)
        return frozenset(touched)

    def snapshot_run(self) -> CompressedRun:
        segs = list(self._segments)
        if self._block:
            segs.append(FiniteSegment(tuple(self._block)))
        return CompressedRun(self.origin, self.rule, self.first, tuple(segs))


# ---------------------------------------------------------------------------
# Validation for hand-built runs (replay bundles)
# ---------------------------------------------------------------------------

def validate_run(run: CompressedRun, check_alternation: bool = True) -> None:
    """Check legality and, unless disabled, alternation and limit movers.

    With ``check_alternation=False`` only move legality is verified: the
    sequence is a run, though not necessarily an alternating one (used for
    runs with deleted exchanges).
    """
    base = run.base_origin()
    spec, overlay = base.spec, dict(base.overlay)
    expected = run.first
    for s, seg in enumerate(run.segments):
        moves = seg.moves if isinstance(seg, FiniteSegment) else seg.head
        for m in moves:
            if check_alternation and m.player is not expected:
                raise RunInvariantError(f"move {m} out of turn (expected {expected})")
            _apply_finite(spec, overlay, (m,))
            expected = expected.other()
        if isinstance(seg, OmegaSegment):
            if not isinstance(spec, PeriodicSpec):
                raise RunInvariantError("w-segment on a finite index set")
            for k in range(len(seg.cycle_moves)):
                if seg.shift_of(k) % len(spec.cycle) != 0:
                    raise RunInvariantError(
                        "shifts must be multiples of the cycle length"
                    )
            r0, period = _stable_band(run, s)
            probe = dict(overlay)
            exp = expected
            for r in range(r0 + period + 2):
                for k, m in enumerate(seg.cycle_moves):
                    shifted = Move(m.index + r * seg.shift_of(k), m.player, m.option)
                    if check_alternation and shifted.player is not exp:
                        raise RunInvariantError(f"move {shifted} out of turn")
                    _apply_finite(spec, probe, (shifted,))
                    exp = exp.other()
            spec, overlay = _settle_omega(spec, overlay, seg)
            if check_alternation:
                prefix_run = CompressedRun(
                    run.origin, run.rule, run.first, run.segments[: s + 1]
                )
                expected = limit_mover(run.rule, prefix_run)
