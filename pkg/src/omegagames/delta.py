"""Indexed infinite sums of games over N (or a finite index set).

A DeltaGame is a specification of one summand per index - either an explicit
finite list or an ultimately periodic prefix+cycle - plus an overlay, a
finite map recording the indices whose summand has been moved away from the
spec value.  Moves only ever descend inside a summand's option tree, so the
overlay is exactly the set of touched indices and the limit "eventually
constant" value of an infinite run is readable off a finite structure.

Values are immutable: apply_move returns a new DeltaGame.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import IllegalMoveError
from .games import Game, Player, options, sort_key

EMPTY_OVERLAY: dict = {}


@dataclass(frozen=True)
class FiniteSpec:
    games: tuple[Game, ...]


@dataclass(frozen=True)
class PeriodicSpec:
    prefix: tuple[Game, ...]
    cycle: tuple[Game, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("cycle must be nonempty")


Spec = Union[FiniteSpec, PeriodicSpec]


def spec_at(spec: Spec, i: int) -> Game:
    if i < 0:
        raise IndexError(f"index {i} out of range")
    if isinstance(spec, FiniteSpec):
        if i >= len(spec.games):
            raise IndexError(f"index {i} out of range for {len(spec.games)} summands")
        return spec.games[i]
    p = len(spec.prefix)
    if i < p:
        return spec.prefix[i]
    return spec.cycle[(i - p) % len(spec.cycle)]


def spec_size(spec: Spec) -> Optional[int]:
    """Number of indices, or None for the infinite index set."""
    return len(spec.games) if isinstance(spec, FiniteSpec) else None


def distinct_spec_games(spec: Spec) -> tuple[Game, ...]:
    if isinstance(spec, FiniteSpec):
        pool: Iterable[Game] = spec.games
    else:
        pool = spec.prefix + spec.cycle
    seen = {}
    for g in pool:
        seen.setdefault(g.uid, g)
    return tuple(seen.values())


@dataclass(frozen=True)
class Move:
    index: int
    player: Player
    option: Game


class DeltaGame:
    """A spec plus a finite overlay of already-moved summands."""

    __slots__ = ("spec", "overlay")

    def __init__(self, spec: Spec, overlay: Optional[Mapping[int, Game]] = None):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "overlay", dict(overlay) if overlay else {})

    def __setattr__(self, *a):
        raise AttributeError("DeltaGame is immutable")

    def summand_at(self, i: int) -> Game:
        g = self.overlay.get(i)
        return g if g is not None else spec_at(self.spec, i)

    @property
    def is_finite(self) -> bool:
        return isinstance(self.spec, FiniteSpec)

    def size(self) -> Optional[int]:
        return spec_size(self.spec)

    def frontier(self) -> int:
        """Least index with every index at or beyond it untouched."""
        return max(self.overlay) + 1 if self.overlay else 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DeltaGame)
            and self.spec == other.spec
            and self.overlay == other.overlay
        )

    def __hash__(self) -> int:
        return hash((self.spec, frozenset(self.overlay.items())))

    def __repr__(self) -> str:
        return f"DeltaGame(spec={self.spec!r}, overlay={self.overlay!r})"


def finite_delta(games: Sequence[Game]) -> DeltaGame:
    return DeltaGame(FiniteSpec(tuple(games)))


def periodic_delta(prefix: Sequence[Game], cycle: Sequence[Game]) -> DeltaGame:
    return DeltaGame(PeriodicSpec(tuple(prefix), tuple(cycle)))


def summand_at(d: DeltaGame, i: int) -> Game:
    return d.summand_at(i)


def _least_untouched(spec: PeriodicSpec, overlay: Mapping[int, Game], phase: int) -> int:
    p, c = len(spec.prefix), len(spec.cycle)
    i = p + phase
    while i in overlay:
        i += c
    return i


def _iter_legal(spec: Spec, overlay: Mapping[int, Game], p: Player,
                canonical: bool, bound: Optional[int]):
    if isinstance(spec, FiniteSpec):
        n = len(spec.games)
        hi = n if bound is None else min(bound, n)
        for i in range(hi):
            g = overlay.get(i)
            if g is None:
                g = spec.games[i]
            for o in options(g, p):
                yield Move(i, p, o)
        return
    if canonical:
        seen = set()
        for i in sorted(overlay):
            for o in options(overlay[i], p):
                yield Move(i, p, o)
            seen.add(i)
        pre = len(spec.prefix)
        for i in range(pre):
            if i not in overlay:
                for o in options(spec.prefix[i], p):
                    yield Move(i, p, o)
        for phase in range(len(spec.cycle)):
            i = _least_untouched(spec, overlay, phase)
            for o in options(spec.cycle[phase], p):
                yield Move(i, p, o)
        return
    if bound is None:
        raise ValueError("non-canonical enumeration needs an index bound")
    for i in range(bound):
        g = overlay.get(i)
        if g is None:
            g = spec_at(spec, i)
        for o in options(g, p):
            yield Move(i, p, o)
    for i in sorted(overlay):
        if i >= bound:
            for o in options(overlay[i], p):
                yield Move(i, p, o)


def legal_moves(d, p: Player, canonical: bool = True, bound: Optional[int] = None) -> list[Move]:
    """Moves for p, one representative per interchangeable family.

    Canonical enumeration keeps one move per (overlay index, option), plus,
    for each cycle phase, the moves at the least untouched index of that
    phase; untouched same-phase indices are interchangeable by an
    automorphism fixing the overlay.  Empty iff p is blocked.
    """
    moves = list(_iter_legal(d.spec, d.overlay, p, canonical, bound))
    moves.sort(key=lambda m: (m.index, sort_key(m.option)))
    return moves


def has_move(d, p: Player) -> bool:
    """Whether p has any legal move at all (overlay entries or spec games)."""
    for g in d.overlay.values():
        if options(g, p):
            return True
    spec = d.spec
    if isinstance(spec, FiniteSpec):
        return any(
            options(g, p) for i, g in enumerate(spec.games) if i not in d.overlay
        )
    for i, g in enumerate(spec.prefix):
        if i not in d.overlay and options(g, p):
            return True
    # every cycle phase always has untouched indices left
    return any(options(g, p) for g in spec.cycle)


def apply_move(d: DeltaGame, m: Move) -> DeltaGame:
    cur = d.summand_at(m.index)
    if m.option not in options(cur, m.player):
        raise IllegalMoveError(
            f"{m.player} has no option {m.option!r} at index {m.index} (summand {cur!r})"
        )
    overlay = dict(d.overlay)
    overlay[m.index] = m.option
    return DeltaGame(d.spec, overlay)


# ---------------------------------------------------------------------------
# Sums of sums, and the class partition carried by extended play
# ---------------------------------------------------------------------------

class _Layout:
    """Bijections between part-local and global indices for a merged sum."""

    def __init__(self, placements, infinite_order, prefix_total):
        self.placements = placements          # per part: ("range", start, size|None) or ("split", pstart, plen)
        self.infinite_order = infinite_order  # part indices owning the interleaved tail
        self.prefix_total = prefix_total

    def to_global(self, part: int, local: int) -> int:
        kind = self.placements[part]
        if kind[0] == "range":
            return kind[1] + local
        _, pstart, plen = kind
        if local < plen:
            return pstart + local
        b = len(self.infinite_order)
        return self.prefix_total + (local - plen) * b + self.infinite_order.index(part)

    def affine_params(self, part: int):
        """(affine_start, block, stride) of the part's index enumeration,
        or None for a finite part."""
        kind = self.placements[part]
        if kind[0] == "range":
            return None if kind[2] is not None else (0, 1, 1)
        return (kind[2], 1, len(self.infinite_order))

    def part_size(self, part: int):
        kind = self.placements[part]
        return kind[2] if kind[0] == "range" else None

    def part_of(self, i: int) -> tuple[int, int]:
        if i >= self.prefix_total and self.infinite_order:
            t = i - self.prefix_total
            b = len(self.infinite_order)
            part = self.infinite_order[t % b]
            plen = self.placements[part][2]
            return part, plen + t // b
        for part, kind in enumerate(self.placements):
            if kind[0] == "range":
                start, size = kind[1], kind[2]
                if start <= i and (size is None or i < start + size):
                    return part, i - start
            else:
                _, pstart, plen = kind
                if pstart <= i < pstart + plen:
                    return part, i - pstart
        raise IndexError(f"index {i} outside the merged sum")


class PlusGame:
    """A DeltaGame plus a partition of its indices into finitely many classes.

    Built from a list of parts; class j is exactly part j's indices.  Runs
    and moves ignore the partition; only the extended limit-turn rule
    consults it.
    """

    __slots__ = ("base", "parts", "layout")

    def __init__(self, base: DeltaGame, parts: tuple[DeltaGame, ...], layout: _Layout):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "layout", layout)

    def __setattr__(self, *a):
        raise AttributeError("PlusGame is immutable")

    @property
    def n_classes(self) -> int:
        return len(self.parts)

    def class_of(self, i: int) -> int:
        return self.layout.part_of(i)[0]

    def to_global(self, part: int, local: int) -> int:
        return self.layout.to_global(part, local)

    def __repr__(self) -> str:
        return f"PlusGame({self.n_classes} classes, base={self.base!r})"


def _merge(parts: Sequence[DeltaGame]) -> tuple[DeltaGame, _Layout]:
    if not parts:
        return finite_delta(()), _Layout([], [], 0)
    placements: list = [None] * len(parts)
    finite_idx = [j for j, d in enumerate(parts) if d.is_finite]
    infinite_idx = [j for j, d in enumerate(parts) if not d.is_finite]

    prefix_games: list[Game] = []
    for j in finite_idx:
        spec: FiniteSpec = parts[j].spec
        placements[j] = ("range", len(prefix_games), len(spec.games))
        prefix_games.extend(spec.games)

    if not infinite_idx:
        layout = _Layout(placements, [], len(prefix_games))
        overlay = _remap_overlays(parts, layout)
        return DeltaGame(FiniteSpec(tuple(prefix_games)), overlay), layout

    if len(infinite_idx) == 1:
        j = infinite_idx[0]
        spec: PeriodicSpec = parts[j].spec
        placements[j] = ("range", len(prefix_games), None)
        prefix_games.extend(spec.prefix)
        layout = _Layout(placements, [], len(prefix_games))
        overlay = _remap_overlays(parts, layout)
        return DeltaGame(PeriodicSpec(tuple(prefix_games), spec.cycle), overlay), layout

    # several infinite parts: pack every prefix, then interleave the cycles
    for j in infinite_idx:
        spec = parts[j].spec
        placements[j] = ("split", len(prefix_games), len(spec.prefix))
        prefix_games.extend(spec.prefix)
    prefix_total = len(prefix_games)
    b = len(infinite_idx)
    period = b * lcm(*(len(parts[j].spec.cycle) for j in infinite_idx))
    cycle = []
    for s in range(period):
        part = infinite_idx[s % b]
        c = parts[part].spec.cycle
        cycle.append(c[(s // b) % len(c)])
    layout = _Layout(placements, infinite_idx, prefix_total)
    overlay = _remap_overlays(parts, layout)
    return DeltaGame(PeriodicSpec(tuple(prefix_games), tuple(cycle)), overlay), layout


def _remap_overlays(parts, layout) -> dict[int, Game]:
    overlay = {}
    for j, d in enumerate(parts):
        for i, g in d.overlay.items():
            overlay[layout.to_global(j, i)] = g
    return overlay


def _flatten(parts: Sequence) -> list[DeltaGame]:
    flat: list[DeltaGame] = []
    for p in parts:
        if isinstance(p, PlusGame):
            flat.extend(_extract_parts(p))
        else:
            flat.append(p)
    return flat


def _extract_parts(plus: PlusGame) -> list[DeltaGame]:
    out = []
    for j, part in enumerate(plus.parts):
        overlay = {}
        for i, g in plus.base.overlay.items():
            pj, local = plus.layout.part_of(i)
            if pj == j:
                overlay[local] = g
        out.append(DeltaGame(part.spec, overlay))
    return out


def phi_sum(parts: Sequence) -> DeltaGame:
    """Disjoint union of the parts' index sets, relabeled into N."""
    merged, _ = _merge(_flatten(parts))
    return merged


def oplus(parts: Sequence) -> PlusGame:
    """Like phi_sum but remembering one partition class per part.

    PlusGame arguments are flattened: their own classes become classes of
    the result rather than being fused into one.
    """
    flat = _flatten(parts)
    merged, layout = _merge(flat)
    pristine = tuple(DeltaGame(d.spec) for d in flat)
    return PlusGame(merged, pristine, layout)


# ---------------------------------------------------------------------------
# Isomorphism of indexed families, ignoring the index order
# ---------------------------------------------------------------------------

_OMEGA_COUNT = "w"


def _summand_counts(d: DeltaGame) -> dict[int, object]:
    counts: dict[int, object] = {}
    spec = d.spec
    if isinstance(spec, FiniteSpec):
        for i in range(len(spec.games)):
            g = d.summand_at(i)
            counts[g.uid] = counts.get(g.uid, 0) + 1
        return counts
    for g in spec.cycle:
        counts[g.uid] = _OMEGA_COUNT
    touched = set(d.overlay) | set(range(len(spec.prefix)))
    for i in touched:
        g = d.summand_at(i)
        if counts.get(g.uid) != _OMEGA_COUNT:
            counts[g.uid] = counts.get(g.uid, 0) + 1
    return counts


def pattern_equivalent(a: DeltaGame, b: DeltaGame) -> bool:
    """Same multiset of summands, each counted as a natural number or w."""
    if a.is_finite != b.is_finite:
        raise ValueError("both families must be finite, or both infinite")
    return _summand_counts(a) == _summand_counts(b)
