"""Probing outcome invariance under value-equivalent summand swaps.

The open question: does replacing every summand of a family by a
value-equivalent game preserve the winner under regular play?  This harness
samples equivalent pairs, builds matched periodic families, runs the
deterministic strategy suite on both sides and tabulates agreement.  A
disagreement is only ever *flagged*: nothing here is a refutation until an
adversarial verification confirms it.
"""

from __future__ import annotations

import random
from typing import Optional

from .delta import periodic_delta
from .engine import PlayBudget, play
from .errors import BudgetExceededError, StrategyUndefinedError
from .games import Game, Player, ZERO, STAR, ONE, NEG_ONE, UP, conway_equiv, make_game
from .notation import format as fmt, delta_to_expr
from .runs import Rule
from .strategies import first_option, open_then_mirror, sweep_zero


def random_game(rng: random.Random, depth: int) -> Game:
    if depth <= 0 or rng.random() < 0.3:
        return rng.choice((ZERO, ONE, NEG_ONE, STAR))
    n_left = rng.randint(0, 2)
    n_right = rng.randint(0, 2)
    return make_game(
        tuple(random_game(rng, depth - 1) for _ in range(n_left)),
        tuple(random_game(rng, depth - 1) for _ in range(n_right)),
    )


def sample_equivalent_pairs(rng: random.Random, birthday_bound: int, count: int):
    """Pairs of distinct forms with equal value, sampled from random forms."""
    pool: list[Game] = [ZERO, ONE, NEG_ONE, STAR, UP]
    for _ in range(60 * count):
        pool.append(random_game(rng, birthday_bound))
    pairs = []
    seen = set()
    for g in pool:
        if len(pairs) >= count:
            break
        for h in pool:
            if g is h:
                continue
            key = (min(g.uid, h.uid), max(g.uid, h.uid))
            if key in seen:
                continue
            seen.add(key)
            if conway_equiv(g, h):
                pairs.append((g, h))
                break
    return pairs[:count]


def _suite():
    return (
        ("first_option", first_option),
        ("sweep_zero", sweep_zero),
        ("open_mirror", open_then_mirror),
    )


def _winner(origin, first: Player, left, right, budget) -> Optional[str]:
    try:
        return play(origin, Rule.REGULAR, first, left(), right(), budget).winner.value
    except (BudgetExceededError, StrategyUndefinedError, ValueError):
        return None


def run_experiment(samples: int, birthday_bound: int, cycle_len: int,
                   seed: int, budget: PlayBudget) -> dict:
    rng = random.Random(seed)
    pairs = sample_equivalent_pairs(rng, birthday_bound, max(samples, 0))
    rows = []
    total = {"agreements": 0, "disagreements": 0, "unknown": 0}
    for sid in range(min(samples, len(pairs))):
        g, h = pairs[sid]
        base_cycle = [g] + [
            rng.choice((ZERO, STAR, ONE)) for _ in range(cycle_len - 1)
        ]
        variant_cycle = [h] + base_cycle[1:]
        base = periodic_delta((), base_cycle)
        variant = periodic_delta((), variant_cycle)
        agreements = disagreements = unknown = 0
        outcomes = []
        for lname, lf in _suite():
            for rname, rf in _suite():
                for first in (Player.LEFT, Player.RIGHT):
                    wb = _winner(base, first, lf, rf, budget)
                    wv = _winner(variant, first, lf, rf, budget)
                    if wb is None or wv is None:
                        unknown += 1
                        verdict = "unknown"
                    elif wb == wv:
                        agreements += 1
                        verdict = "agree"
                    else:
                        disagreements += 1
                        verdict = "differ"
                    outcomes.append({
                        "left": lname, "right": rname, "first": first.value,
                        "base_winner": wb, "variant_winner": wv,
                        "verdict": verdict,
                    })
        total["agreements"] += agreements
        total["disagreements"] += disagreements
        total["unknown"] += unknown
        rows.append({
            "id": sid,
            "base": fmt(delta_to_expr(base)),
            "variant": fmt(delta_to_expr(variant)),
            "agreements": agreements,
            "disagreements": disagreements,
            "unknown": unknown,
            "verdict": (
                "flagged-for-inspection" if disagreements else
                ("agrees" if not unknown else "partial")
            ),
            "plays": outcomes,
        })
    return {
        "config": {
            "samples": samples,
            "birthday_bound": birthday_bound,
            "cycle_len": cycle_len,
            "seed": seed,
            "blocks": budget.blocks,
            "steps": budget.steps,
        },
        "samples": rows,
        "summary": total,
    }
