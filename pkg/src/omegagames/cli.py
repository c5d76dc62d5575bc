"""Command-line front end.

Every command accepts --json for machine-readable output; budgets and the
seed appear in every report header, and identical inputs produce identical
bytes.  Exit codes: 0 result, 1 usage, 2 budget exceeded, 3 strategy
undefined.
"""

from __future__ import annotations

import json
import sys

import click

from . import notation, replay
from .delta import PlusGame, pattern_equivalent
from .engine import (
    PlayBudget,
    Seat,
    VerifyBudget,
    check_uniform,
    play,
    trace_records,
    verify_winning,
)
from .errors import (
    BudgetExceededError,
    NotationError,
    OmegagamesError,
    StrategyUndefinedError,
)
from .games import (
    Player,
    birthday,
    conway_equiv,
    is_dicotic,
    is_impartial,
    is_number,
    outcome,
    persistent,
)
from .runs import Rule, maf, regular_moves, resultant, positions
from .strategies import strategy_from_spec


def _emit(data: dict, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(data, sort_keys=True, separators=(",", ":")))
        return
    for key, value in data.items():
        click.echo(f"{key}: {value}")


def _budget_header(budget: PlayBudget, seed=None) -> dict:
    header = {"blocks": budget.blocks, "steps": budget.steps}
    if seed is not None:
        header["seed"] = seed
    return header


_RULES = {r.value: r for r in Rule}
_PLAYERS = {"L": Player.LEFT, "R": Player.RIGHT}


def _parse_origin(text: str, rule: Rule):
    expr = notation.parse_oplus(text)
    if rule is Rule.EXTENDED or len(expr.blocks) > 1:
        origin = notation.to_plus(expr)
        if rule is not Rule.EXTENDED:
            return origin.base
        return origin
    return notation.to_delta(expr.blocks[0])


@click.group()
def cli():
    """Evaluate, play and verify infinite sums of combinatorial games."""


@cli.command("eval", context_settings={"ignore_unknown_options": True})
@click.argument("text", type=click.UNPROCESSED)
@click.option("--json", "as_json", is_flag=True)
def eval_cmd(text, as_json):
    """Parse and normalise a game or family expression."""
    if "&" in text or "(" in text or "," in text or ":" in text:
        expr = notation.parse_oplus(text)
        _emit({"kind": "family", "normal": notation.format(expr)}, as_json)
    else:
        g = notation.to_game(text)
        _emit({
            "kind": "game",
            "normal": notation.format(notation.game_to_expr(g)),
            "birthday": birthday(g),
        }, as_json)


@cli.command("outcome", context_settings={"ignore_unknown_options": True})
@click.argument("text", type=click.UNPROCESSED)
@click.option("--json", "as_json", is_flag=True)
def outcome_cmd(text, as_json):
    """Classical outcome (N, P, L or R) of a finite game expression."""
    g = notation.to_game(text)
    _emit({"outcome": outcome(g).value}, as_json)


@cli.command("equiv", context_settings={"ignore_unknown_options": True})
@click.argument("left_text", type=click.UNPROCESSED)
@click.argument("right_text", type=click.UNPROCESSED)
@click.option("--json", "as_json", is_flag=True)
def equiv_cmd(left_text, right_text, as_json):
    """Value equivalence of two game expressions."""
    g = notation.to_game(left_text)
    h = notation.to_game(right_text)
    _emit({"equivalent": conway_equiv(g, h)}, as_json)


@cli.command("predicates", context_settings={"ignore_unknown_options": True})
@click.argument("text", type=click.UNPROCESSED)
@click.option("--json", "as_json", is_flag=True)
def predicates_cmd(text, as_json):
    """Structural predicates of a game expression."""
    g = notation.to_game(text)
    _emit({
        "birthday": birthday(g),
        "outcome": outcome(g).value,
        "impartial": is_impartial(g),
        "dicotic": is_dicotic(g),
        "number": is_number(g),
        "left_persistent": persistent(g, Player.LEFT),
        "right_persistent": persistent(g, Player.RIGHT),
    }, as_json)


@cli.command("play", context_settings={"ignore_unknown_options": True})
@click.argument("spec", type=click.UNPROCESSED)
@click.option("--rule", type=click.Choice(sorted(_RULES)), default="standard")
@click.option("--first", type=click.Choice(["L", "R"]), default="L")
@click.option("--left", "left_spec", default="first_option")
@click.option("--right", "right_spec", default="first_option")
@click.option("--blocks", type=int, default=8)
@click.option("--steps", type=int, default=10_000)
@click.option("--seed", type=int, default=0)
@click.option("--trace", is_flag=True, help="emit one JSON record per move")
@click.option("--json", "as_json", is_flag=True)
def play_cmd(spec, rule, first, left_spec, right_spec, blocks, steps, seed,
             trace, as_json):
    """Run one play between two named strategies."""
    rule_v = _RULES[rule]
    origin = _parse_origin(spec, rule_v)
    budget = PlayBudget(blocks=blocks, steps=steps)
    s_left = strategy_from_spec(left_spec, Player.LEFT)
    s_right = strategy_from_spec(right_spec, Player.RIGHT)
    result = play(origin, rule_v, _PLAYERS[first], s_left, s_right, budget)
    report = {
        "budgets": _budget_header(budget, seed),
        "spec": spec,
        "rule": rule,
        "first": first,
        "left": left_spec,
        "right": right_spec,
        "winner": result.winner.value,
        "length": str(result.length),
    }
    if trace:
        for record in trace_records(result):
            click.echo(json.dumps(record, sort_keys=True, separators=(",", ":")))
        return
    _emit(report, as_json)


@cli.command("verify", context_settings={"ignore_unknown_options": True})
@click.argument("spec", type=click.UNPROCESSED)
@click.option("--strategy", "strategy_spec", required=True)
@click.option("--player", type=click.Choice(["L", "R"]), required=True)
@click.option("--seat", type=click.Choice(["first", "second"]), default="second")
@click.option("--rule", type=click.Choice(sorted(_RULES)), default="standard")
@click.option("--blocks", type=int, default=4)
@click.option("--steps", type=int, default=5000)
@click.option("--head", type=int, default=3)
@click.option("--period", type=int, default=3)
@click.option("--uniform", is_flag=True, help="check limit-stage uniformity instead")
@click.option("--json", "as_json", is_flag=True)
def verify_cmd(spec, strategy_spec, player, seat, rule, blocks, steps, head,
               period, uniform, as_json):
    """Certify a strategy against the bounded adversary space."""
    rule_v = _RULES[rule]
    player_v = _PLAYERS[player]
    origin = _parse_origin(spec, rule_v if not uniform else Rule.EXTENDED)
    budgets = VerifyBudget(
        play=PlayBudget(blocks=blocks, steps=steps),
        adversary_head=head,
        adversary_period=period,
    )
    sigma = strategy_from_spec(strategy_spec, player_v)
    header = {
        "blocks": blocks, "steps": steps,
        "adversary_head": head, "adversary_period": period,
    }
    if uniform:
        if not isinstance(origin, PlusGame):
            origin = notation.to_plus(notation.parse_oplus(spec))
        report = check_uniform(sigma, origin, player_v, budgets)
        _emit({
            "budgets": header,
            "spec": spec,
            "strategy": strategy_spec,
            "player": player,
            "uniform": report.status,
            "limits_seen": report.limits_seen,
        }, as_json)
        return
    result = verify_winning(sigma, origin, rule_v,
                            Seat.FIRST if seat == "first" else Seat.SECOND,
                            player_v, budgets)
    _emit({
        "budgets": header,
        "spec": spec,
        "strategy": strategy_spec,
        "player": player,
        "seat": seat,
        "rule": rule,
        "status": result.status,
        "explored": result.explored,
        "budget_hits": result.budget_hits,
    }, as_json)


@cli.command("replay")
@click.argument("name", type=click.Choice(replay.bundle_names()))
@click.option("--steps", type=int, default=6, help="positions to display")
@click.option("--json", "as_json", is_flag=True)
def replay_cmd(name, steps, as_json):
    """Reconstruct a bundled reference run and report its limit data."""
    built = replay.load(name)
    if isinstance(built, dict):
        if as_json:
            click.echo(json.dumps(built, sort_keys=True, separators=(",", ":")))
        else:
            for row in built["rows"]:
                line = f"maf({row['moves']}) = {row['maf']}"
                if "documented_discrepancy" in row:
                    line += "   [documented discrepancy: " + \
                        row["documented_discrepancy"]["note"] + "]"
                click.echo(line)
        return
    shown = [notation.render_position(p, 12) for p in positions(built, steps - 1)]
    report = {"bundle": name, **replay.describe(built), "positions": shown}
    if as_json:
        click.echo(json.dumps(report, sort_keys=True, separators=(",", ":")))
    else:
        for key in ("bundle", "rule", "first", "length", "limit_mover"):
            if key in report:
                click.echo(f"{key}: {report[key]}")
        for pos_text in shown:
            click.echo(pos_text)


@cli.command("experiment")
@click.option("--samples", type=int, default=6)
@click.option("--birthday", "birthday_bound", type=int, default=2)
@click.option("--cycle-len", type=int, default=2)
@click.option("--seed", type=int, default=0)
@click.option("--blocks", type=int, default=4)
@click.option("--steps", type=int, default=2000)
@click.option("--json", "as_json", is_flag=True)
def experiment_cmd(samples, birthday_bound, cycle_len, seed, blocks, steps,
                   as_json):
    """Probe outcome invariance under value-equivalent summand swaps.

    Samples pairs of equivalent games, builds matched periodic families,
    runs the deterministic strategy suite on both under regular play and
    reports agreements; a disagreement is flagged for inspection, never
    asserted as a refutation.
    """
    from .experiment import run_experiment

    report = run_experiment(
        samples=samples,
        birthday_bound=birthday_bound,
        cycle_len=cycle_len,
        seed=seed,
        budget=PlayBudget(blocks=blocks, steps=steps),
    )
    if as_json:
        click.echo(json.dumps(report, sort_keys=True, separators=(",", ":")))
    else:
        click.echo(f"budgets: blocks={blocks} steps={steps} seed={seed}")
        for row in report["samples"]:
            click.echo(
                f"#{row['id']} {row['base']} ~ {row['variant']}: "
                f"{row['verdict']} ({row['agreements']} agree, "
                f"{row['disagreements']} differ, {row['unknown']} unknown)"
            )
        click.echo(
            f"total: {report['summary']['agreements']} agree, "
            f"{report['summary']['disagreements']} differ, "
            f"{report['summary']['unknown']} unknown"
        )


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as e:
        click.echo(f"error: {e.format_message()}", err=True)
        return 1
    except click.ClickException as e:
        e.show()
        return 1
    except NotationError as e:
        click.echo(f"error: {e}", err=True)
        return 1
    except BudgetExceededError as e:
        click.echo(f"budget exceeded: {e}", err=True)
        return 2
    except StrategyUndefinedError as e:
        click.echo(f"strategy undefined: {e}", err=True)
        return 3
    except OmegagamesError as e:
        click.echo(f"error: {e}", err=True)
        return 1
    except ValueError as e:
        click.echo(f"error: {e}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
