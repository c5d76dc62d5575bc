"""Text notation for games, periodic families and class sums.

Grammar (whitespace-insensitive)::

    game  := int | "*" [int] | "^" | "v" | "{" [games] "|" [games] "}"
    games := game {"," game}
    delta := [games [","|":"]] ["(" games ")" "w"]
    oplus := delta {"&" delta}

"^" is the up game {0|*}, "v" is down, "*" alone is the nim-heap of size
one and "*k" the heap of size k.  A "(...)w" suffix repeats its cycle over
the whole of N after the finite prefix; "&" separates the class blocks of a
sum carrying a partition.  Examples: "{0|*}", "(1,-1)w", "-1:(0)w",
"1,(0)w & (*)w".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import games as G
from .delta import DeltaGame, PlusGame, finite_delta, oplus, periodic_delta
from .errors import NotationError
from .games import Game


# ---------------------------------------------------------------------------
# Abstract syntax
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class NimberLit:
    order: int


@dataclass(frozen=True)
class NamedLit:
    name: str      # "^" or "v"


@dataclass(frozen=True)
class BracesExpr:
    left: tuple
    right: tuple


GameExpr = Union[IntLit, NimberLit, NamedLit, BracesExpr]


@dataclass(frozen=True)
class DeltaSpecExpr:
    prefix: tuple
    cycle: Optional[tuple]     # None: finite family; present: repeated over N


@dataclass(frozen=True)
class OplusExpr:
    blocks: tuple


# ---------------------------------------------------------------------------
# Tokenizer / parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise NotationError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def at_end(self) -> bool:
        return self.peek() == ""

    def maybe_int(self) -> Optional[int]:
        self.skip_ws()
        i = self.pos
        if i < len(self.text) and self.text[i] == "-":
            i += 1
        j = i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == i:
            return None
        value = int(self.text[self.pos:j])
        self.pos = j
        return value

    def game(self) -> GameExpr:
        c = self.peek()
        if c == "{":
            self.take("{")
            left = () if self.peek() == "|" else self.games()
            self.take("|")
            right = () if self.peek() == "}" else self.games()
            self.take("}")
            return BracesExpr(left, right)
        if c == "*":
            self.take("*")
            n = self.maybe_int()
            if n is None:
                return NimberLit(1)
            if n < 0:
                self.error("nim-heap size cannot be negative")
            return NimberLit(n)
        if c == "^":
            self.take("^")
            return NamedLit("^")
        if c == "v":
            self.take("v")
            return NamedLit("v")
        n = self.maybe_int()
        if n is None:
            self.error("expected a game")
        return IntLit(n)

    def games(self) -> tuple:
        out = [self.game()]
        while self.peek() == ",":
            save = self.pos
            self.take(",")
            if self.peek() == "(":
                # prefix list ends, the cycle follows
                self.pos = save
                break
            out.append(self.game())
        return tuple(out)

    def delta(self) -> DeltaSpecExpr:
        prefix: tuple = ()
        cycle = None
        if self.peek() not in ("(", "", "&"):
            prefix = self.games()
            if self.peek() == ":":
                self.take(":")
            elif self.peek() == ",":
                self.take(",")
        if self.peek() == "(":
            self.take("(")
            body = self.games()
            self.take(")")
            if self.peek() != "w":
                self.error("a cycle needs its 'w' suffix")
            self.take("w")
            cycle = body
        if not prefix and cycle is None:
            self.error("expected a family")
        return DeltaSpecExpr(prefix, cycle)

    def oplus(self) -> OplusExpr:
        blocks = [self.delta()]
        while self.peek() == "&":
            self.take("&")
            blocks.append(self.delta())
        return OplusExpr(tuple(blocks))


def parse_game(text: str) -> GameExpr:
    p = _Parser(text)
    expr = p.game()
    if not p.at_end():
        p.error("unexpected trailing input")
    return expr


def parse_delta(text: str) -> DeltaSpecExpr:
    p = _Parser(text)
    expr = p.delta()
    if not p.at_end():
        p.error("unexpected trailing input")
    return expr


def parse_oplus(text: str) -> OplusExpr:
    p = _Parser(text)
    expr = p.oplus()
    if not p.at_end():
        p.error("unexpected trailing input")
    return expr


# ---------------------------------------------------------------------------
# Elaboration into interned games and families
# ---------------------------------------------------------------------------

def to_game(expr: Union[GameExpr, str]) -> Game:
    if isinstance(expr, str):
        expr = parse_game(expr)
    if isinstance(expr, IntLit):
        return G.integer(expr.value)
    if isinstance(expr, NimberLit):
        return G.nimber(expr.order)
    if isinstance(expr, NamedLit):
        return G.UP if expr.name == "^" else G.DOWN
    return G.make_game(
        tuple(to_game(e) for e in expr.left),
        tuple(to_game(e) for e in expr.right),
    )


def to_delta(expr: Union[DeltaSpecExpr, str]) -> DeltaGame:
    if isinstance(expr, str):
        expr = parse_delta(expr)
    prefix = tuple(to_game(e) for e in expr.prefix)
    if expr.cycle is None:
        return finite_delta(prefix)
    return periodic_delta(prefix, tuple(to_game(e) for e in expr.cycle))


def to_plus(expr: Union[OplusExpr, str]) -> PlusGame:
    if isinstance(expr, str):
        expr = parse_oplus(expr)
    return oplus([to_delta(b) for b in expr.blocks])


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def game_to_expr(g: Game) -> GameExpr:
    """Preferred written form of a game: literal names where they exist."""
    n = G.as_integer(g)
    if n is not None:
        return IntLit(n)
    k = G.as_nimber(g)
    if k is not None and k > 0:
        return NimberLit(k)
    if g is G.UP:
        return NamedLit("^")
    if g is G.DOWN:
        return NamedLit("v")
    return BracesExpr(
        tuple(game_to_expr(o) for o in g.left),
        tuple(game_to_expr(o) for o in g.right),
    )


def format(value) -> str:
    """Round-tripping printer for expressions, games and families."""
    if isinstance(value, Game):
        return format(game_to_expr(value))
    if isinstance(value, DeltaGame):
        return format(delta_to_expr(value))
    if isinstance(value, IntLit):
        return str(value.value)
    if isinstance(value, NimberLit):
        return "*" if value.order == 1 else f"*{value.order}"
    if isinstance(value, NamedLit):
        return value.name
    if isinstance(value, BracesExpr):
        ls = ",".join(format(e) for e in value.left)
        rs = ",".join(format(e) for e in value.right)
        return "{" + ls + "|" + rs + "}"
    if isinstance(value, DeltaSpecExpr):
        pre = ",".join(format(e) for e in value.prefix)
        if value.cycle is None:
            return pre
        cyc = "(" + ",".join(format(e) for e in value.cycle) + ")w"
        return f"{pre}:{cyc}" if pre else cyc
    if isinstance(value, OplusExpr):
        return " & ".join(format(b) for b in value.blocks)
    raise TypeError(f"cannot format {value!r}")


def delta_to_expr(d: DeltaGame) -> DeltaSpecExpr:
    """Written form of a family's spec (the overlay is not representable)."""
    if d.overlay:
        raise ValueError("only pristine families have a written form")
    spec = d.spec
    if hasattr(spec, "games"):
        return DeltaSpecExpr(tuple(game_to_expr(g) for g in spec.games), None)
    return DeltaSpecExpr(
        tuple(game_to_expr(g) for g in spec.prefix),
        tuple(game_to_expr(g) for g in spec.cycle),
    )


def render_position(d, count: int = 12) -> str:
    """The first summands of a position, e.g. "1-1+0+0+1-1+..."."""
    parts = []
    n = d.size() if hasattr(d, "size") else None
    hi = count if n is None else min(count, n)
    for i in range(hi):
        g = d.summand_at(i)
        text = format(game_to_expr(g))
        if i == 0:
            parts.append(text)
        elif text.startswith("-"):
            parts.append(text)
        else:
            parts.append("+" + text)
    if n is None or n > hi:
        parts.append("+...")
    return "".join(parts)
