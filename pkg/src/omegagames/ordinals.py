"""Ordinals below w^w in Cantor normal form, for run lengths and positions.

An ordinal is a descending list of (exponent, coefficient) terms plus a
finite tail: w^3*2 + w*5 + 7 is terms=((3,2),(1,5)), tail=7.  Exponents are
capped (default 4); the engine's block budgets never need more, and the cap
is validated rather than silently truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

MAX_EXPONENT = 4


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple[tuple[int, int], ...] = ()
    tail: int = 0

    def __post_init__(self):
        last = None
        for exp, coeff in self.terms:
            if exp < 1 or coeff < 1:
                raise ValueError("exponents and coefficients must be positive")
            if exp > MAX_EXPONENT:
                raise ValueError(f"exponent {exp} above cap {MAX_EXPONENT}")
            if last is not None and exp >= last:
                raise ValueError("exponents must strictly descend")
            last = exp
        if self.tail < 0:
            raise ValueError("finite part must be nonnegative")

    @property
    def is_finite(self) -> bool:
        return not self.terms

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and self.tail == 0

    @property
    def is_zero(self) -> bool:
        return not self.terms and self.tail == 0

    def __lt__(self, other: "Ordinal") -> bool:
        return self._cmp_key() < other._cmp_key()

    def _cmp_key(self):
        return (tuple(self.terms), self.tail)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for exp, coeff in self.terms:
            parts.append(f"w*{coeff}" if exp == 1 else f"w^{exp}*{coeff}")
        if self.tail:
            parts.append(str(self.tail))
        return "+".join(parts)


def from_int(n: int) -> Ordinal:
    return Ordinal((), n)


ZERO = from_int(0)
OMEGA = Ordinal(((1, 1),), 0)


def omega_times(k: int, exp: int = 1) -> Ordinal:
    """w^exp * k."""
    if k == 0:
        return ZERO
    return Ordinal(((exp, k),), 0)


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0 or 1: lexicographic on the normal form."""
    ka, kb = a._cmp_key(), b._cmp_key()
    return (ka > kb) - (ka < kb)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal addition; terms of a below b's leading exponent are absorbed."""
    if b.is_zero:
        return a
    if b.is_finite:
        return Ordinal(a.terms, a.tail + b.tail)
    lead_exp, lead_coeff = b.terms[0]
    kept = [t for t in a.terms if t[0] > lead_exp]
    merged = list(b.terms)
    for exp, coeff in a.terms:
        if exp == lead_exp:
            merged[0] = (lead_exp, coeff + lead_coeff)
    return Ordinal(tuple(kept + merged), b.tail)


def decompose(a: Ordinal) -> tuple[Ordinal, int]:
    """Split as limit_part + finite_part with limit_part zero or a limit."""
    return Ordinal(a.terms, 0), a.tail
