"""Exact coordinate arithmetic: arbitrary-precision rationals plus a symbolic
infinitesimal offset.

All solver coordinates are rationals.  Interval endpoints and cut positions
additionally carry a flag in {-1, 0, +1}, the coefficient of a symbolic
infinitesimal ``eps``.  Ordering is lexicographic on (base, flag), which
agrees with substituting any concrete ``eps`` in (0, g/2) where ``g`` is the
smallest positive gap between base values in play.  ``eps`` is never
materialized here; only the codeword decoder substitutes a number for it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Fraction

RationalLike = Union[int, str, Fraction]


def rational(value: RationalLike) -> Fraction:
    """Parse a rational from an int, a Fraction, a decimal string, or 'p/q'."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {value!r}") from exc


def format_rational(q: Fraction) -> str:
    """Render a rational as 'p' or 'p/q' (lossless, parseable by rational())."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class EpsCoord:
    """A coordinate ``base + eps_flag * eps`` with eps_flag in {-1, 0, +1}."""

    __slots__ = ("base", "eps")

    def __init__(self, base: RationalLike, eps: int = 0):
        if eps not in (-1, 0, 1):
            raise ValueError(f"eps flag must be -1, 0, or +1, got {eps}")
        self.base = rational(base)
        self.eps = eps

    def shifted(self, m: int) -> "EpsCoord":
        """This coordinate translated by an integer."""
        return EpsCoord(self.base + m, self.eps)

    def key(self):
        return (self.base, self.eps)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EpsCoord)
            and self.base == other.base
            and self.eps == other.eps
        )

    def __hash__(self) -> int:
        return hash((self.base, self.eps))

    def __lt__(self, other: "EpsCoord") -> bool:
        if self.base != other.base:
            return self.base < other.base
        return self.eps < other.eps

    def __le__(self, other: "EpsCoord") -> bool:
        return not other < self

    def __gt__(self, other: "EpsCoord") -> bool:
        return other < self

    def __ge__(self, other: "EpsCoord") -> bool:
        return not self < other

    def __repr__(self) -> str:
        suffix = {0: "", 1: "+eps", -1: "-eps"}[self.eps]
        return f"{format_rational(self.base)}{suffix}"


def compare(a: EpsCoord, b: EpsCoord) -> int:
    """-1, 0, or +1 as a is below, equal to, or above b."""
    if a.base != b.base:
        return -1 if a.base < b.base else 1
    if a.eps != b.eps:
        return -1 if a.eps < b.eps else 1
    return 0


def floor_diff(a: EpsCoord, b: EpsCoord) -> int:
    """floor(a - b) under the symbolic-eps order.

    The net eps coefficient only matters when the base difference is an
    integer: a negative coefficient then pulls the floor down by one.
    """
    d = a.base - b.base
    c = a.eps - b.eps
    fl = d.numerator // d.denominator
    if c < 0 and d.denominator == 1:
        return fl - 1
    return fl


def ceil_diff(a: EpsCoord, b: EpsCoord) -> int:
    """ceil(a - b), via the identity ceil(x) = -floor(-x)."""
    return -floor_diff(b, a)


def length_cmp_one(lo: EpsCoord, hi: EpsCoord) -> int:
    """Compare hi - lo against 1: returns -1, 0, or +1.

    Exact under the symbolic order: a length of 1+eps compares greater than
    one, while 1 and 1-eps do not.
    """
    d = hi.base - lo.base
    if d != 1:
        return -1 if d < 1 else 1
    c = hi.eps - lo.eps
    if c == 0:
        return 0
    return -1 if c < 0 else 1
