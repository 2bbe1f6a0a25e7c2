"""Exact arithmetic in the quadratic field Q(sqrt d).

A :class:`Scalar` is ``rat + irr * sqrt(d)`` with both parts exact
rationals.  Integral parts are held as plain ``int`` (much faster than
:class:`fractions.Fraction` in the bracket kernels) and other parts as
reduced Fractions, so equality is a plain field-wise comparison.

The text format used by input files and reports is::

    RAT | RAT "r" | RAT ("+" | "-") RAT "r"        RAT ::= ["-"] int ["/" posint]

where ``r`` stands for sqrt(d).  For example ``"3/2-1/2r"`` is 3/2 - sqrt(d)/2.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZero, ParseError

DEFAULT_D = 3


def is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _canon(q):
    if type(q) is not Fraction:
        q = Fraction(q)
    return q.numerator if q.denominator == 1 else q


class Scalar:
    """An element ``rat + irr*sqrt(d)`` of Q(sqrt d)."""

    __slots__ = ("rat", "irr", "d")

    def __init__(self, rat=0, irr=0, d: int = DEFAULT_D):
        self.rat = rat if type(rat) is int else _canon(rat)
        self.irr = irr if type(irr) is int else _canon(irr)
        self.d = d

    # construction helpers -------------------------------------------------

    @classmethod
    def sqrt(cls, d: int = DEFAULT_D) -> Scalar:
        return cls(0, 1, d)

    def _coerce(self, other):
        if type(other) is Scalar:
            if other.d != self.d and self.irr and other.irr:
                raise ValueError(f"cannot mix Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Rational)):
            return Scalar(other, 0, self.d)
        return NotImplemented

    def _d_with(self, other: Scalar) -> int:
        return other.d if (other.irr and not self.irr) else self.d

    # field operations -----------------------------------------------------

    def __add__(self, other):
        if type(other) is Scalar and not self.irr and not other.irr:
            return Scalar(self.rat + other.rat, 0, self.d)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.rat + o.rat, self.irr + o.irr, self._d_with(o))

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is Scalar and not self.irr and not other.irr:
            return Scalar(self.rat - other.rat, 0, self.d)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.rat - o.rat, self.irr - o.irr, self._d_with(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Scalar(-self.rat, -self.irr, self.d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if type(other) is Scalar and not self.irr and not other.irr:
            return Scalar(self.rat * other.rat, 0, self.d)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, e = self.rat, self.irr, o.rat, o.irr
        if not b and not e:
            return Scalar(a * c, 0, self.d)
        d = self._d_with(o)
        return Scalar(a * c + d * b * e, a * e + b * c, d)

    __rmul__ = __mul__

    def inv(self) -> Scalar:
        a, b = self.rat, self.irr
        if not b:
            if not a:
                raise DivisionByZero("inverse of zero")
            return Scalar(Fraction(1) / a, 0, self.d)
        norm = a * a - self.d * b * b
        # norm != 0 because d is not a perfect square
        return Scalar(Fraction(a) / norm, Fraction(-b) / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o:
            raise DivisionByZero("division by zero")
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result, base = Scalar(1, 0, self.d), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> Scalar:
        return Scalar(self.rat, -self.irr, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.rat * self.rat - self.d * self.irr * self.irr)

    # comparisons ----------------------------------------------------------

    def __bool__(self):
        return bool(self.rat) or bool(self.irr)

    def __eq__(self, other):
        if type(other) is Scalar:
            if self.irr != other.irr or self.rat != other.rat:
                return False
            return not self.irr or self.d == other.d
        if isinstance(other, (int, Rational)):
            return not self.irr and self.rat == other
        return NotImplemented

    def __hash__(self):
        if not self.irr:
            return hash(self.rat)
        return hash((self.rat, self.irr, self.d))

    def is_rational(self) -> bool:
        return not self.irr

    def __float__(self):
        return float(self.rat) + float(self.irr) * math.sqrt(self.d)

    # text -----------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r}, d={self.d})"


def _fmt_rat(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Canonical text form; inverse of :func:`parse_scalar`."""
    if not s.irr:
        return _fmt_rat(s.rat)
    if not s.rat:
        return _fmt_rat(s.irr) + "r"
    sign = "-" if s.irr < 0 else "+"
    return f"{_fmt_rat(s.rat)}{sign}{_fmt_rat(abs(s.irr))}r"


_RAT = r"-?\d+(?:/\d+)?"
_RAT_RE = re.compile(_RAT)


def _parse_rat(text: str, start: int, full: str) -> tuple[Fraction, int]:
    m = _RAT_RE.match(text, start)
    if not m:
        raise ParseError("expected a rational number", full, start)
    token = m.group(0)
    num, _, den = token.partition("/")
    if den and int(den) == 0:
        raise ParseError("zero denominator", full, start + token.index("/") + 1)
    return Fraction(int(num), int(den) if den else 1), m.end()


def parse_scalar(text, d: int = DEFAULT_D) -> Scalar:
    """Parse the scalar grammar; ``r`` denotes sqrt(d).

    Integers and Fractions are accepted as-is for convenience.
    """
    if isinstance(text, Scalar):
        return text
    if isinstance(text, bool):
        raise ParseError(f"not a scalar: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Scalar(text, 0, d)
    if not isinstance(text, str):
        raise ParseError(f"not a scalar: {text!r}")
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    if not s:
        raise ParseError("empty scalar", text, 0)
    first, pos = _parse_rat(s, 0, text)
    if pos == len(s):
        return Scalar(first, 0, d)
    if s[pos] == "r":
        if pos + 1 != len(s):
            raise ParseError("unexpected trailing input", text, offset + pos + 1)
        return Scalar(0, first, d)
    if s[pos] not in "+-":
        raise ParseError(f"unexpected character {s[pos]!r}", text, offset + pos)
    sign = 1 if s[pos] == "+" else -1
    if pos + 1 < len(s) and s[pos + 1] == "-":
        raise ParseError("double sign", text, offset + pos + 1)
    second, end = _parse_rat(s, pos + 1, text)
    if end >= len(s) or s[end] != "r":
        raise ParseError("second term must be a multiple of r", text, offset + end)
    if end + 1 != len(s):
        raise ParseError("unexpected trailing input", text, offset + end + 1)
    return Scalar(first, sign * second, d)


def as_scalar(x, d: int = DEFAULT_D) -> Scalar:
    if type(x) is Scalar:
        return x
    if isinstance(x, (int, Rational)):
        return Scalar(x, 0, d)
    return parse_scalar(x, d)


ZERO = Scalar(0)
ONE = Scalar(1)
