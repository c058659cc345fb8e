"""Exact scalars: rationals and elements of Q(sqrt(-d)).

Rationals are :class:`fractions.Fraction`, which is always stored reduced
with a positive denominator and backed by Python's arbitrary-precision ints.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rational(value: RationalLike) -> Fraction:
    """Coerce an int, a Fraction or a ``"num/den"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_arith(x: Fraction, y: Fraction, op: str) -> Fraction:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(rational(x), rational(y))


def rat_is_integer(x: Fraction) -> bool:
    return rational(x).denominator == 1


def format_rational(x: Fraction) -> str:
    x = rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class DiscriminantMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticNumber:
    """``re + im*sqrt(-d)`` with rational ``re``, ``im`` and a positive integer ``d``.

    ``d`` is taken as given; it is not reduced to its squarefree part.
    """

    re: Fraction
    im: Fraction
    d: int

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d <= 0:
            raise ValueError(f"d must be a positive integer, got {self.d!r}")
        object.__setattr__(self, "re", rational(self.re))
        object.__setattr__(self, "im", rational(self.im))

    def _coerce(self, other) -> QuadraticNumber:
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise DiscriminantMismatch(f"cannot mix d={self.d} with d={other.d}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadraticNumber(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticNumber(self.re + other.re, self.im + other.im, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.re, -self.im, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, e = self.re, self.im, other.re, other.im
        return QuadraticNumber(a * c - self.d * b * e, a * e + c * b, self.d)

    __rmul__ = __mul__

    def conj(self) -> QuadraticNumber:
        return QuadraticNumber(self.re, -self.im, self.d)

    def norm(self) -> Fraction:
        return self.re * self.re + self.d * self.im * self.im

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(-d))")
        num = self * other.conj()
        return QuadraticNumber(num.re / n, num.im / n, self.d)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im), "d": self.d}

    def __str__(self):
        return f"{format_rational(self.re)} + {format_rational(self.im)}*sqrt(-{self.d})"


def quad_arith(x: QuadraticNumber, y: QuadraticNumber, op: str) -> QuadraticNumber:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    if x.d != y.d:
        raise DiscriminantMismatch(f"cannot mix d={x.d} with d={y.d}")
    return fn(x, y)
