"""Prime fields F_p (p > 3) and quadratic extensions F_p[t]/(t^2 - c)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

# desk-scale bound; primality is checked by trial division
MAX_PRIME = 1 << 16


class FieldMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise TypeError("p must be an int")
        if self.p <= 3:
            raise ValueError(f"characteristic must exceed 3, got p={self.p}")
        if self.p >= MAX_PRIME:
            raise ValueError(f"p={self.p} is beyond desk scale (< 2^16)")
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")

    degree = 1

    @property
    def order(self) -> int:
        return self.p

    @property
    def base(self) -> PrimeField:
        return self

    def __call__(self, c0: int, c1: int = 0) -> FieldElement:
        if c1 % self.p:
            raise ValueError("prime field elements have no t-component")
        return FieldElement(self, c0 % self.p, 0)

    def zero(self) -> FieldElement:
        return FieldElement(self, 0, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1, 0)

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.p):
            yield FieldElement(self, v, 0)

    def __str__(self):
        return f"F_{self.p}"


@dataclass(frozen=True)
class QuadraticExtension:
    """F_p[t]/(t^2 - c) for a quadratic non-residue ``c``."""

    base: PrimeField
    nonresidue: int

    def __post_init__(self):
        p = self.base.p
        c = self.nonresidue % p
        object.__setattr__(self, "nonresidue", c)
        if pow(c, (p - 1) // 2, p) != p - 1:
            raise ValueError(f"{c} is a square mod {p}; t^2 - {c} is reducible")

    degree = 2

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def order(self) -> int:
        return self.p * self.p

    def __call__(self, c0: int, c1: int = 0) -> FieldElement:
        return FieldElement(self, c0 % self.p, c1 % self.p)

    def zero(self) -> FieldElement:
        return FieldElement(self, 0, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1, 0)

    def elements(self) -> Iterator[FieldElement]:
        for c0 in range(self.p):
            for c1 in range(self.p):
                yield FieldElement(self, c0, c1)

    def __str__(self):
        return f"F_{self.p}^2(t^2={self.nonresidue})"


Field = Union[PrimeField, QuadraticExtension]


@dataclass(frozen=True, order=False)
class FieldElement:
    """``c0 + c1*t`` with canonical coordinates in ``[0, p)``; ``c1 == 0`` in F_p."""

    field: Field
    c0: int
    c1: int = 0

    @property
    def value(self) -> int:
        return self.c0

    @property
    def key(self) -> tuple[int, int]:
        return (self.c0, self.c1)

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"cannot mix {self.field} and {other.field}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, (self.c0 + other.c0) % p, (self.c1 + other.c1) % p)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, -self.c0 % p, -self.c1 % p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, (self.c0 - other.c0) % p, (self.c1 - other.c1) % p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        if self.field.degree == 1:
            return FieldElement(self.field, self.c0 * other.c0 % p, 0)
        c = self.field.nonresidue
        a0, a1, b0, b1 = self.c0, self.c1, other.c0, other.c1
        return FieldElement(self.field, (a0 * b0 + c * a1 * b1) % p, (a0 * b1 + a1 * b0) % p)

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError(f"division by zero in {self.field}")
        p = self.field.p
        if self.field.degree == 1:
            return FieldElement(self.field, pow(self.c0, p - 2, p), 0)
        # (c0 + c1 t)(c0 - c1 t) = c0^2 - c c1^2 lies in F_p
        n = (self.c0 * self.c0 - self.field.nonresidue * self.c1 * self.c1) % p
        n_inv = pow(n, p - 2, p)
        return FieldElement(self.field, self.c0 * n_inv % p, -self.c1 * n_inv % p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int) -> FieldElement:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        acc = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                acc = acc * base
            base = base * base
            exponent >>= 1
        return acc

    def __bool__(self):
        return bool(self.c0 or self.c1)

    def in_base_field(self) -> bool:
        return self.c1 == 0

    def __str__(self):
        if self.field.degree == 1 or self.c1 == 0:
            return str(self.c0)
        if self.c0 == 0:
            return f"{self.c1}t"
        return f"{self.c0}+{self.c1}t"

    def __repr__(self):
        return f"FieldElement({self}, {self.field})"

    def to_json(self):
        if self.field.degree == 1:
            return str(self.c0)
        return [str(self.c0), str(self.c1)]


def ff_arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    if x.field != y.field:
        raise FieldMismatch(f"cannot mix {x.field} and {y.field}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def ff_sqrt(x: FieldElement) -> tuple[FieldElement, ...]:
    """All square roots of ``x`` by exhaustive scan; ``()`` for a non-residue."""
    roots = [y for y in x.field.elements() if y * y == x]
    return tuple(roots)


def frobenius(x: FieldElement) -> FieldElement:
    return x ** x.field.p


_ELEMENT_RE = re.compile(r"^\s*(-?\d+)?\s*(?:([+-])\s*(\d*)\s*t)?\s*$")


def parse_element(field: Field, text: str) -> FieldElement:
    """Parse ``"7"``, ``"2+3t"``, ``"4t"`` or ``"-t"`` into ``field``."""
    s = text.strip()
    if s.endswith("t") and not re.match(r"^-?\d+\s*[+-]", s):
        # pure t-multiple such as "4t" or "-t"
        coef = s[:-1].strip()
        c1 = -1 if coef == "-" else (1 if coef in ("", "+") else int(coef))
        if field.degree == 1:
            raise ValueError(f"{text!r} has a t-component but the field is {field}")
        return field(0, c1)
    m = _ELEMENT_RE.match(s)
    if not m or m.group(1) is None:
        raise ValueError(f"not a field element literal: {text!r}")
    c0 = int(m.group(1))
    c1 = 0
    if m.group(2):
        c1 = int(m.group(3) or 1) * (-1 if m.group(2) == "-" else 1)
        if field.degree == 1:
            raise ValueError(f"{text!r} has a t-component but the field is {field}")
    return field(c0, c1)


def make_field(p: int, ext_nonresidue: int | None = None) -> Field:
    base = PrimeField(p)
    if ext_nonresidue is None:
        return base
    return QuadraticExtension(base, ext_nonresidue)
