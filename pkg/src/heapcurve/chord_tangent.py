"""Short Weierstrass curves over finite fields and their chord-tangent heap.

Every group-like operation here is derived from a single primitive, the third
point on the line through two curve points.  No base point is privileged:
``heap_op`` needs none, and the group laws take the neutral point ``O`` as an
explicit argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .finite_field import Field, FieldElement, FieldMismatch, parse_element


class SingularCurve(ValueError):
    pass


class NotOnCurve(ValueError):
    pass


@dataclass(frozen=True)
class CurvePoint:
    """An affine point ``(x, y)``, or the point at infinity when both are ``None``."""

    x: Optional[FieldElement] = None
    y: Optional[FieldElement] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def sort_key(self) -> tuple:
        if self.x is None:
            return (0,)
        return (1, self.x.key, self.y.key)

    def __str__(self):
        if self.x is None:
            return "infinity"
        return f"{self.x},{self.y}"

    def to_json(self):
        if self.x is None:
            return "infinity"
        return {"x": self.x.to_json(), "y": self.y.to_json()}


INFINITY = CurvePoint()


@dataclass(frozen=True)
class WeierstrassCurve:
    """The curve ``y^2 = x^3 + a*x + b``; singular curves are rejected."""

    a: FieldElement
    b: FieldElement

    def __post_init__(self):
        if self.a.field != self.b.field:
            raise FieldMismatch("curve coefficients live in different fields")
        if not (4 * self.a ** 3 + 27 * self.b * self.b):
            raise SingularCurve(f"4a^3 + 27b^2 = 0 for a={self.a}, b={self.b} over {self.field}")

    @classmethod
    def over(cls, field: Field, a: int, b: int) -> WeierstrassCurve:
        return cls(field(a), field(b))

    @property
    def field(self) -> Field:
        return self.a.field

    def contains(self, P: CurvePoint) -> bool:
        if P.x is None:
            return P.y is None
        known = self.__dict__.get("_point_set")
        if known is not None:
            return P in known
        if P.x.field != self.field or P.y.field != self.field:
            return False
        return on_curve(self, P.x, P.y)

    def check(self, *points: CurvePoint) -> None:
        for P in points:
            if not self.contains(P):
                raise NotOnCurve(f"{P} is not on {self}")

    def point(self, x, y) -> CurvePoint:
        if isinstance(x, int):
            x = self.field(x)
        if isinstance(y, int):
            y = self.field(y)
        P = CurvePoint(x, y)
        self.check(P)
        return P

    @cached_property
    def points(self) -> tuple[CurvePoint, ...]:
        pts = enumerate_points(self)
        # membership tests become set lookups once the curve is enumerated
        self.__dict__["_point_set"] = frozenset(pts)
        return pts

    def parse_point(self, text: str) -> CurvePoint:
        """Parse ``"infinity"`` or ``"x,y"`` (coordinates like ``3`` or ``2+4t``)."""
        s = text.strip()
        if s.lower() in ("infinity", "inf", "o"):
            return INFINITY
        parts = s.split(",")
        if len(parts) != 2:
            raise ValueError(f"not a point literal: {text!r}")
        x = parse_element(self.field, parts[0])
        y = parse_element(self.field, parts[1])
        return self.point(x, y)

    def __str__(self):
        return f"y^2 = x^3 + {self.a}x + {self.b} over {self.field}"

    def to_json(self) -> dict:
        out = {"p": self.field.p, "a": str(self.a), "b": str(self.b)}
        if self.field.degree == 2:
            out["ext_nonresidue"] = self.field.nonresidue
        return out


def convert_long_form(g2: FieldElement, g3: FieldElement) -> WeierstrassCurve:
    """``y^2 = 4x^3 - g2*x - g3`` becomes ``Y^2 = x^3 - (g2/4)x - g3/4`` with ``y = 2Y``."""
    four = g2.field(4)
    return WeierstrassCurve(-g2 / four, -g3 / four)


def long_to_short_point(P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(P.x, P.y / 2)


def on_curve(curve: WeierstrassCurve, x: FieldElement, y: FieldElement) -> bool:
    return y * y == x * x * x + curve.a * x + curve.b


def enumerate_points(curve: WeierstrassCurve) -> tuple[CurvePoint, ...]:
    """All points, infinity first and then in lexicographic ``(x, y)`` order."""
    roots: dict[FieldElement, list[FieldElement]] = {}
    elements = list(curve.field.elements())
    for y in elements:
        roots.setdefault(y * y, []).append(y)
    pts = [INFINITY]
    for x in elements:
        rhs = x * x * x + curve.a * x + curve.b
        for y in roots.get(rhs, ()):
            pts.append(CurvePoint(x, y))
    pts.sort(key=lambda P: P.sort_key)
    return tuple(pts)


def _third(curve: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.x is None and Q.x is None:
        return INFINITY
    if P.x is None:
        return CurvePoint(Q.x, -Q.y)
    if Q.x is None:
        return CurvePoint(P.x, -P.y)
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 != x2:
        lam = (y2 - y1) / (x2 - x1)
    elif y1 != y2 or not y1:
        # vertical chord, or vertical tangent at a 2-torsion point
        return INFINITY
    else:
        lam = (3 * x1 * x1 + curve.a) / (2 * y1)
    x3 = lam * lam - x1 - x2
    return CurvePoint(x3, y1 + lam * (x3 - x1))


def third_intersection(curve: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Third point of the line through ``P`` and ``Q`` (the tangent when ``P == Q``)."""
    curve.check(P, Q)
    return _third(curve, P, Q)


def heap_op(curve: WeierstrassCurve, A: CurvePoint, B: CurvePoint, C: CurvePoint) -> CurvePoint:
    """``[A, B, C]``: join ``A`` and ``C`` to get ``D``, then take the third point on ``DB``."""
    curve.check(A, B, C)
    return _third(curve, _third(curve, A, C), B)


def retract_add(curve: WeierstrassCurve, O: CurvePoint, A: CurvePoint, B: CurvePoint) -> CurvePoint:
    return heap_op(curve, A, O, B)


def retract_neg(curve: WeierstrassCurve, O: CurvePoint, A: CurvePoint) -> CurvePoint:
    return heap_op(curve, O, A, O)


def scalar_mul(curve: WeierstrassCurve, O: CurvePoint, n: int, A: CurvePoint) -> CurvePoint:
    """``n * A`` in the group retracted at ``O``, by double-and-add."""
    curve.check(O, A)
    if n < 0:
        return scalar_mul(curve, O, -n, retract_neg(curve, O, A))
    acc, base = O, A
    while n:
        if n & 1:
            acc = heap_op(curve, acc, O, base)
        base = heap_op(curve, base, O, base)
        n >>= 1
    return acc


def translation_iso(curve: WeierstrassCurve, O: CurvePoint, O2: CurvePoint, A: CurvePoint) -> CurvePoint:
    """Image of ``A`` under the translation isomorphism G(E; O) -> G(E; O2)."""
    return heap_op(curve, A, O, O2)


def point_index(points: Sequence[CurvePoint]) -> dict[CurvePoint, int]:
    return {P: i for i, P in enumerate(points)}
