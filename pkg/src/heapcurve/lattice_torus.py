"""The torus C / (Z*tau + Z) with rational points, its multiplier ring and trusses.

A point is the class of ``u + v*tau`` with ``u, v`` rational and reduced into
``[0, 1)``.  Products with ``tau`` are rewritten through ``tau^2 = 2p*tau - N``
where ``tau = p + q*sqrt(-d)`` and ``N = p^2 + d*q^2``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import QuadraticNumber, RationalLike, format_rational, rational


class LatticeMismatch(ValueError):
    pass


class NotAMultiplier(ValueError):
    pass


@dataclass(frozen=True)
class LatticeSpec:
    p: Fraction
    q: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "p", rational(self.p))
        object.__setattr__(self, "q", rational(self.q))
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d <= 0:
            raise ValueError(f"d must be a positive integer, got {self.d!r}")
        if self.q <= 0:
            raise ValueError("tau must lie in the upper half-plane (q > 0)")
        N = self.p * self.p + self.d * self.q * self.q
        object.__setattr__(self, "_N", N)
        # numerator/denominator pairs of N and 2p, for integer-only multiplier checks
        two_p = 2 * self.p
        object.__setattr__(self, "_int_data", (N.numerator, N.denominator, two_p.numerator, two_p.denominator))
        tau = self.tau
        if tau * tau != 2 * self.p * tau - self.N:
            raise ArithmeticError("tau^2 = 2p*tau - N does not hold")

    @classmethod
    def of(cls, p: RationalLike, q: RationalLike, d: int) -> LatticeSpec:
        return cls(rational(p), rational(q), d)

    @property
    def N(self) -> Fraction:
        return self._N

    @property
    def tau(self) -> QuadraticNumber:
        return QuadraticNumber(self.p, self.q, self.d)

    def to_complex(self, u: Fraction, v: Fraction) -> QuadraticNumber:
        """``u + v*tau`` as an element of Q(sqrt(-d))."""
        return QuadraticNumber(u, 0, self.d) + self.tau * v

    def from_complex(self, z: QuadraticNumber) -> tuple[Fraction, Fraction]:
        """Coordinates of ``z`` in the basis ``(1, tau)``."""
        if z.d != self.d:
            raise LatticeMismatch(f"d={z.d} does not match the lattice's d={self.d}")
        v = z.im / self.q
        return z.re - v * self.p, v

    def point(self, u: RationalLike, v: RationalLike) -> TorusPoint:
        return TorusPoint(rational(u), rational(v), self)

    def multiplier(self, m: int, n: int) -> Multiplier:
        return Multiplier(m, n, self)

    def __str__(self):
        return f"tau = {format_rational(self.p)} + {format_rational(self.q)}*sqrt(-{self.d})"

    def to_json(self) -> dict:
        return {"p": format_rational(self.p), "q": format_rational(self.q), "d": self.d}


GAUSSIAN = LatticeSpec(Fraction(0), Fraction(1), 1)
TWO_I = LatticeSpec(Fraction(0), Fraction(2), 1)
EISENSTEIN = LatticeSpec(Fraction(-1, 2), Fraction(1, 2), 3)


def _same(*lattices: LatticeSpec) -> LatticeSpec:
    first = lattices[0]
    for other in lattices[1:]:
        if other is not first and other != first:
            raise LatticeMismatch(f"{first} vs {other}")
    return first


def _unit(x: RationalLike) -> Fraction:
    """Representative of ``x`` mod 1 in ``[0, 1)``."""
    if type(x) is Fraction and 0 <= x.numerator < x.denominator:
        return x
    return rational(x) % 1


@dataclass(frozen=True)
class TorusPoint:
    u: Fraction
    v: Fraction
    lattice: LatticeSpec

    def __post_init__(self):
        object.__setattr__(self, "u", _unit(self.u))
        object.__setattr__(self, "v", _unit(self.v))

    def __str__(self):
        return f"[{format_rational(self.u)} + {format_rational(self.v)}tau]"

    def to_json(self) -> dict:
        return {"u": format_rational(self.u), "v": format_rational(self.v)}


def torus_heap(A: TorusPoint, B: TorusPoint, C: TorusPoint) -> TorusPoint:
    lat = _same(A.lattice, B.lattice, C.lattice)
    return TorusPoint(A.u - B.u + C.u, A.v - B.v + C.v, lat)


def _den(x: Fraction) -> int:
    return x.denominator


def z_pqd_from_params(p: RationalLike, q: RationalLike, d: int) -> int:
    """Generator ``g`` of ``{n : 2np, n(p^2 + dq^2) integral} = gZ``.

    No lattice validity is required, so e.g. a negative ``d`` can be evaluated.
    """
    p, q = rational(p), rational(q)
    return math.lcm(_den(2 * p), _den(p * p + d * q * q))


def z_pqd_generator(lattice: LatticeSpec) -> int:
    return z_pqd_from_params(lattice.p, lattice.q, lattice.d)


def in_lattice(lattice: LatticeSpec, z: QuadraticNumber) -> bool:
    u, v = lattice.from_complex(z)
    return u.denominator == 1 and v.denominator == 1


def lattice_stability_oracle(lattice: LatticeSpec, m: int, n: int) -> bool:
    """Whether ``r = m + n*tau`` maps both lattice generators back into the lattice."""
    r = QuadraticNumber(Fraction(m), Fraction(0), lattice.d) + lattice.tau * n
    return in_lattice(lattice, r) and in_lattice(lattice, r * lattice.tau)


@dataclass(frozen=True)
class Multiplier:
    """``m + n*tau`` with ``r * Lambda`` contained in ``Lambda``."""

    m: int
    n: int
    lattice: LatticeSpec
    # integers n*N and 2p*n, cached for the tau^2 reduction
    nN: int = field(init=False, repr=False, compare=False)
    two_pn: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lat = self.lattice
        n_num, n_den, t_num, t_den = lat._int_data
        nN, r1 = divmod(self.n * n_num, n_den)
        two_pn, r2 = divmod(self.n * t_num, t_den)
        if r1 or r2:
            raise NotAMultiplier(f"{self.m} + {self.n}tau does not preserve the lattice ({lat})")
        object.__setattr__(self, "nN", nN)
        object.__setattr__(self, "two_pn", two_pn)

    def to_complex(self) -> QuadraticNumber:
        return self.lattice.to_complex(Fraction(self.m), Fraction(self.n))

    def __str__(self):
        return f"{self.m} + {self.n}tau"

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n}


def multiplier_mul(r: Multiplier, s: Multiplier) -> Multiplier:
    lat = _same(r.lattice, s.lattice)
    m = r.m * s.m - r.n * s.nN
    n = r.m * s.n + r.n * s.m + r.two_pn * s.n
    try:
        return Multiplier(m, n, lat)
    except NotAMultiplier as exc:
        raise ArithmeticError(str(exc)) from exc


def multiplier_heap(r: Multiplier, s: Multiplier, t: Multiplier) -> Multiplier:
    lat = _same(r.lattice, s.lattice, t.lattice)
    return Multiplier(r.m - s.m + t.m, r.n - s.n + t.n, lat)


def _affine(r: Multiplier, A: TorusPoint, c: TorusPoint) -> TorusPoint:
    """``[r*A + c]`` computed on numerators over a common denominator."""
    un, ud = A.u.numerator, A.u.denominator
    vn, vd = A.v.numerator, A.v.denominator
    cun, cud = c.u.numerator, c.u.denominator
    cvn, cvd = c.v.numerator, c.v.denominator
    den = ud * vd
    x = un * vd * r.m - vn * ud * r.nN
    y = vn * ud * (r.m + r.two_pn) + un * vd * r.n
    x_den, y_den = den * cud, den * cvd
    x = (x * cud + cun * den) % x_den
    y = (y * cvd + cvn * den) % y_den
    return TorusPoint(Fraction(x, x_den), Fraction(y, y_den), r.lattice)


@dataclass(frozen=True)
class AffineEndo:
    """``[z] -> [r*z + c]`` with ``r`` a multiplier and ``c`` a rational torus point."""

    r: Multiplier
    c: TorusPoint

    def __post_init__(self):
        _same(self.r.lattice, self.c.lattice)

    @property
    def lattice(self) -> LatticeSpec:
        return self.r.lattice

    def __call__(self, A: TorusPoint) -> TorusPoint:
        return endo_apply(self, A)

    def __str__(self):
        return f"z -> ({self.r})z + {self.c}"


def endo_apply(f: AffineEndo, A: TorusPoint) -> TorusPoint:
    _same(f.lattice, A.lattice)
    return _affine(f.r, A, f.c)


def endo_compose(f: AffineEndo, g: AffineEndo) -> AffineEndo:
    """``f o g = f_{r_f r_g, r_f c_g + c_f}``."""
    _same(f.lattice, g.lattice)
    return AffineEndo(multiplier_mul(f.r, g.r), endo_apply(f, g.c))


def endo_heap(f: AffineEndo, g: AffineEndo, h: AffineEndo) -> AffineEndo:
    return AffineEndo(multiplier_heap(f.r, g.r, h.r), torus_heap(f.c, g.c, h.c))


@dataclass(frozen=True)
class CrossedElement:
    r: Multiplier
    point: TorusPoint

    def __post_init__(self):
        _same(self.r.lattice, self.point.lattice)

    def __str__(self):
        return f"({self.r}, {self.point})"

    def to_json(self) -> dict:
        return {"r": self.r.to_json(), "point": self.point.to_json()}


def crossed_mul(x: CrossedElement, y: CrossedElement) -> CrossedElement:
    """``(r, [a])(s, [b]) = (rs, [a + r*b])`` with base point ``[0]``."""
    _same(x.r.lattice, y.r.lattice)
    return CrossedElement(multiplier_mul(x.r, y.r), _affine(x.r, y.point, x.point))


def crossed_heap(x: CrossedElement, y: CrossedElement, z: CrossedElement) -> CrossedElement:
    return CrossedElement(multiplier_heap(x.r, y.r, z.r), torus_heap(x.point, y.point, z.point))


def crossed_to_endo(x: CrossedElement) -> AffineEndo:
    """``(r, [a]) -> f_{r, a}``."""
    return AffineEndo(x.r, x.point)


def random_point(rng: random.Random, lattice: LatticeSpec, max_den: int = 100) -> TorusPoint:
    du, dv = rng.randint(1, max_den), rng.randint(1, max_den)
    return TorusPoint(Fraction(rng.randrange(du), du), Fraction(rng.randrange(dv), dv), lattice)


def random_multiplier(rng: random.Random, lattice: LatticeSpec, bound: int = 10) -> Multiplier:
    g = z_pqd_generator(lattice)
    return Multiplier(rng.randint(-bound, bound), g * rng.randint(-bound, bound), lattice)


def random_endo(rng: random.Random, lattice: LatticeSpec, bound: int = 10) -> AffineEndo:
    return AffineEndo(random_multiplier(rng, lattice, bound), random_point(rng, lattice))


def parse_torus_point(lattice: LatticeSpec, text: str) -> TorusPoint:
    """``"u,v"`` with rational literals, e.g. ``"3/4,0"``."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"not a torus point literal: {text!r}")
    return lattice.point(rational(parts[0]), rational(parts[1]))


def parse_crossed(lattice: LatticeSpec, text: str) -> CrossedElement:
    """``"m,n;u,v"``."""
    try:
        mult, pt = text.split(";")
        m, n = (int(x) for x in mult.split(","))
    except ValueError:
        raise ValueError(f"not a crossed element literal (m,n;u,v): {text!r}") from None
    return CrossedElement(Multiplier(m, n, lattice), parse_torus_point(lattice, pt))
