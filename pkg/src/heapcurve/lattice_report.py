"""Cross-check of the printed CM examples against laws derived from the lattice model.

For each lattice the multiplication law of the crossed-product truss is derived
from :func:`multiplier_mul` (by evaluating it on a basis, the law being
bilinear) and compared symbolically with the formula as printed.  The
multiplier-ring generator is cross-validated against the direct stability
oracle.  The translation component is compared on sampled torus points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import sympy as sp

from .exact import QuadraticNumber, format_rational
from .lattice_torus import (
    EISENSTEIN,
    GAUSSIAN,
    TWO_I,
    CrossedElement,
    LatticeSpec,
    Multiplier,
    crossed_mul,
    lattice_stability_oracle,
    multiplier_mul,
    random_point,
    z_pqd_from_params,
    z_pqd_generator,
)

m, n, m2, n2 = sp.symbols("m n m' n'", integer=True)

MATCH, MISMATCH, INFO = "MATCH", "MISMATCH", "INFO"


@dataclass
class Check:
    label: str
    printed: str
    derived: str
    status: str

    def to_json(self) -> dict:
        return {"check": self.label, "printed": self.printed, "derived": self.derived, "status": self.status}


@dataclass
class ExampleRow:
    name: str
    reading: str
    generator: int
    checks: list[Check] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "example": self.name,
            "reading": self.reading,
            "generator": self.generator,
            "checks": [c.to_json() for c in self.checks],
        }


@dataclass
class ExamplesReport:
    rows: list[ExampleRow]

    @property
    def mismatches(self) -> list[tuple[str, Check]]:
        return [(r.name, c) for r in self.rows for c in r.checks if c.status == MISMATCH]

    def to_json(self) -> dict:
        return {
            "rows": [r.to_json() for r in self.rows],
            "mismatches": len(self.mismatches),
        }

    def render(self) -> str:
        out = []
        for r in self.rows:
            out.append(f"== {r.name} [{r.reading}]  Z(p,q,d) = {r.generator}Z")
            for c in r.checks:
                out.append(f"  {c.status:<8} {c.label}")
                out.append(f"           printed: {c.printed}")
                out.append(f"           derived: {c.derived}")
        out.append(f"{len(self.mismatches)} mismatch(es)")
        return "\n".join(out)


def bilinear_law(lattice: LatticeSpec) -> tuple[sp.Expr, sp.Expr]:
    """Symbolic ``(m + n tau)(m' + n' tau)`` in tau-coordinates, read off ``multiplier_mul``.

    ``n`` and ``n'`` are tau-coefficients; products are evaluated on the basis
    ``1, g*tau`` (``g`` the generator) and extended bilinearly.
    """
    g = z_pqd_generator(lattice)
    basis = [Multiplier(1, 0, lattice), Multiplier(0, g, lattice)]
    xs = [m, n / g]
    ys = [m2, n2 / g]
    first = second = sp.Integer(0)
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            prod = multiplier_mul(bi, bj)
            first += xs[i] * ys[j] * prod.m
            second += xs[i] * ys[j] * prod.n
    return sp.expand(first), sp.expand(second)


def raw_law(p: Fraction, N: Fraction) -> tuple[sp.Expr, sp.Expr]:
    """The same law from ``tau^2 = 2p tau - N`` alone, for readings that are not lattices."""
    P, NN = sp.Rational(p.numerator, p.denominator), sp.Rational(N.numerator, N.denominator)
    return sp.expand(m * m2 - n * n2 * NN), sp.expand(m * n2 + n * m2 + 2 * P * n * n2)


def _compare(label: str, printed: sp.Expr, printed_text: str, derived: sp.Expr) -> Check:
    same = sp.simplify(printed - derived) == 0
    return Check(label, f"{printed_text}  = {sp.sstr(sp.expand(printed))}", sp.sstr(derived), MATCH if same else MISMATCH)


def _subs_input(law: tuple[sp.Expr, sp.Expr], scale: int) -> tuple[sp.Expr, sp.Expr]:
    """Reparametrise so the printed symbol n stands for tau-coefficient ``scale*n``."""
    return tuple(sp.expand(e.subs({n: scale * n, n2: scale * n2}, simultaneous=True)) for e in law)


def cross_validate(lattice: LatticeSpec, n_range: int = 24) -> Check:
    g = z_pqd_generator(lattice)
    bad = [k for k in range(-n_range, n_range + 1) if lattice_stability_oracle(lattice, 0, k) != (k % g == 0)]
    derived = f"oracle agrees with {g}Z on n in [-{n_range}, {n_range}]" if not bad else f"disagrees at n = {bad}"
    return Check("Z(p,q,d) formula vs direct stability oracle", f"generator {g}", derived, MISMATCH if bad else MATCH)


def translation_check(
    lattice: LatticeSpec,
    label: str,
    printed_text: str,
    printed_multiplier: Callable[[int, int], QuadraticNumber],
    tau_coeff_scale: int = 1,
    bound: int = 2,
    samples: int = 5,
    seed: int = 0,
) -> Check:
    """Compare the printed ``[r a' + a]`` (computed in Q(sqrt(-d))) with :func:`crossed_mul`."""
    rng = random.Random(seed)
    g = z_pqd_generator(lattice)
    failures = 0
    total = 0
    for mm in range(-bound, bound + 1):
        for nn in range(-bound, bound + 1):
            tc = tau_coeff_scale * nn
            if tc % g:
                continue
            r = Multiplier(mm, tc, lattice)
            for _ in range(samples):
                a, a2 = random_point(rng, lattice), random_point(rng, lattice)
                s = Multiplier(1, 0, lattice)
                got = crossed_mul(CrossedElement(r, a), CrossedElement(s, a2)).point
                z = printed_multiplier(mm, nn) * lattice.to_complex(a2.u, a2.v) + lattice.to_complex(a.u, a.v)
                want = lattice.point(*lattice.from_complex(z))
                total += 1
                failures += got != want
    derived = f"crossed_mul agrees on {total - failures}/{total} sampled (m, n, a, a')"
    return Check(label, printed_text, derived, MATCH if not failures else MISMATCH)


def _gaussian_row() -> ExampleRow:
    lat = GAUSSIAN
    g = z_pqd_generator(lat)
    row = ExampleRow("Example tau = i", "d = 1", g)
    row.checks.append(Check("R(i) = Z[i]", "generator 1", f"generator {g}", MATCH if g == 1 else MISMATCH))
    row.checks.append(cross_validate(lat))
    first, second = bilinear_law(lat)
    row.checks.append(_compare("product, 1-component", m * m2 - n * n2, "mm' - nn'", first))
    row.checks.append(_compare("product, i-component", m * n2 + n * m2, "mn' + nm'", second))
    row.checks.append(translation_check(
        lat, "product, point component", "[(m+in)a' + a]",
        lambda a, b: QuadraticNumber(Fraction(a), Fraction(b), 1),
    ))
    return row


def _two_i_row() -> ExampleRow:
    lat = TWO_I
    g = z_pqd_generator(lat)
    row = ExampleRow("Example tau = 2i", "d = 1", g)
    # R(2i) = {m + n*tau} = {m + 2n i}: generator 1 in tau-coordinates
    row.checks.append(Check("R(2i) = {m + 2ni}", "generator 1 (tau = 2i)", f"generator {g}", MATCH if g == 1 else MISMATCH))
    row.checks.append(cross_validate(lat))
    first, second = bilinear_law(lat)
    # printed second component is the coefficient of i, which is twice the tau-coefficient
    row.checks.append(_compare("product, 1-component", m * m2 - 4 * n * n2, "mm' - 4nn'", first))
    row.checks.append(_compare("product, i-component", 2 * (m * n2 + n * m2), "2(mn' + nm')", 2 * second))
    row.checks.append(translation_check(
        lat, "product, point component", "[(m+2ni)a' + a]",
        lambda a, b: QuadraticNumber(Fraction(a), Fraction(2 * b), 1),
    ))
    return row


def _general_row(lat: LatticeSpec) -> ExampleRow:
    g = z_pqd_generator(lat)
    row = ExampleRow(f"General CM law at {lat}", f"p={format_rational(lat.p)}, q={format_rational(lat.q)}, d={lat.d}", g)
    row.checks.append(cross_validate(lat))
    first, second = _subs_input(bilinear_law(lat), 1)
    P = sp.Rational(lat.p.numerator, lat.p.denominator)
    NN = sp.Rational(lat.N.numerator, lat.N.denominator)
    row.checks.append(_compare("product, 1-component", m * m2 - n * n2 * NN, "mm' - nn'(p^2+dq^2)", first))
    row.checks.append(_compare("product, tau-component", n + n2 + 2 * n * n2 * P, "n + n' + 2nn'p", second))
    row.checks.append(Check("product, tau-component (derived law)", "-", sp.sstr(second), INFO))
    row.checks.append(translation_check(
        lat, "product, point component", "[(m + n(p + q sqrt(-d)))a' + a]",
        lambda a, b: QuadraticNumber(Fraction(a), Fraction(0), lat.d) + lat.tau * b,
    ))
    return row


def _omega_rows() -> list[ExampleRow]:
    rows = []
    printed_first = m * m2 + 2 * n * n2
    printed_second = 2 * (n + n2 - n * n2)

    lat = EISENSTEIN
    g = z_pqd_generator(lat)
    row = ExampleRow("Example tau = omega", "positive-d convention: p=-1/2, q=1/2, d=3", g)
    row.checks.append(Check("Z(p,q,d)", "2Z", f"{g}Z", MATCH if g == 2 else MISMATCH))
    row.checks.append(cross_validate(lat))
    first, second = _subs_input(bilinear_law(lat), 2)
    row.checks.append(_compare("product (m,2n)(m',2n'), 1-component", printed_first, "mm' + 2nn'", first))
    row.checks.append(_compare("product (m,2n)(m',2n'), tau-component", printed_second, "2(n + n' - nn')", second))
    row.checks.append(translation_check(
        lat, "product, point component", "[(m - n + n sqrt(-3))a' + a]",
        lambda a, b: QuadraticNumber(Fraction(a - b), Fraction(b), 3),
        tau_coeff_scale=2,
    ))
    rows.append(row)

    # literal reading of the printed parameters; not a lattice, so only the raw formulas apply
    p_lit, q_lit, d_lit = Fraction(1, 2), Fraction(1, 2), -3
    g_lit = z_pqd_from_params(p_lit, q_lit, d_lit)
    row = ExampleRow("Example tau = omega", "literal reading: Z(1/2, 1/2, -3)", g_lit)
    row.checks.append(Check("Z(p,q,d)", "2Z", f"{g_lit}Z", MATCH if g_lit == 2 else MISMATCH))
    first, second = _subs_input(raw_law(p_lit, p_lit * p_lit + d_lit * q_lit * q_lit), 2)
    row.checks.append(_compare("product (m,2n)(m',2n'), 1-component", printed_first, "mm' + 2nn'", first))
    row.checks.append(_compare("product (m,2n)(m',2n'), tau-component", printed_second, "2(n + n' - nn')", second))
    rows.append(row)
    return rows


DEFAULT_GENERAL = LatticeSpec(Fraction(1, 3), Fraction(1, 3), 2)


def cm_examples_report(general: Optional[LatticeSpec] = None) -> ExamplesReport:
    """Rows for tau = i, tau = 2i, the general CM law at ``general`` and tau = omega (two readings)."""
    rows = [_gaussian_row(), _two_i_row(), _general_row(general or DEFAULT_GENERAL)]
    rows += _omega_rows()
    return ExamplesReport(rows)
