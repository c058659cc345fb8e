"""Endomorphisms of a finite curve as a truss.

An :class:`Endo` is stored extensionally: a tuple giving the index of the image
of every enumerated point, together with the expression it was built from.
Composition and the pointwise heap are then index lookups against the curve's
heap table, while :func:`evaluate` recomputes any expression from scratch with
the chord-tangent primitives so the two routes can be compared.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Union

import numpy as np

from .chord_tangent import (
    INFINITY,
    CurvePoint,
    NotOnCurve,
    WeierstrassCurve,
    heap_op,
    point_index,
    scalar_mul,
)


class EndoInvariantError(RuntimeError):
    pass


class NotAnIsogeny(ValueError):
    pass


class CurveMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Expr:
    """Construction expression: ``id``, ``frob``, ``const``, ``trans``, ``scalar``,
    ``compose`` or ``heap`` applied to points, ints or sub-expressions."""

    op: str
    args: tuple = ()

    def __str__(self):
        if self.op in ("id", "frob"):
            return self.op
        if self.op == "const":
            return f"const({self.args[0]})"
        if self.op == "trans":
            return f"trans({self.args[0]};{self.args[1]})"
        if self.op == "scalar":
            return f"scalar({self.args[0]};{self.args[1]})"
        return f"{self.op}(" + ", ".join(str(a) for a in self.args) + ")"

    @property
    def depth(self) -> int:
        if self.op in ("compose", "heap"):
            return 1 + max(a.depth for a in self.args)
        return 0


class EndoSpace:
    """A curve's enumerated points with a precomputed chord-tangent heap table."""

    def __init__(self, curve: WeierstrassCurve):
        self.curve = curve
        self.points = curve.points
        self.index = point_index(self.points)
        self.n = len(self.points)

    @cached_property
    def heap_table(self) -> np.ndarray:
        pts, n = self.points, self.n
        table = np.empty((n, n, n), dtype=np.int32)
        for i, A in enumerate(pts):
            for j, B in enumerate(pts):
                for k, C in enumerate(pts):
                    table[i, j, k] = self.index[heap_op(self.curve, A, B, C)]
        return table

    def idx(self, P: CurvePoint) -> int:
        try:
            return self.index[P]
        except KeyError:
            raise NotOnCurve(f"{P} is not on {self.curve}") from None

    def heap_idx(self, a: int, b: int, c: int) -> int:
        return int(self.heap_table[a, b, c])

    @property
    def frobenius_available(self) -> bool:
        return self.curve.a.in_base_field() and self.curve.b.in_base_field()

    def parse_point(self, text: str) -> CurvePoint:
        return self.curve.parse_point(text)

    def parse_expr(self, text: str, base: CurvePoint = INFINITY) -> Expr:
        return _Parser(self, text, base).parse()


@dataclass(frozen=True)
class Endo:
    space: EndoSpace = field(compare=False, repr=False)
    table: tuple
    expr: Expr = field(compare=False)

    def __call__(self, P: CurvePoint) -> CurvePoint:
        return self.space.points[self.table[self.space.idx(P)]]

    def __hash__(self):
        return hash(self.table)

    def __eq__(self, other):
        if not isinstance(other, Endo):
            return NotImplemented
        return self.space is other.space and self.table == other.table

    def __str__(self):
        return str(self.expr)

    @property
    def is_constant(self) -> bool:
        return len(set(self.table)) <= 1

    def fixes(self, O: CurvePoint) -> bool:
        i = self.space.idx(O)
        return self.table[i] == i


@dataclass(frozen=True)
class Isogeny:
    """An endomorphism together with a base point that it fixes."""

    endo: Endo
    base: CurvePoint

    def __post_init__(self):
        if not self.endo.fixes(self.base):
            raise NotAnIsogeny(f"{self.endo} does not fix {self.base}")

    def __call__(self, P: CurvePoint) -> CurvePoint:
        return self.endo(P)


def frobenius_point(P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    p = P.x.field.p
    return CurvePoint(P.x ** p, P.y ** p)


def evaluate(expr: Expr, curve: WeierstrassCurve, P: CurvePoint) -> CurvePoint:
    """Evaluate ``expr`` at ``P`` directly with chord-tangent geometry."""
    op, args = expr.op, expr.args
    if op == "id":
        return P
    if op == "frob":
        return frobenius_point(P)
    if op == "const":
        return args[0]
    if op == "trans":
        return heap_op(curve, P, args[0], args[1])
    if op == "scalar":
        return scalar_mul(curve, args[1], args[0], P)
    if op == "compose":
        return evaluate(args[0], curve, evaluate(args[1], curve, P))
    if op == "heap":
        f, g, h = (evaluate(a, curve, P) for a in args)
        return heap_op(curve, f, g, h)
    raise ValueError(f"unknown expression node {op!r}")


def check_endo(f: Endo, samples: int = 10_000, seed: int = 0) -> None:
    """Raise :class:`EndoInvariantError` unless ``f`` matches its expression and preserves the heap."""
    sp = f.space
    for i, P in enumerate(sp.points):
        if sp.index.get(evaluate(f.expr, sp.curve, P)) != f.table[i]:
            raise EndoInvariantError(f"table of {f} disagrees with its expression at {P}")
    H = sp.heap_table
    t = np.asarray(f.table)
    n = sp.n
    if n <= 20:
        a, b, c = np.indices((n, n, n)).reshape(3, -1)
    else:
        rng = random.Random(seed)
        a, b, c = np.array([[rng.randrange(n) for _ in range(3)] for _ in range(samples)]).T
    ok = t[H[a, b, c]] == H[t[a], t[b], t[c]]
    if not ok.all():
        bad = int(np.argmin(ok))
        tri = tuple(str(sp.points[int(x[bad])]) for x in (a, b, c))
        raise EndoInvariantError(f"{f} does not preserve the heap at {tri}")


def _from_expr(space: EndoSpace, expr: Expr) -> Endo:
    table = tuple(space.idx(evaluate(expr, space.curve, P)) for P in space.points)
    return Endo(space, table, expr)


def make_generator(space: EndoSpace, expr: Union[Expr, str], check: bool = True) -> Endo:
    """Build a generator endomorphism (``id``, ``frob``, ``const``, ``trans``, ``scalar``)."""
    if isinstance(expr, str):
        expr = space.parse_expr(expr)
    if expr.op not in ("id", "frob", "const", "trans", "scalar"):
        raise ValueError(f"{expr.op!r} is not a generator")
    points = [a for a in expr.args if isinstance(a, CurvePoint)]
    space.curve.check(*points)
    if expr.op == "frob" and not space.frobenius_available:
        raise ValueError("Frobenius needs curve coefficients in the prime field")
    f = _from_expr(space, expr)
    if check:
        check_endo(f)
    return f


def from_expr(space: EndoSpace, expr: Union[Expr, str], check: bool = True) -> Endo:
    """Build any endomorphism from an expression (string or :class:`Expr`)."""
    if isinstance(expr, str):
        expr = space.parse_expr(expr)
    if expr.op == "compose":
        f, g = (from_expr(space, a, check=False) for a in expr.args)
        out = endo_compose(f, g)
    elif expr.op == "heap":
        f, g, h = (from_expr(space, a, check=False) for a in expr.args)
        out = endo_heap(f, g, h)
    else:
        return make_generator(space, expr, check=check)
    out = Endo(space, out.table, expr)
    if check:
        check_endo(out)
    return out


def identity(space: EndoSpace) -> Endo:
    return make_generator(space, Expr("id"), check=False)


def frobenius_endo(space: EndoSpace) -> Endo:
    return make_generator(space, Expr("frob"), check=False)


def const(space: EndoSpace, A: CurvePoint) -> Endo:
    return make_generator(space, Expr("const", (A,)), check=False)


def translate(space: EndoSpace, X: CurvePoint, Y: CurvePoint) -> Endo:
    """``A -> [A, X, Y]``."""
    return make_generator(space, Expr("trans", (X, Y)), check=False)


def scalar(space: EndoSpace, n: int, O: CurvePoint) -> Endo:
    return make_generator(space, Expr("scalar", (n, O)), check=False)


def _same_space(*fs: Endo) -> EndoSpace:
    sp = fs[0].space
    for f in fs[1:]:
        if f.space is not sp:
            raise CurveMismatch("endomorphisms of different curves")
    return sp


def endo_compose(f: Endo, g: Endo) -> Endo:
    sp = _same_space(f, g)
    ft = f.table
    return Endo(sp, tuple(ft[i] for i in g.table), Expr("compose", (f.expr, g.expr)))


def endo_heap(f: Endo, g: Endo, h: Endo) -> Endo:
    sp = _same_space(f, g, h)
    H = sp.heap_table
    table = tuple(int(H[a, b, c]) for a, b, c in zip(f.table, g.table, h.table))
    return Endo(sp, table, Expr("heap", (f.expr, g.expr, h.expr)))


def retract_sum(f: Endo, g: Endo, O: CurvePoint) -> Endo:
    """``f + g = [f, c_O, g]``."""
    return endo_heap(f, const(f.space, O), g)


def decompose(f: Endo, O: CurvePoint) -> tuple[Isogeny, CurvePoint]:
    """Split ``f`` into an isogeny fixing ``O`` and the translation point ``f(O)``."""
    sp = f.space
    T = f(O)
    phi = endo_heap(f, const(sp, T), const(sp, O))
    return Isogeny(phi, O), T


def recompose(phi: Union[Isogeny, Endo], T: CurvePoint, O: CurvePoint) -> Endo:
    """``A -> [phi(A), O, T]``."""
    endo = phi.endo if isinstance(phi, Isogeny) else phi
    if not endo.fixes(O):
        raise NotAnIsogeny(f"{endo} does not fix {O}")
    sp = endo.space
    return endo_heap(endo, const(sp, O), const(sp, T))


def ring_retract_mul(f: Endo, g: Endo, O: CurvePoint) -> Endo:
    """``f . g = f o g - c_{f(O)}``, i.e. ``A -> [f(g(A)), f(O), O]``."""
    sp = _same_space(f, g)
    return endo_heap(endo_compose(f, g), const(sp, f(O)), const(sp, O))


def no_ring_witness(space: EndoSpace, theta: Endo) -> Optional[Endo]:
    """An endomorphism showing that ``theta`` cannot absorb every ``f``.

    Non-constant ``theta`` fails ``theta o f == theta`` for a constant ``f``;
    a constant ``theta = c_O`` fails ``f o theta == theta`` for any ``f`` moving ``O``.
    """
    if space.n < 2:
        return None
    if not theta.is_constant:
        for A in space.points:
            f = const(space, A)
            if endo_compose(theta, f) != theta:
                return f
        return None
    O = space.points[theta.table[0]]
    for Y in space.points:
        if Y != O:
            f = translate(space, O, Y)
            if f(O) != O:
                return f
    return None


def left_distributivity_defect(f: Endo, g: Endo, h: Endo, O: CurvePoint) -> Endo:
    """``A -> [f((g+h)(A)), (f o g + f o h)(A), O]`` for the retract at ``O``; equals ``c_{-f(O)}``."""
    lhs = endo_compose(f, retract_sum(g, h, O))
    rhs = retract_sum(endo_compose(f, g), endo_compose(f, h), O)
    return endo_heap(lhs, rhs, const(f.space, O))


def crossed_product_general(
    O: CurvePoint, phi: Isogeny, A: CurvePoint, psi: Isogeny, B: CurvePoint
) -> tuple[Isogeny, CurvePoint]:
    """``(phi, A)(psi, B) = (phi o psi, [A, O, phi(B)])``."""
    for iso in (phi, psi):
        if iso.base != O:
            raise NotAnIsogeny(f"{iso.endo} is attached to {iso.base}, not {O}")
    sp = phi.endo.space
    prod = Isogeny(endo_compose(phi.endo, psi.endo), O)
    return prod, heap_op(sp.curve, A, O, phi(B))


def crossed_ring_mul(
    O: CurvePoint, phi: Isogeny, A: CurvePoint, psi: Isogeny, B: CurvePoint
) -> tuple[Isogeny, CurvePoint]:
    """``(phi, A) . (psi, B) = (phi o psi, phi(B))``."""
    for iso in (phi, psi):
        if iso.base != O:
            raise NotAnIsogeny(f"{iso.endo} is attached to {iso.base}, not {O}")
    return Isogeny(endo_compose(phi.endo, psi.endo), O), phi(B)


def crossed_to_endo(O: CurvePoint, phi: Isogeny, A: CurvePoint) -> Endo:
    """``(phi, A) -> [B -> [phi(B), O, A]]``."""
    if phi.base != O:
        raise NotAnIsogeny(f"{phi.endo} is attached to {phi.base}, not {O}")
    sp = phi.endo.space
    return endo_heap(phi.endo, const(sp, O), const(sp, A))


def generators(space: EndoSpace, O: CurvePoint, scalar_range: int = 3) -> list[Endo]:
    gens = [identity(space)]
    if space.frobenius_available:
        gens.append(frobenius_endo(space))
    gens += [const(space, A) for A in space.points]
    gens += [translate(space, O, T) for T in space.points]
    gens += [scalar(space, n, O) for n in range(-scalar_range, scalar_range + 1)]
    return gens


_ROW_HASH = np.random.default_rng(0x5EED).integers(1, 2**63, size=4096, dtype=np.uint64) | np.uint64(1)


def _first_unique_rows(rows: np.ndarray) -> np.ndarray:
    """Indices of the first occurrence of each distinct row, in original order."""
    width = rows.shape[1]
    if width <= len(_ROW_HASH):
        with np.errstate(over="ignore"):
            keys = (rows.astype(np.uint64) * _ROW_HASH[:width]).sum(axis=1, dtype=np.uint64)
        _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
        # a hash collision would merge distinct rows; confirm every row equals its representative
        if np.array_equal(rows, rows[first[inverse.ravel()]]):
            return np.sort(first)
    packed = np.ascontiguousarray(rows.astype(np.uint8) if rows.max(initial=0) < 256 else rows)
    view = packed.view(np.dtype((np.void, packed.dtype.itemsize * width))).ravel()
    _, first = np.unique(view, return_index=True)
    return np.sort(first)


def generate_endo_set(
    space: EndoSpace, O: CurvePoint, depth: int = 2, scalar_range: int = 3, check: bool = True
) -> list[Endo]:
    """Closure of the generators under composition and heap, ``depth`` levels deep.

    Duplicates (equal tables) are dropped, keeping the first expression in
    generation order: generators, then per level all compositions ``(i, j)``
    followed by all heaps ``(i, j, k)`` of the previous level's members.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    space.curve.check(O)
    members: list[Endo] = []
    seen: set[tuple] = set()
    for g in generators(space, O, scalar_range):
        if g.table not in seen:
            seen.add(g.table)
            members.append(g)
    H = space.heap_table
    for _ in range(depth):
        level = list(members)
        k = len(level)
        T = np.array([f.table for f in level], dtype=np.int32)
        added = 0
        comp = T[np.arange(k)[:, None, None], T[None, :, :]].reshape(k * k, -1)
        for r in _first_unique_rows(comp):
            tab = tuple(int(x) for x in comp[r])
            if tab not in seen:
                seen.add(tab)
                i, j = divmod(int(r), k)
                members.append(Endo(space, tab, Expr("compose", (level[i].expr, level[j].expr))))
                added += 1
        for i in range(k):
            batch = H[T[i][None, None, :], T[:, None, :], T[None, :, :]].reshape(k * k, -1)
            for r in _first_unique_rows(batch):
                tab = tuple(int(x) for x in batch[r])
                if tab not in seen:
                    seen.add(tab)
                    j, l = divmod(int(r), k)
                    expr = Expr("heap", (level[i].expr, level[j].expr, level[l].expr))
                    members.append(Endo(space, tab, expr))
                    added += 1
        if not added:
            break
    if check:
        for f in members:
            check_endo(f)
    return members


def is_closed(endos: list[Endo]) -> bool:
    """True when ``endos`` is closed under composition and the pointwise heap."""
    if not endos:
        return True
    sp = endos[0].space
    tables = {f.table for f in endos}
    T = np.array([f.table for f in endos], dtype=np.int32)
    k = len(endos)
    comp = T[np.arange(k)[:, None, None], T[None, :, :]].reshape(k * k, -1)
    if any(tuple(int(x) for x in comp[r]) not in tables for r in _first_unique_rows(comp)):
        return False
    H = sp.heap_table
    for i in range(k):
        batch = H[T[i][None, None, :], T[:, None, :], T[None, :, :]].reshape(k * k, -1)
        for r in _first_unique_rows(batch):
            if tuple(int(x) for x in batch[r]) not in tables:
                return False
    return True


class _Parser:
    """Prefix grammar, e.g. ``heap(id, const(0,0), trans(0,0;2,1))``."""

    _NAME = re.compile(r"[A-Za-z_]+")

    def __init__(self, space: EndoSpace, text: str, base: CurvePoint):
        self.space, self.s, self.pos, self.base = space, text, 0, base

    def error(self, msg: str):
        raise ValueError(f"bad expression {self.s!r} at {self.pos}: {msg}")

    def skip(self):
        while self.pos < len(self.s) and self.s[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        self.skip()
        if not self.s.startswith(ch, self.pos):
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Expr:
        e = self.expr()
        self.skip()
        if self.pos != len(self.s):
            self.error("trailing input")
        return e

    def raw_args(self) -> list[str]:
        self.expect("(")
        end = self.s.find(")", self.pos)
        if end < 0:
            self.error("unclosed '('")
        body = self.s[self.pos:end]
        self.pos = end + 1
        return [part.strip() for part in body.split(";")]

    def point(self, text: str) -> CurvePoint:
        try:
            return self.space.parse_point(text)
        except ValueError as exc:
            self.error(str(exc))

    def expr(self) -> Expr:
        self.skip()
        m = self._NAME.match(self.s, self.pos)
        if not m:
            self.error("expected a name")
        name = m.group().lower()
        self.pos = m.end()
        if name in ("id", "identity", "frob", "frobenius"):
            self.skip()
            if self.s.startswith("(", self.pos):
                self.expect("(")
                self.expect(")")
            return Expr("id" if name.startswith("id") else "frob")
        if name == "const":
            args = self.raw_args()
            if len(args) != 1:
                self.error("const takes one point")
            return Expr("const", (self.point(args[0]),))
        if name in ("trans", "translate"):
            args = self.raw_args()
            if len(args) != 2:
                self.error("trans takes two points separated by ';'")
            return Expr("trans", (self.point(args[0]), self.point(args[1])))
        if name == "scalar":
            args = self.raw_args()
            try:
                n = int(args[0])
            except ValueError:
                self.error("scalar needs an integer")
            O = self.point(args[1]) if len(args) > 1 else self.base
            return Expr("scalar", (n, O))
        if name in ("compose", "heap"):
            self.expect("(")
            args = [self.expr()]
            self.skip()
            while self.s.startswith(",", self.pos):
                self.pos += 1
                args.append(self.expr())
                self.skip()
            self.expect(")")
            want = 2 if name == "compose" else 3
            if len(args) != want:
                self.error(f"{name} takes {want} arguments")
            return Expr(name, tuple(args))
        self.error(f"unknown name {name!r}")
