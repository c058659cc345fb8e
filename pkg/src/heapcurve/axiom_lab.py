"""Exhaustive and seeded-sampled checks of heap, truss, group and ring axioms.

A :class:`Carrier` is a finite list of elements plus optional ternary and
binary operations.  Small carriers that are closed under their operations are
first turned into Cayley tables so exhaustive checks run vectorised over
integer indices; everything else is checked by calling the operations directly.
Each axiom predicate is written once and runs on both representations.
"""

from __future__ import annotations

import itertools
import operator
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np

# carrier size above which Cayley tables are not built
TABULATE_LIMIT = 64

# largest carrier checked exhaustively under ``Mode.auto``, keyed by axiom arity
AUTO_CUTOVER = {1: 10**9, 2: 2000, 3: 60, 4: 32, 5: 20}


def worker_count() -> int:
    env = os.environ.get("HEAPCURVE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


@dataclass(frozen=True)
class Mode:
    kind: str = "exhaustive"
    samples: int = 10_000
    seed: int = 0

    @classmethod
    def exhaustive(cls) -> Mode:
        return cls("exhaustive")

    @classmethod
    def sampled(cls, samples: int, seed: int = 0) -> Mode:
        return cls("sampled", samples, seed)

    @classmethod
    def auto(cls, samples: int = 10_000, seed: int = 0) -> Mode:
        return cls("auto", samples, seed)

    def resolve(self, arity: int, size: int) -> Mode:
        if self.kind != "auto":
            return self
        if size <= AUTO_CUTOVER.get(arity, 0):
            return Mode.exhaustive()
        return Mode.sampled(self.samples, self.seed)

    def __str__(self):
        if self.kind == "sampled":
            return f"sampled({self.samples}, {self.seed})"
        return self.kind


@dataclass
class AxiomReport:
    axiom: str
    mode: str
    passed: bool
    cases: int
    counterexample: Optional[tuple] = None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self, show: Callable[[Any], Any] = str) -> dict:
        verdict: Any = "pass"
        if not self.passed:
            verdict = {"fail": [show(e) for e in self.counterexample]}
        return {"axiom": self.axiom, "mode": self.mode, "verdict": verdict, "cases": self.cases}

    def line(self, show: Callable[[Any], Any] = str) -> str:
        text = f"{self.axiom}: {self.verdict} [{self.mode}, {self.cases} cases]"
        if not self.passed:
            text += " counterexample: (" + "; ".join(str(show(e)) for e in self.counterexample) + ")"
        return text


@dataclass
class Carrier:
    elements: Sequence[Any]
    ternary: Optional[Callable[[Any, Any, Any], Any]] = None
    binary_mul: Optional[Callable[[Any, Any], Any]] = None
    equality: Callable[[Any, Any], bool] = operator.eq
    show: Callable[[Any], Any] = str
    tabulate: bool = True
    _index: Optional[dict] = field(default=None, init=False, repr=False)
    _tables: Any = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.elements = list(self.elements)
        try:
            index = {}
            for i, e in enumerate(self.elements):
                index.setdefault(e, i)
            self._index = index if self.equality is operator.eq else None
            distinct = len(index) == len(self.elements)
        except TypeError:
            self._index = None
            distinct = True
        if self._index is None or self.equality is not operator.eq:
            distinct = all(
                not self.equality(a, b) for a, b in itertools.combinations(self.elements, 2)
            )
        if not distinct:
            raise ValueError("carrier elements must be pairwise distinct")

    def __len__(self):
        return len(self.elements)

    def index_of(self, x) -> Optional[int]:
        if self._index is not None:
            return self._index.get(x)
        for i, e in enumerate(self.elements):
            if self.equality(e, x):
                return i
        return None

    def contains(self, x) -> bool:
        return self.index_of(x) is not None

    def cayley_tables(self):
        """``(ternary, mul)`` index tables, or ``None`` if unavailable or not closed."""
        if self._tables is not None:
            return self._tables or None
        self._tables = False
        k = len(self.elements)
        if not self.tabulate or k > TABULATE_LIMIT or self._index is None:
            return None
        els = self.elements
        t_table = m_table = None
        if self.ternary is not None:
            t_table = np.empty((k, k, k), dtype=np.int32)
            for i, a in enumerate(els):
                for j, b in enumerate(els):
                    for l, c in enumerate(els):
                        r = self._index.get(self.ternary(a, b, c))
                        if r is None:
                            return None
                        t_table[i, j, l] = r
        if self.binary_mul is not None:
            m_table = np.empty((k, k), dtype=np.int32)
            for i, a in enumerate(els):
                for j, b in enumerate(els):
                    r = self._index.get(self.binary_mul(a, b))
                    if r is None:
                        return None
                    m_table[i, j] = r
        self._tables = (t_table, m_table)
        return self._tables


class _TableOps:
    def __init__(self, t_table, m_table, zero=None):
        self.T, self.M, self.zero = t_table, m_table, zero

    def t(self, a, b, c):
        return self.T[a, b, c]

    def m(self, a, b):
        return self.M[a, b]

    eq = staticmethod(np.equal)
    both = staticmethod(np.logical_and)

    def member(self, x):
        return np.ones(np.shape(x), dtype=bool)


class _DirectOps:
    def __init__(self, carrier: Carrier, zero=None):
        self.c, self.zero = carrier, zero

    def t(self, a, b, c):
        return self.c.ternary(a, b, c)

    def m(self, a, b):
        return self.c.binary_mul(a, b)

    def eq(self, x, y):
        return self.c.equality(x, y)

    @staticmethod
    def both(x, y):
        return x and y

    def member(self, x):
        return self.c.contains(x)


def _run(carrier: Carrier, name: str, arity: int, pred, mode: Mode, zero=None) -> AxiomReport:
    k = len(carrier)
    mode = mode.resolve(arity, k)
    tables = carrier.cayley_tables()
    if k == 0:
        return AxiomReport(name, str(mode), True, 0)

    if tables is not None:
        zi = carrier.index_of(zero) if zero is not None else None
        ops = _TableOps(*tables, zero=zi)
        if mode.kind == "exhaustive" and arity == 1:
            chunks = iter([np.arange(k, dtype=np.int32)[None, :]])
        elif mode.kind == "exhaustive":
            # one chunk per value of the first coordinate bounds memory at k^(arity-1)
            rest = np.indices((k,) * (arity - 1), dtype=np.int32).reshape(arity - 1, -1)
            chunks = (
                np.vstack([np.full((1, rest.shape[1]), i, dtype=np.int32), rest]) for i in range(k)
            )
        else:
            rng = random.Random(mode.seed)
            chunks = iter([np.array(
                [[rng.randrange(k) for _ in range(arity)] for _ in range(mode.samples)],
                dtype=np.int32,
            ).T.reshape(arity, -1)])
        cases = 0
        for grids in chunks:
            ok = np.asarray(pred(ops, *grids), dtype=bool)
            if not ok.all():
                bad = int(np.argmin(ok))
                cex = tuple(carrier.elements[int(g[bad])] for g in grids)
                return AxiomReport(name, str(mode), False, cases + bad + 1, cex)
            cases += ok.size
        return AxiomReport(name, str(mode), True, cases)

    ops = _DirectOps(carrier, zero=zero)
    els = carrier.elements
    if mode.kind == "sampled":
        rng = random.Random(mode.seed)
        cases = 0
        for _ in range(mode.samples):
            xs = tuple(els[rng.randrange(k)] for _ in range(arity))
            cases += 1
            if not pred(ops, *xs):
                return AxiomReport(name, str(mode), False, cases, xs)
        return AxiomReport(name, str(mode), True, cases)

    def scan(first: int):
        n = 0
        for rest in itertools.product(els, repeat=arity - 1):
            xs = (els[first],) + rest
            n += 1
            if not pred(ops, *xs):
                return n, xs
        return n, None

    workers = min(worker_count(), k)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scan, range(k)))
    else:
        results = []
        for i in range(k):
            results.append(scan(i))
            if results[-1][1] is not None:
                break
    cases = 0
    for n, cex in results:
        cases += n
        if cex is not None:
            return AxiomReport(name, str(mode), False, cases, cex)
    return AxiomReport(name, str(mode), True, cases)


# axiom predicates, shared by the table and direct evaluators

def _para_assoc(o, a, b, c, d, e):
    return o.eq(o.t(o.t(a, b, c), d, e), o.t(a, b, o.t(c, d, e)))


def _malcev(o, a, b):
    return o.both(o.eq(o.t(a, b, b), a), o.eq(o.t(b, b, a), a))


def _symmetry(o, a, b, c):
    return o.eq(o.t(a, b, c), o.t(c, b, a))


def _mul_assoc(o, a, b, c):
    return o.eq(o.m(o.m(a, b), c), o.m(a, o.m(b, c)))


def _truss_left(o, a, b, c, d):
    return o.eq(o.m(a, o.t(b, c, d)), o.t(o.m(a, b), o.m(a, c), o.m(a, d)))


def _truss_right(o, a, b, c, d):
    return o.eq(o.m(o.t(a, b, c), d), o.t(o.m(a, d), o.m(b, d), o.m(c, d)))


def _add(o, a, b):
    return o.t(a, o.zero, b)


def _neg(o, a):
    return o.t(o.zero, a, o.zero)


def _add_assoc(o, a, b, c):
    return o.eq(_add(o, _add(o, a, b), c), _add(o, a, _add(o, b, c)))


def _add_comm(o, a, b):
    return o.eq(_add(o, a, b), _add(o, b, a))


def _add_neutral(o, a):
    return o.both(o.eq(_add(o, a, o.zero), a), o.eq(_add(o, o.zero, a), a))


def _add_inverse(o, a):
    n = _neg(o, a)
    return o.both(o.member(n), o.eq(_add(o, a, n), o.zero))


def _ring_left(o, a, b, c):
    return o.eq(o.m(a, _add(o, b, c)), _add(o, o.m(a, b), o.m(a, c)))


def _ring_right(o, a, b, c):
    return o.eq(o.m(_add(o, a, b), c), _add(o, o.m(a, c), o.m(b, c)))


HEAP_AXIOMS = (
    ("para-associativity", 5, _para_assoc),
    ("malcev", 2, _malcev),
    ("symmetry", 3, _symmetry),
)

TRUSS_AXIOMS = (
    ("mul-associativity", 3, _mul_assoc),
    ("left-distributivity", 4, _truss_left),
    ("right-distributivity", 4, _truss_right),
)

RING_AXIOMS = (
    ("add-associativity", 3, _add_assoc),
    ("add-commutativity", 2, _add_comm),
    ("add-neutral", 1, _add_neutral),
    ("add-inverse", 1, _add_inverse),
    ("mul-associativity", 3, _mul_assoc),
    ("left-distributivity", 3, _ring_left),
    ("right-distributivity", 3, _ring_right),
)


def check_heap_axioms(carrier: Carrier, mode: Mode = Mode.auto()) -> list[AxiomReport]:
    if carrier.ternary is None:
        raise ValueError("carrier has no ternary operation")
    return [_run(carrier, name, k, pred, mode) for name, k, pred in HEAP_AXIOMS]


def check_truss_axioms(carrier: Carrier, mode: Mode = Mode.auto()) -> list[AxiomReport]:
    if carrier.binary_mul is None:
        raise ValueError("carrier has no multiplication")
    reports = check_heap_axioms(carrier, mode)
    reports += [_run(carrier, name, k, pred, mode) for name, k, pred in TRUSS_AXIOMS]
    return reports


def check_group_axioms(carrier: Carrier, zero, mode: Mode = Mode.auto()) -> list[AxiomReport]:
    """Abelian-group axioms of the retract ``a + b = [a, zero, b]``."""
    if carrier.ternary is None:
        raise ValueError("carrier has no ternary operation")
    if not carrier.contains(zero):
        raise ValueError("zero is not an element of the carrier")
    return [_run(carrier, name, k, pred, mode, zero=zero) for name, k, pred in RING_AXIOMS[:4]]


def check_ring_axioms(carrier: Carrier, zero, mode: Mode = Mode.auto()) -> list[AxiomReport]:
    if carrier.binary_mul is None:
        raise ValueError("carrier has no multiplication")
    reports = check_group_axioms(carrier, zero, mode)
    reports += [_run(carrier, name, k, pred, mode, zero=zero) for name, k, pred in RING_AXIOMS[4:]]
    return reports


def all_passed(reports: Sequence[AxiomReport]) -> bool:
    return all(r.passed for r in reports)


def replay(carrier: Carrier, report: AxiomReport, zero=None) -> bool:
    """Re-evaluate a report's counterexample through the carrier's own operations.

    Returns the predicate's value, so a genuine counterexample replays to False.
    """
    preds = {name: pred for name, _, pred in HEAP_AXIOMS + TRUSS_AXIOMS}
    ring_preds = {name: pred for name, _, pred in RING_AXIOMS}
    pred = ring_preds[report.axiom] if zero is not None else preds[report.axiom]
    return bool(pred(_DirectOps(carrier, zero=zero), *report.counterexample))
