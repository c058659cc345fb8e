"""Truss census: generate endomorphism sets over several curves and check their axioms."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import axiom_lab as lab
from . import endo_truss as et
from .chord_tangent import WeierstrassCurve
from .finite_field import make_field


@dataclass(frozen=True)
class CurveConfig:
    p: int
    a: int
    b: int
    ext_nonresidue: Optional[int] = None

    def build(self) -> WeierstrassCurve:
        return WeierstrassCurve.over(make_field(self.p, self.ext_nonresidue), self.a, self.b)


@dataclass(frozen=True)
class CensusConfig:
    curves: tuple[CurveConfig, ...] = (
        CurveConfig(5, -1, 0),
        CurveConfig(7, 3, 5),
        CurveConfig(13, 1, 1),
    )
    depth: int = 1
    scalar_range: int = 3
    samples: int = 2_000
    seed: int = 0


@dataclass
class CensusRow:
    curve: str
    points: int
    endos: int
    closed: bool
    truss: bool
    retract_ring: bool
    composition_ring: bool
    seconds: float
    failures: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def census_row(cfg: CensusConfig, curve_cfg: CurveConfig) -> CensusRow:
    start = time.perf_counter()
    E = curve_cfg.build()
    sp = et.EndoSpace(E)
    O = E.points[0]
    endos = et.generate_endo_set(sp, O, cfg.depth, cfg.scalar_range)
    mode = lab.Mode.auto(cfg.samples, cfg.seed)
    zero = et.const(sp, O)
    truss = lab.check_truss_axioms(lab.Carrier(endos, ternary=et.endo_heap, binary_mul=et.endo_compose), mode)
    ring = lab.check_ring_axioms(
        lab.Carrier(endos, ternary=et.endo_heap, binary_mul=lambda f, g: et.ring_retract_mul(f, g, O)), zero, mode
    )
    comp = lab.check_ring_axioms(lab.Carrier(endos, ternary=et.endo_heap, binary_mul=et.endo_compose), zero, mode)
    failures = [f"truss {r.line()}" for r in truss if not r.passed]
    failures += [f"retract-ring {r.line()}" for r in ring if not r.passed]
    return CensusRow(
        curve=str(E),
        points=sp.n,
        endos=len(endos),
        closed=et.is_closed(endos),
        truss=lab.all_passed(truss),
        retract_ring=lab.all_passed(ring),
        composition_ring=lab.all_passed(comp),
        seconds=round(time.perf_counter() - start, 3),
        failures=failures,
    )


def run_census(cfg: CensusConfig = CensusConfig()) -> list[CensusRow]:
    return [census_row(cfg, c) for c in cfg.curves]
