"""``heapcurve`` command line.

Exit codes: 0 success / all checks pass, 1 axiom violation or MISMATCH,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import axiom_lab as lab
from . import endo_truss as et
from . import lattice_torus as lt
from .chord_tangent import (
    INFINITY,
    SingularCurve,
    WeierstrassCurve,
    heap_op,
    retract_add,
)
from .exact import format_rational, rational
from .finite_field import make_field, parse_element
from .lattice_report import bilinear_law, cm_examples_report, cross_validate

# options whose values may legitimately start with "-"
_VALUE_OPTS = {"--a", "--b", "--tau-p", "--tau-q", "--d", "--seed", "--samples", "--zero"}


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _report_block(reports, show=str) -> str:
    return "\n".join(r.line(show) for r in reports)


def _mode(args) -> lab.Mode:
    if getattr(args, "exhaustive", False):
        return lab.Mode.exhaustive()
    if getattr(args, "samples", None) is not None:
        return lab.Mode.sampled(args.samples, args.seed)
    return lab.Mode.auto(seed=args.seed)


# ---- curve ---------------------------------------------------------------

def _curve(args) -> WeierstrassCurve:
    try:
        field = make_field(args.p, args.ext_nonresidue)
    except ValueError as exc:
        flag = "--ext-nonresidue" if args.ext_nonresidue is not None and "square" in str(exc) else "--p"
        raise UsageError(flag, str(exc)) from None
    coeffs = []
    for flag, text in (("--a", args.a), ("--b", args.b)):
        try:
            coeffs.append(parse_element(field, text))
        except ValueError as exc:
            raise UsageError(flag, str(exc)) from None
    try:
        return WeierstrassCurve(*coeffs)
    except SingularCurve as exc:
        raise UsageError("--a/--b", str(exc)) from None


def _point(curve: WeierstrassCurve, text: str, flag: str):
    try:
        return curve.parse_point(text)
    except ValueError as exc:
        raise UsageError(flag, str(exc)) from None


def cmd_curve_points(args) -> int:
    E = _curve(args)
    pts = E.points
    text = f"{E}\n#E = {len(pts)}\n" + "\n".join(str(P) for P in pts)
    _emit(args, {"curve": E.to_json(), "count": len(pts), "points": [P.to_json() for P in pts]}, text)
    return 0


def cmd_curve_heap(args) -> int:
    E = _curve(args)
    A, B, C = (_point(E, t, f"point {i + 1}") for i, t in enumerate(args.points))
    R = heap_op(E, A, B, C)
    _emit(args, {"curve": E.to_json(), "args": [P.to_json() for P in (A, B, C)], "result": R.to_json()}, str(R))
    return 0


def cmd_curve_add(args) -> int:
    E = _curve(args)
    O = _point(E, args.base, "--base")
    A, B = (_point(E, t, f"point {i + 1}") for i, t in enumerate(args.points))
    R = retract_add(E, O, A, B)
    _emit(args, {"curve": E.to_json(), "base": O.to_json(), "args": [A.to_json(), B.to_json()], "result": R.to_json()}, str(R))
    return 0


def cmd_curve_check_heap(args) -> int:
    E = _curve(args)
    carrier = lab.Carrier(E.points, ternary=lambda a, b, c: heap_op(E, a, b, c))
    reports = lab.check_heap_axioms(carrier, _mode(args))
    passed = lab.all_passed(reports)
    text = f"# {E}, #E = {len(E.points)}, seed = {args.seed}\n" + _report_block(reports)
    _emit(args, {"curve": E.to_json(), "seed": args.seed, "passed": passed,
                 "reports": [r.to_json() for r in reports]}, text)
    return 0 if passed else 1


# ---- endo ----------------------------------------------------------------

def _space_and_base(args):
    E = _curve(args)
    sp = et.EndoSpace(E)
    return sp, _point(E, args.base, "--base")


def _expr(sp, text: str, base, flag: str):
    if text.startswith("const:"):
        text = f"const({text[len('const:'):]})"
    try:
        return et.from_expr(sp, sp.parse_expr(text, base))
    except ValueError as exc:
        raise UsageError(flag, str(exc)) from None


def _endo_set(args, sp, O):
    if args.depth < 0:
        raise UsageError("--depth", "must be non-negative")
    return et.generate_endo_set(sp, O, args.depth, args.scalar_range)


def cmd_endo_gen(args) -> int:
    sp, O = _space_and_base(args)
    endos = _endo_set(args, sp, O)
    closed = et.is_closed(endos)
    lines = [f"# {sp.curve}, base {O}, depth {args.depth}: {len(endos)} endomorphisms, closed = {closed}"]
    lines += [f"{i:4d}  {f}" for i, f in enumerate(endos)]
    payload = {
        "curve": sp.curve.to_json(),
        "base": O.to_json(),
        "depth": args.depth,
        "count": len(endos),
        "closed": closed,
        "points": [P.to_json() for P in sp.points],
        "endos": [{"expr": str(f), "table": list(f.table)} for f in endos],
    }
    _emit(args, payload, "\n".join(lines))
    return 0


def _endo_carrier(endos, mul) -> lab.Carrier:
    return lab.Carrier(endos, ternary=et.endo_heap, binary_mul=mul)


def cmd_endo_check_truss(args) -> int:
    sp, O = _space_and_base(args)
    endos = _endo_set(args, sp, O)
    reports = lab.check_truss_axioms(_endo_carrier(endos, et.endo_compose), _mode(args))
    passed = lab.all_passed(reports)
    text = f"# {sp.curve}, base {O}, {len(endos)} endomorphisms, seed = {args.seed}\n" + _report_block(reports)
    _emit(args, {"curve": sp.curve.to_json(), "count": len(endos), "seed": args.seed, "passed": passed,
                 "reports": [r.to_json() for r in reports]}, text)
    return 0 if passed else 1


def cmd_endo_decompose(args) -> int:
    sp, O = _space_and_base(args)
    f = _expr(sp, args.f, O, "--f")
    phi, T = et.decompose(f, O)
    back = et.recompose(phi, T, O)
    ok = back == f
    text = (f"f         = {f}\nisogeny   = {phi.endo}\ntranslate = {T}\n"
            f"round trip: {'ok' if ok else 'FAILED'}")
    _emit(args, {"f": str(f), "base": O.to_json(), "isogeny": str(phi.endo),
                 "isogeny_table": list(phi.endo.table), "translation": T.to_json(), "round_trip": ok}, text)
    return 0 if ok else 1


def cmd_endo_no_ring(args) -> int:
    sp, O = _space_and_base(args)
    theta = _expr(sp, args.theta, O, "--theta")
    w = et.no_ring_witness(sp, theta)
    if w is None:
        text = f"theta = {theta}: no witness"
    elif theta.is_constant:
        P = sp.points[theta.table[0]]
        text = f"theta = {theta}: witness f = {w} with f({P}) = {w(P)} != {P}"
    else:
        text = f"theta = {theta}: witness f = {w} with theta o f != theta"
    _emit(args, {"theta": str(theta), "witness": None if w is None else str(w)}, text)
    return 0 if w is not None else 1


# ---- lattice -------------------------------------------------------------

def _lattice(args) -> lt.LatticeSpec:
    try:
        p = rational(args.tau_p)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("--tau-p", str(exc)) from None
    try:
        q = rational(args.tau_q)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("--tau-q", str(exc)) from None
    try:
        return lt.LatticeSpec(p, q, args.d)
    except ValueError as exc:
        flag = "--d" if "d must" in str(exc) else "--tau-q"
        raise UsageError(flag, str(exc)) from None


def cmd_lattice_ring(args) -> int:
    lat = _lattice(args)
    g = lt.z_pqd_generator(lat)
    first, second = bilinear_law(lat)
    check = cross_validate(lat)
    ring = "Z[tau]" if g == 1 else f"{{m + n*tau : m in Z, n in {g}Z}}"
    text = (f"{lat}\nN = {format_rational(lat.N)}\nZ(p,q,d) = {g}Z\nR(tau) = {ring}\n"
            f"(m + n tau)(m' + n' tau) = ({first}) + ({second}) tau\n"
            f"{check.status}: {check.derived}")
    _emit(args, {"lattice": lat.to_json(), "N": format_rational(lat.N), "generator": g,
                 "law": [str(first), str(second)], "oracle": check.status}, text)
    return 0 if check.status == "MATCH" else 1


def cmd_lattice_heap(args) -> int:
    lat = _lattice(args)
    pts = []
    for i, t in enumerate(args.points):
        try:
            pts.append(lt.parse_torus_point(lat, t))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"point {i + 1}", str(exc)) from None
    R = lt.torus_heap(*pts)
    _emit(args, {"lattice": lat.to_json(), "result": R.to_json()}, str(R))
    return 0


def cmd_lattice_crossed_mul(args) -> int:
    lat = _lattice(args)
    els = []
    for i, t in enumerate(args.elements):
        try:
            els.append(lt.parse_crossed(lat, t))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"element {i + 1}", str(exc)) from None
    R = lt.crossed_mul(*els)
    _emit(args, {"lattice": lat.to_json(), "result": R.to_json()}, str(R))
    return 0


def cmd_lattice_check_examples(args) -> int:
    general = _lattice(args) if args.custom else None
    report = cm_examples_report(general)
    _emit(args, report.to_json(), report.render())
    if report.mismatches and not args.paper_errata_ok:
        return 1
    return 0


# ---- axioms --------------------------------------------------------------

def _carrier_from_spec(spec: str, args):
    """Returns ``(carrier, zero, description)``."""
    kind, _, rest = spec.partition(":")
    parts = rest.split(":") if rest else []
    try:
        if kind in ("zmod", "zmod-sum"):
            N = int(parts[0])
            if N < 1:
                raise ValueError("modulus must be positive")
            if kind == "zmod":
                t = lambda a, b, c: (a - b + c) % N
            else:
                t = lambda a, b, c: (a + b + c) % N
            return lab.Carrier(range(N), ternary=t, binary_mul=lambda a, b: a * b % N), 0, f"Z/{N}"
        if kind == "int":
            B = int(parts[0])
            return (lab.Carrier(range(-B, B + 1), ternary=lambda a, b, c: a - b + c,
                                binary_mul=lambda a, b: a * b, tabulate=False), 0, f"Z truncated to [-{B}, {B}]")
        if kind in ("curve", "endos"):
            p, a, b = int(parts[0]), parts[1], parts[2]
            ns = argparse.Namespace(p=p, a=a, b=b, ext_nonresidue=args.ext_nonresidue)
            E = _curve(ns)
            O = _point(E, args.base, "--base")
            if kind == "curve":
                return lab.Carrier(E.points, ternary=lambda x, y, z: heap_op(E, x, y, z)), O, str(E)
            depth = int(parts[3]) if len(parts) > 3 else 2
            sp = et.EndoSpace(E)
            endos = et.generate_endo_set(sp, O, depth)
            if args.mul == "retract":
                mul = lambda f, g: et.ring_retract_mul(f, g, O)
            else:
                mul = et.endo_compose
            zero = et.const(sp, O)
            return _endo_carrier(endos, mul), zero, f"{len(endos)} endomorphisms of {E}"
    except (IndexError, ValueError) as exc:
        raise UsageError("carrier", f"bad carrier spec {spec!r}: {exc}") from None
    raise UsageError("carrier", f"unknown carrier kind {kind!r} (zmod, zmod-sum, int, curve, endos)")


def cmd_axioms(args) -> int:
    carrier, zero, desc = _carrier_from_spec(args.carrier, args)
    mode = _mode(args)
    if args.kind == "heap":
        reports = lab.check_heap_axioms(carrier, mode)
    elif args.kind == "truss":
        if carrier.binary_mul is None:
            raise UsageError("--kind", "carrier has no multiplication")
        reports = lab.check_truss_axioms(carrier, mode)
    elif args.kind == "group":
        reports = lab.check_group_axioms(carrier, zero, mode)
    else:
        if carrier.binary_mul is None:
            raise UsageError("--kind", "carrier has no multiplication")
        reports = lab.check_ring_axioms(carrier, zero, mode)
    passed = lab.all_passed(reports)
    text = f"# {desc}, {args.kind} axioms, seed = {args.seed}\n" + _report_block(reports, carrier.show)
    _emit(args, {"carrier": args.carrier, "kind": args.kind, "seed": args.seed, "passed": passed,
                 "reports": [r.to_json(carrier.show) for r in reports]}, text)
    return 0 if passed else 1


# ---- parser --------------------------------------------------------------

def _curve_opts(p: argparse.ArgumentParser, base: bool = False) -> None:
    p.add_argument("--p", type=int, required=True, help="field characteristic (prime > 3)")
    p.add_argument("--a", default="0", help="coefficient a of y^2 = x^3 + ax + b")
    p.add_argument("--b", default="0", help="coefficient b")
    p.add_argument("--ext-nonresidue", type=int, default=None,
                   help="work over F_p[t]/(t^2 - c) for this non-residue c")
    p.add_argument("--json", action="store_true")
    if base:
        p.add_argument("--base", default="infinity", help="base point O ('infinity' or 'x,y')")


def _mode_opts(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)


def _lattice_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau-p", default="0", help="real part p of tau = p + q sqrt(-d)")
    p.add_argument("--tau-q", default="1", help="q > 0")
    p.add_argument("--d", type=int, default=1, help="positive integer d")
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heapcurve", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="group", required=True)

    curve = top.add_parser("curve", help="points and the chord-tangent heap")
    cs = curve.add_subparsers(dest="cmd", required=True)
    p = cs.add_parser("points")
    _curve_opts(p)
    p.set_defaults(func=cmd_curve_points)
    p = cs.add_parser("heap")
    _curve_opts(p)
    p.add_argument("points", nargs=3, metavar="POINT")
    p.set_defaults(func=cmd_curve_heap)
    p = cs.add_parser("add")
    _curve_opts(p, base=True)
    p.add_argument("points", nargs=2, metavar="POINT")
    p.set_defaults(func=cmd_curve_add)
    p = cs.add_parser("check-heap")
    _curve_opts(p)
    _mode_opts(p)
    p.set_defaults(func=cmd_curve_check_heap)

    endo = top.add_parser("endo", help="the truss of curve endomorphisms")
    es = endo.add_subparsers(dest="cmd", required=True)
    for name, func in (("gen", cmd_endo_gen), ("check-truss", cmd_endo_check_truss)):
        p = es.add_parser(name)
        _curve_opts(p, base=True)
        p.add_argument("--depth", type=int, default=2)
        p.add_argument("--scalar-range", type=int, default=3)
        if name == "check-truss":
            _mode_opts(p)
        p.set_defaults(func=func)
    p = es.add_parser("decompose")
    _curve_opts(p, base=True)
    p.add_argument("--f", required=True, help="expression, e.g. 'heap(id, const(0,0), scalar(2))'")
    p.set_defaults(func=cmd_endo_decompose)
    p = es.add_parser("no-ring")
    _curve_opts(p, base=True)
    p.add_argument("--theta", required=True, help="candidate absorber, e.g. 'const:infinity'")
    p.set_defaults(func=cmd_endo_no_ring)

    lat = top.add_parser("lattice", help="the torus C/(Z tau + Z)")
    ls = lat.add_subparsers(dest="cmd", required=True)
    p = ls.add_parser("ring")
    _lattice_opts(p)
    p.set_defaults(func=cmd_lattice_ring)
    p = ls.add_parser("heap")
    _lattice_opts(p)
    p.add_argument("points", nargs=3, metavar="U,V")
    p.set_defaults(func=cmd_lattice_heap)
    p = ls.add_parser("crossed-mul")
    _lattice_opts(p)
    p.add_argument("elements", nargs=2, metavar="M,N;U,V")
    p.set_defaults(func=cmd_lattice_crossed_mul)
    p = ls.add_parser("check-examples")
    _lattice_opts(p)
    p.add_argument("--custom", action="store_true",
                   help="use --tau-p/--tau-q/--d for the general CM row (default 1/3, 1/3, 2)")
    p.add_argument("--paper-errata-ok", action="store_true",
                   help="exit 0 even when printed formulas mismatch the derived laws")
    p.set_defaults(func=cmd_lattice_check_examples)

    p = top.add_parser("axioms", help="check axioms on a named carrier")
    p.add_argument("carrier", help="zmod:N | zmod-sum:N | int:B | curve:P:A:B | endos:P:A:B[:DEPTH]")
    p.add_argument("--kind", choices=("heap", "truss", "group", "ring"), default="heap")
    p.add_argument("--mul", choices=("compose", "retract"), default="compose",
                   help="multiplication for endos carriers")
    p.add_argument("--base", default="infinity")
    p.add_argument("--ext-nonresidue", type=int, default=None)
    p.add_argument("--json", action="store_true")
    _mode_opts(p)
    p.set_defaults(func=cmd_axioms)
    return parser


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"heapcurve: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
