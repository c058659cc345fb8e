"""Print a table of endomorphism-truss facts for a few small curves.

    python3 scripts/truss_census.py --depth 1 --json
"""

import argparse
import json

from heapcurve.census import CensusConfig, CurveConfig, run_census


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=1)
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--curve", action="append", default=[], metavar="P:A:B",
                    help="add a curve over F_P (repeatable); replaces the default list")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    cfg = CensusConfig(depth=args.depth, samples=args.samples, seed=args.seed)
    if args.curve:
        curves = tuple(CurveConfig(*(int(x) for x in c.split(":"))) for c in args.curve)
        cfg = CensusConfig(curves, args.depth, cfg.scalar_range, args.samples, args.seed)
    rows = run_census(cfg)
    if args.json:
        print(json.dumps([r.to_json() for r in rows], indent=2))
        return
    print(f"{'curve':<36} {'#E':>4} {'#T':>5} closed truss  ring(retract) ring(compose)  secs")
    for r in rows:
        print(f"{r.curve:<36} {r.points:>4} {r.endos:>5} {str(r.closed):<6} {str(r.truss):<6} "
              f"{str(r.retract_ring):<14} {str(r.composition_ring):<13} {r.seconds:>5}")
        for line in r.failures:
            print(f"    {line}")


if __name__ == "__main__":
    main()
