"""Rewrite tests/golden/*.json from the current CLI output.

Only run this after checking by hand that a change in output is intended.
"""

import contextlib
import io
import json
import pathlib

from heapcurve.cli import run

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"

CASES = {
    "curve_points_f5": ["curve", "points", "--p", "5", "--a", "-1", "--b", "0", "--json"],
    "curve_heap_f25": ["curve", "heap", "--p", "5", "--a", "-1", "--b", "0", "--ext-nonresidue", "2",
                       "1+3t,2", "2,1", "1+4t,3+t", "--json"],
    "endo_gen_f5_depth1": ["endo", "gen", "--p", "5", "--a", "4", "--b", "0", "--depth", "1", "--json"],
    "lattice_ring_omega": ["lattice", "ring", "--tau-p", "-1/2", "--tau-q", "1/2", "--d", "3", "--json"],
    "check_examples": ["lattice", "check-examples", "--json"],
    "axioms_zmod_sum": ["axioms", "zmod-sum:4", "--exhaustive", "--json"],
}


def capture(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = run(argv)
    return code, json.loads(buf.getvalue())


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES.items():
        code, payload = capture(argv)
        out = {"argv": argv, "exit": code, "output": payload}
        (GOLDEN / f"{name}.json").write_text(json.dumps(out, indent=1) + "\n")
        print(f"{name}: exit {code}")


if __name__ == "__main__":
    main()
