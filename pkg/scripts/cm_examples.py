"""Symbolic cross-check of the printed CM multiplication laws against the lattice model.

    python3 scripts/cm_examples.py                 # default general lattice p = q = 1/3, d = 2
    python3 scripts/cm_examples.py 1/2 1/2 1       # another general lattice
"""

import sys

from heapcurve.exact import rational
from heapcurve.lattice_report import cm_examples_report
from heapcurve.lattice_torus import LatticeSpec


def main(argv):
    general = None
    if argv:
        p, q, d = argv
        general = LatticeSpec(rational(p), rational(q), int(d))
    report = cm_examples_report(general)
    print(report.render())
    return 1 if report.mismatches else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
