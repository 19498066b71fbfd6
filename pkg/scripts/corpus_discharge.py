"""Discharge every bundled fixture and tabulate the outcome.

    python3 scripts/corpus_discharge.py [--gamma 4/195] [--strict] [--scan-size 3]
"""

import argparse
from fractions import Fraction

from trifree.configurations import reducible_found, scan_reducible_up_to_size
from trifree.corpus import fixture_names, load_fixture
from trifree.discharging import DischargeParams, discharge, fmt


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--gamma", type=Fraction, default=DischargeParams().gamma)
    ap.add_argument("--strict", action="store_true")
    ap.add_argument("--scan-size", type=int, default=3)
    args = ap.parse_args()
    params = DischargeParams(args.gamma)

    header = f"{'fixture':22} {'n':>3} {'|H|':>3} {'chi':>4} {'ident':>5} {'cons':>5} {'claims':>6} {'min charge':>11} {'moves':>5} {'reducible<=' + str(args.scan_size):>13}"
    print(header)
    print("-" * len(header))
    for name in fixture_names():
        f = load_fixture(name)
        g, h = f.doc.embedding(), f.doc.h()
        run = discharge(g, h, params, strict=args.strict)
        final = run["final"]
        outside = [final.vertex[v] for v in range(g.n) if v not in h.vertices]
        low = fmt(min(outside)) if outside else "-"
        found = len(reducible_found(scan_reducible_up_to_size(g, h, args.scan_size))) if g.n <= 16 else "-"
        print(
            f"{name:22} {g.n:>3} {len(h.vertices):>3} {run['chi']:>4} {str(run['identity'].ok):>5} "
            f"{str(run['conserved']):>5} {str(run['claims'].ok):>6} {low:>11} {len(run['transfers']):>5} {found:>13}"
        )


if __name__ == "__main__":
    main()
