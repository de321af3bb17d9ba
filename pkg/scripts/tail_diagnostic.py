#!/usr/bin/env python3
"""Report how many subsets of [n] fall outside the size window
n/2 +- 2*sqrt(n log n), next to the scale C(n, n/2)/n^(3/2).

The ratio is a diagnostic for the tail-reduction step used in asymptotic
arguments; nothing here is asserted.

Usage: python3 scripts/tail_diagnostic.py [--n 100 1000 10000]
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from posetlab.chains import tail_ratio_diagnostic  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[16, 100, 1000, 10000])
    args = ap.parse_args()
    print(f"{'n':>8} {'tail count (digits)':>20} {'count / (C(n,n/2)/n^1.5)':>26}")
    for n in args.n:
        d = tail_ratio_diagnostic(n)
        digits = len(str(d["tailCount"]))
        print(f"{n:>8} {digits:>20} {d['ratioToScale']:>26.6g}")


if __name__ == "__main__":
    main()
