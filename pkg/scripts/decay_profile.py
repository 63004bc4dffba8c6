#!/usr/bin/env python3
"""Print exact decay profiles of recursion-defined states on the free
orthogonal fusion ring.

For each requested evaluation point t the state value at level k follows the
three-term recursion P_{k+1} = X P_k - P_{k-1} normalized to level dimensions.
The table shows exact rationals, the float value, and the first level where
the value drops below a threshold.

Usage:
    python3 scripts/decay_profile.py [--N N] [--t T [T ...]] [--cutoff K]
                                     [--eps 1/100]
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from kacforge.errors import DomainError
from kacforge.measures import chebyshev_state


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=3, help="dimension parameter")
    ap.add_argument("--t", nargs="+", default=["2"],
                    help="evaluation points, rationals like 5/2")
    ap.add_argument("--cutoff", type=int, default=16)
    ap.add_argument("--eps", default="1/100", help="smallness threshold")
    args = ap.parse_args(argv)

    eps = Fraction(args.eps)
    for t_str in args.t:
        try:
            state = chebyshev_state(args.N, Fraction(t_str), args.cutoff)
        except DomainError as exc:
            print(f"t = {t_str}: rejected ({exc})")
            continue
        crossing = next((k for k, v in enumerate(state.values) if v < eps),
                        None)
        where = f"drops below {eps} at k={crossing}" if crossing is not None \
            else f"stays above {eps} through k={args.cutoff}"
        print(f"N = {args.N}, t = {t_str}: {where}")
        for k, v in enumerate(state.values):
            print(f"  k={k:<3d} {str(v):<22} {float(v):.8f}")
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
