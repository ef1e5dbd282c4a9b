#!/usr/bin/env python3
"""Compare the orbit-count formula against brute-force enumeration on a grid.

Enumerates, for each cell (D, m, n), every integer cube with bounded entries
whose invariants match, reduces to canonical orbit representatives, and
compares the stable count against B(D, m, n).  Slow by design; use small
grids.  Prints each mismatch and a one-line summary; exit 1 on mismatch.
"""

from __future__ import annotations

import argparse
import sys
import time

from cubezeta.congruence import is_discriminant
from cubezeta.cube import orbit_count_oracle
from cubezeta.orbits import B


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--Dmax", type=int, default=30)
    parser.add_argument("--Mmax", type=int, default=3, help="bound on m and n")
    parser.add_argument("--entry-bound", type=int, default=None)
    parser.add_argument("--slack", type=int, default=5)
    args = parser.parse_args()

    t0 = time.perf_counter()
    cells = mismatches = unstable = 0
    for D in range(-args.Dmax, args.Dmax + 1):
        if not is_discriminant(D):
            continue
        for m in range(1, args.Mmax + 1):
            for n in range(m, args.Mmax + 1):
                cells += 1
                result = orbit_count_oracle(
                    D, m, n, entry_bound=args.entry_bound, slack=args.slack
                )
                want = B(D, m, n)
                if not result.stable:
                    unstable += 1
                    print(f"UNSTABLE D={D} m={m} n={n} (bound {result.entry_bound})")
                if result.count != want:
                    mismatches += 1
                    print(f"MISMATCH D={D} m={m} n={n}: oracle {result.count}, formula {want}")
    elapsed = time.perf_counter() - t0
    print(
        f"{cells} cells, {mismatches} mismatches, {unstable} unstable, {elapsed:.1f}s"
    )
    return 1 if mismatches or unstable else 0


if __name__ == "__main__":
    sys.exit(main())
