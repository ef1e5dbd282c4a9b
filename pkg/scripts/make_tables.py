#!/usr/bin/env python3
"""Emit the two CSV tables (orbit counts B and series coefficients a3)."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from cubezeta.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--Dmax", type=int, default=100, help="discriminant bound")
    parser.add_argument("--Mmax", type=int, default=20, help="m, n bound")
    parser.add_argument("--outdir", default="tables", help="output directory")
    parser.add_argument("--threads", type=int, default=None)
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    common = ["--Dmax", str(args.Dmax), "--Mmax", str(args.Mmax)]
    if args.threads:
        common += ["--threads", str(args.threads)]

    for what in ("B", "a3"):
        target = outdir / f"{what}_D{args.Dmax}_M{args.Mmax}.csv"
        code = cli_main(["table", what, *common, "--output", str(target)])
        if code:
            return code
        print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
