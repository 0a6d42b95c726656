"""Run the reference comparisons: the sporadic table, the E6 fusion rules and the E7 19/16 fusion matrices.

    python3 scripts/golden_checks.py [table|e6|e7|all] [--threads N]

E7 needs the full Weyl group of E7 (2.9M elements) and takes about half a minute per core.
"""
import argparse
import sys

from wsubreg.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("what", nargs="?", default="all", choices=["table", "e6", "e7", "all"])
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()
    argv = ["verify", args.what] + (["--threads", str(args.threads)] if args.threads else [])
    sys.exit(main(argv))
