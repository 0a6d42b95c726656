"""Recompute the sporadic-level table (central charges, growth, amplitudes, identifications).

Numerical data only; no S-matrices are built, so the full table runs in seconds.

    python3 scripts/sporadic_table.py [--format json|csv|pretty]
"""
import argparse
import sys

from wsubreg.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--format", default="pretty", choices=["json", "csv", "pretty"])
    args = ap.parse_args()
    sys.exit(main(["report", "--format", args.format]))
