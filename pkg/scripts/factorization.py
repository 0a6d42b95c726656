"""Check that S_subreg is a tensor product of Galois-twisted Weyl-sum and affine S-matrices.

    python3 scripts/factorization.py E6:13:10 E6:13:9 D4:7:5 A3:5:3

Prints the proportionality scalar for each level (1 when the factorisation holds exactly).
"""
import argparse

from wsubreg.admissible import LevelData, orbit_representatives
from wsubreg.rootsystem import build_root_system, parse_type
from wsubreg.smatrix import S_subreg, factorization

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("levels", nargs="+", help="TYPE:p:q")
    args = ap.parse_args()
    for spec in args.levels:
        name, p, q = spec.split(":")
        family, rank = parse_type(name)
        ld = LevelData(build_root_system(family, rank), int(p), int(q))
        labels = orbit_representatives(ld)
        S = S_subreg(ld, labels)
        c = factorization(ld, S, labels)
        print(f"{name} {p}/{q}: {'no factorisation' if c is None else f'scalar {c.to_complex():.12g}'}")
