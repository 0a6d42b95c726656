"""Exact S-matrix and fusion ring of an E8 level with non-integral p/q, compared with a Virasoro minimal model.

    python3 scripts/e8_sporadic.py 25            # E8 at 31/25, expect Vir(2,5)
    python3 scripts/e8_sporadic.py 26 --threads 4

The Weyl group of E8 has 696,729,600 elements; on one core 31/25 takes about
eleven minutes.  The result is written as JSON to --out if given.
"""
import argparse
import json
import time

from wsubreg import numerology as nm
from wsubreg.admissible import LevelData, orbit_representatives, vacuum_index
from wsubreg.fusion import verlinde
from wsubreg.rootsystem import build_root_system
from wsubreg.smatrix import S_subreg, is_symmetric, is_unitary


def run(q: int, p: int = 31, workers=None) -> dict:
    t0 = time.time()
    ld = LevelData(build_root_system("E", 8), p, q)
    labels = orbit_representatives(ld)
    print(f"{len(labels)} labels, h = {[str(L.h) for L in labels]}", flush=True)
    S = S_subreg(ld, labels, workers=workers, allow_huge=True)
    seconds = time.time() - t0
    ring = verlinde(S, vacuum_index(labels, ld))
    rep = nm.sporadic_report(ld, ring=ring, labels=labels)
    out = {"p": p, "q": q, "seconds": round(seconds, 1), "symmetric": is_symmetric(S), "unitary": is_unitary(S),
           "N": ring.N.tolist(), "dual": ring.dual, "report": rep.to_json()}
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("q", type=int, choices=range(24, 31))
    ap.add_argument("--p", type=int, default=31)
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    res = run(args.q, args.p, args.threads)
    text = json.dumps(res, indent=1, default=str)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
