"""Fusion rings of the Weyl-sum matrix for D_n at q = 2n - 4, compared with the conjectured truncated rings.

    python3 scripts/d_type_rings.py 5 6 7 [--allow-huge]

For these q every admissible coweight is rho - varpi_i with a_i = 2, so the
ring is read off directly from the C-part.  Only odd n = 2m + 3 has a
conjectured answer.  D8 and above need --allow-huge.
"""
import argparse

from wsubreg.fusion import FusionError, dtype_conjecture_ring, fusion_from_raw, ring_isomorphic
from wsubreg.rootsystem import build_root_system
from wsubreg.smatrix import C_matrix


def ring_for(n: int, allow_huge: bool):
    rs = build_root_system("D", n)
    return fusion_from_raw(C_matrix(rs, 2 * n - 4, allow_huge=allow_huge).core)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("ranks", type=int, nargs="+")
    ap.add_argument("--allow-huge", action="store_true")
    args = ap.parse_args()
    for n in args.ranks:
        ring = ring_for(n, args.allow_huge)
        verdict = "no conjectured ring for even rank"
        if n % 2:
            m = (n - 3) // 2
            target = dtype_conjecture_ring(m, check=False)
            try:
                target.check()
                verdict = "isomorphic" if ring_isomorphic(ring, target) is not None else "not isomorphic"
            except FusionError as exc:
                verdict = f"conjectured ring fails the axioms as written ({exc})"
            verdict = f"vs conjecture m={m}: {verdict}"
        print(f"D{n} q={2 * n - 4}: {ring.size} objects, dual {ring.dual}; {verdict}")
        for i in range(ring.size):
            for j in range(i, ring.size):
                print(f"  [{i}] x [{j}] = {ring.product(i, j)}")
