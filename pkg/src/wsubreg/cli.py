"""Command line front end.

Exit status: 0 on success, 1 when a computed invariant or a reference
check fails, 2 on invalid input (including a refused Weyl enumeration).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import numerology as nm
from . import reference, weyl
from .admissible import LevelData, orbit_representatives, vacuum_index
from .fusion import FusionError, group_ring, quantum_dimensions, ring_isomorphic, verlinde
from .rootsystem import build_root_system, parse_type
from .smatrix import S_subreg, default_xs

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    family: str
    rank: int
    p: int
    q: int
    mode: str = "subreg"
    star: int | None = None
    threads: int = 1
    cap: int | None = None
    allow_huge: bool = False
    fmt: str = "pretty"
    seed: int = 0

    def level_data(self) -> LevelData:
        try:
            rs = build_root_system(self.family, self.rank, self.star)
            return LevelData(rs, self.p, self.q, self.mode)
        except (ValueError, KeyError) as exc:
            raise InputError(str(exc)) from exc


def _config(args) -> RunConfig:
    try:
        family, rank = parse_type(args.type)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.threads is not None:
        os.environ["WSUBREG_THREADS"] = str(args.threads)
    if args.cap is not None:
        weyl.DEFAULT_CAP = args.cap
    return RunConfig(family, rank, args.p, args.q, args.mode, args.star, weyl.thread_count(), args.cap,
                     args.allow_huge, args.format, args.seed)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(_jsonable(rows), out, indent=1)
        out.write("\n")
    elif fmt == "csv":
        if not rows:
            return
        w = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(_jsonable(v)) if isinstance(v, (list, dict)) else _jsonable(v)
                        for k, v in r.items()})
    else:
        for r in rows:
            out.write("  ".join(f"{k}={_jsonable(v)}" for k, v in r.items()) + "\n")


def _label_rows(labels) -> list[dict]:
    return [{"index": i, "kappa": [str(c) for c in L.kappa.coords], "eta": [str(c) for c in L.eta.coords],
             "h": L.h} for i, L in enumerate(labels)]


def cmd_enumerate(cfg: RunConfig, out) -> int:
    ld = cfg.level_data()
    labels = orbit_representatives(ld)
    _emit(_label_rows(labels), cfg.fmt, out)
    return EXIT_OK


def _smatrix(cfg: RunConfig, out, show_labels=True):
    ld = cfg.level_data()
    labels = orbit_representatives(ld)
    if show_labels and cfg.fmt == "pretty":
        out.write(f"# {len(labels)} labels\n")
        _emit(_label_rows(labels), "pretty", out)
    S = S_subreg(ld, labels, xs=default_xs(ld.rs, cfg.seed), allow_huge=cfg.allow_huge)
    return ld, labels, S


def cmd_smatrix(cfg: RunConfig, out) -> int:
    ld, labels, S = _smatrix(cfg, out)
    if cfg.fmt == "pretty":
        out.write(f"# S = i^{S.i_power} / sqrt({S.radicand}) * core, entries in Q(zeta_{S.order})\n")
        for row in S.to_complex():
            out.write(" ".join(f"{v.real:+.6f}{v.imag:+.6f}i" for v in row) + "\n")
    else:
        data = S.to_json()
        if cfg.fmt == "json":
            json.dump(_jsonable(data), out)
            out.write("\n")
        else:
            _emit([{"row": i, "col": j, "re": v[0], "im": v[1]}
                   for i, r in enumerate(data["float"]) for j, v in enumerate(r)], "csv", out)
    return EXIT_OK


def describe_ring(ring) -> str:
    n = ring.size
    if all(ring.is_simple_current(i) for i in range(n)) and ring_isomorphic(ring, group_ring(n)) is not None:
        return f"Z[Z/{n}]"
    return f"rank {n} fusion ring"


def cmd_fusion(cfg: RunConfig, out) -> int:
    ld, labels, S = _smatrix(cfg, out, show_labels=False)
    ring = verlinde(S, vacuum_index(labels, ld))
    if cfg.fmt == "pretty":
        out.write(f"# {describe_ring(ring)}; identity {ring.identity}; dual {ring.dual}\n")
        for i in range(ring.size):
            for j in range(i, ring.size):
                prod = " + ".join(f"{m}*[{k}]" if m > 1 else f"[{k}]" for k, m in ring.product(i, j).items())
                out.write(f"[{i}] x [{j}] = {prod}\n")
    else:
        _emit([{"i": i, "j": j, "k": k, "N": int(ring.N[i, j, k])}
               for i in range(ring.size) for j in range(ring.size) for k in range(ring.size)
               if ring.N[i, j, k]] if cfg.fmt == "csv" else
              [{"type": describe_ring(ring), "identity": ring.identity, "dual": ring.dual,
                "N": ring.N.tolist()}], cfg.fmt, out)
    return EXIT_OK


def cmd_qdims(cfg: RunConfig, out) -> int:
    ld, labels, S = _smatrix(cfg, out, show_labels=False)
    v = vacuum_index(labels, ld)
    qd = quantum_dimensions(S, v)
    rows = [{"index": i, "h": labels[i].h, "qdim": round(q.to_complex().real, 12),
             "exact": {str(k): str(c) for k, c in enumerate(q.coeffs) if c}, "field": q.N}
            for i, q in enumerate(qd)]
    _emit(rows, cfg.fmt, out)
    return EXIT_OK


def cmd_report(args, out) -> int:
    rows = []
    for row in nm.table_rows():
        rs = build_root_system(row["family"], row["rank"])
        ld = LevelData(rs, row["p"], row["q"])
        rep = nm.sporadic_report(ld)
        rows.append({"g": rs.name, "p/q": f"{ld.p}/{ld.q}", "c": rep.c, "c_eff": rep.c_eff,
                     "irreps": rep.irreps, "growth": rep.growth, "amplitude": rep.amplitude,
                     "isom": rep.identified, "table_isom": row["isom"]})
    _emit(rows, args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.threads is not None:
        os.environ["WSUBREG_THREADS"] = str(args.threads)
    checks = []
    items = ["table", "e6", "e7"] if args.what == "all" else [args.what]
    for item in items:
        if item == "table":
            checks += reference.verify_table()
        elif item == "e6":
            checks += reference.verify_e6()
        elif item == "e7":
            checks += reference.verify_e7()
    for c in checks:
        out.write(c.line() + "\n")
    failed = sum(not c.passed for c in checks)
    out.write(f"{len(checks) - failed}/{len(checks)} checks passed\n")
    return EXIT_OK if not failed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wsubreg", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "pretty"], default="pretty")
    common.add_argument("--threads", type=int, default=None, help="worker processes (also WSUBREG_THREADS)")
    common.add_argument("--out", default=None, help="write output to this file")
    level = argparse.ArgumentParser(add_help=False)
    level.add_argument("type", help="Lie type such as E6 or D5")
    level.add_argument("--p", type=int, required=True)
    level.add_argument("--q", type=int, required=True)
    level.add_argument("--mode", choices=["subreg", "typeA"], default="subreg")
    level.add_argument("--star", type=int, default=None, help="node index of alpha_* (type A only)")
    level.add_argument("--cap", type=int, default=None, help="largest Weyl group enumerated without --allow-huge")
    level.add_argument("--allow-huge", action="store_true")
    level.add_argument("--seed", type=int, default=0, help="seed of the auxiliary coweight x")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("enumerate", "smatrix", "fusion", "qdims"):
        sub.add_parser(name, parents=[common, level])
    sub.add_parser("report", parents=[common])
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("what", choices=["table", "e6", "e7", "all"], nargs="?", default="all")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.command == "report":
            return cmd_report(args, out)
        if args.command == "verify":
            return cmd_verify(args, out)
        cfg = _config(args)
        return {"enumerate": cmd_enumerate, "smatrix": cmd_smatrix, "fusion": cmd_fusion,
                "qdims": cmd_qdims}[args.command](cfg, out)
    except (FusionError, AssertionError) as exc:
        out.flush()
        print(f"invariant failure: {exc}", file=sys.stderr)
        name = getattr(args, "type", "")
        if name.upper().startswith("A") and parse_type(name)[1] % 2 == 0:
            print("note: for A_n with n even the grading rho - varpi_* is not the Dynkin grading and the "
                  "W-algebra is not self-contragredient, so S^2 need not fix the vacuum", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, ValueError) as exc:
        out.flush()
        hint = " (command line: --allow-huge)" if "allow_huge" in str(exc) else ""
        print(f"error: {exc}{hint}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
