"""Derive K(sl2, k) from affine sl2 at level k, re-extend it and tabulate the counts."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from fuselift.catalog import sl2_inverse_problem
from fuselift.extension import build_U_ring, simple_currents_U
from fuselift.inverse import derive, forward_problem, round_trip


@dataclass(frozen=True)
class Config:
    k_min: int = 1
    k_max: int = 6
    round_trip: bool = True


def run(cfg: Config) -> list[dict]:
    rows = []
    for k in range(cfg.k_min, cfg.k_max + 1):
        t0 = time.perf_counter()
        IP = sl2_inverse_problem(k)
        der = derive(IP)
        P = forward_problem(IP, der)
        U = build_U_ring(P)
        row = {
            "k": k,
            "|Irr W|": len(der.ring),
            "k(k+1)/2": k * (k + 1) // 2,
            "|Irr U|": len(U),
            "|SC U|": len(simple_currents_U(P).sectors),
        }
        if cfg.round_trip:
            row["round trip"] = "ok" if round_trip(IP).ok else "FAILED"
        row["seconds"] = f"{time.perf_counter() - t0:.2f}"
        rows.append(row)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-min", type=int, default=Config.k_min)
    ap.add_argument("--k-max", type=int, default=Config.k_max)
    ap.add_argument("--no-round-trip", action="store_true")
    a = ap.parse_args()
    rows = run(Config(a.k_min, a.k_max, not a.no_round_trip))
    cols = list(rows[0])
    widths = [max(len(c), *(len(str(r[c])) for r in rows)) for c in cols]
    print("  ".join(c.rjust(w) for c, w in zip(cols, widths)))
    for r in rows:
        print("  ".join(str(r[c]).rjust(w) for c, w in zip(cols, widths)))


if __name__ == "__main__":
    main()
