"""Follow the k-th parafermion problem along the lattice deformations m -> m + sk."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from fuselift.catalog import deform, parafermion_problem
from fuselift.extension import check_problem


@dataclass(frozen=True)
class Config:
    k: int = 2
    s_values: tuple[int, ...] = field(default=(0, 1, 2, 3))
    check: bool = True


def run(cfg: Config) -> list[dict]:
    base = parafermion_problem(cfg.k)
    n0 = len(base.table.untwisted)
    rows = []
    for s in cfg.s_values:
        P = deform(base, s)
        n = len(P.table.untwisted)
        rows.append(
            {
                "s": s,
                "C": P.C.name,
                "untwisted": n,
                "ratio": str(Fraction(n, n0)),
                "|C| |Irr W| / |D|^2": str(Fraction(P.C.order * len(P.W), P.D.order**2)),
                "twisted per chi": sorted({len(v) for v in P.table.per_character.values()}),
                "checks": ("clean" if not check_problem(P) else "FAILED") if cfg.check else "-",
            }
        )
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=Config.k)
    ap.add_argument("--s", type=int, nargs="+", default=list(Config().s_values))
    ap.add_argument("--no-check", action="store_true")
    a = ap.parse_args()
    for row in run(Config(a.k, tuple(a.s), not a.no_check)):
        print("  ".join(f"{key}={val}" for key, val in row.items()))


if __name__ == "__main__":
    main()
