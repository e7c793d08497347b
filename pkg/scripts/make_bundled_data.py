"""Regenerate the JSON models shipped in src/fuselift/data from the catalog generators."""

from __future__ import annotations

import argparse
from pathlib import Path

from fuselift import catalog, serialize
from fuselift.abgroup import FinAbGroup, subgroup_generate
from fuselift.exactnum import QZ
from fuselift.extension import validate_extension
from fuselift.fusion import tensor_ring, trivial_ring
from fuselift.quadspace import cyclic_space, make_quadratic_space

DATA = Path(__file__).resolve().parents[1] / "src" / "fuselift" / "data"


def ising():
    """The k=2 parafermion ring under its usual names 1, e, s."""
    R = catalog.parafermion_sl2(2)
    return R.relabel({"X(i0,0)": "1", "X(i0,2)": "e", "X(i1,1)": "s"})


def ising_problem():
    V = catalog.lattice_rank1(2, 1)
    C = V.space.group
    return validate_extension(ising(), V.space, V.D, {C(0): "1", C(2): "e"})


def ising_squared():
    """Ising x Ising over Z4 x Z4 with q = (r^2 + s^2)/8 and D = 2Z4 x 2Z4."""
    W = tensor_ring(ising(), ising())
    G = FinAbGroup((4, 4))
    V = make_quadratic_space(G, lambda x: QZ(x.coords[0] ** 2 + x.coords[1] ** 2, 8))
    D = subgroup_generate(G, [G(2, 0), G(0, 2)])
    grading = {G(0, 0): "1*1", G(2, 0): "e*1", G(0, 2): "1*e", G(2, 2): "e*e"}
    return validate_extension(W, V, D, grading)


def trivial_problem():
    V = cyclic_space(1, 1)
    return validate_extension(trivial_ring(), V, subgroup_generate(V.group, []), {V.group.zero: "1"})


def models() -> dict[str, object]:
    k2 = ising_problem()
    return {
        "ising.ring.json": ising(),
        "sl2k2.ring.json": catalog.affine_sl2(2),
        "trivial.ext.json": trivial_problem(),
        "k1.ext.json": catalog.parafermion_problem(1),
        "k2.ext.json": k2,
        "k3.ext.json": catalog.parafermion_problem(3),
        "k4.ext.json": catalog.parafermion_problem(4),
        "k2s1.ext.json": catalog.deform(k2, 1),
        "ising2.ext.json": ising_squared(),
        "sl2k2.inv.json": catalog.sl2_inverse_problem(2),
        "sl2k3.inv.json": catalog.sl2_inverse_problem(3),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DATA)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, obj in models().items():
        (args.out / name).write_text(serialize.dumps(serialize.to_dict(obj)))
        print(f"wrote {args.out / name}")


if __name__ == "__main__":
    main()
